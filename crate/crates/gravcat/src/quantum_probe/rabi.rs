//! Dominant-frequency extraction from observable time series.
//!
//! The ⟨σ₃⟩ signal of the probe oscillates at the tunneling scale; the
//! estimator takes a uniformly sampled series, removes the mean, applies a
//! Hann window, zero-pads, and reads the periodogram peak with quadratic
//! interpolation on log power. Callers should supply at least five periods
//! of the frequency they expect to resolve.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::QuantumProbeError;

/// One-sided power spectrum on an angular-frequency grid (rad/s).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub omegas: Vec<f64>,
    pub power: Vec<f64>,
}

const ZERO_PAD_FACTOR: usize = 8;
const MIN_SAMPLES: usize = 16;
const PEAK_TO_MEDIAN: f64 = 10.0;

/// Detrended, Hann-windowed, zero-padded periodogram of a uniform series
/// with sample interval `dt` seconds.
pub fn periodogram(dt: f64, samples: &[f64]) -> Result<Spectrum, QuantumProbeError> {
    if samples.len() < MIN_SAMPLES {
        return Err(QuantumProbeError::SignalTooShort {
            minimum: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    if dt <= 0.0 {
        return Err(QuantumProbeError::NonPositive {
            what: "sample interval dt",
            value: dt,
        });
    }
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let padded_len = (n * ZERO_PAD_FACTOR).next_power_of_two();

    let mut buffer = vec![Complex64::new(0.0, 0.0); padded_len];
    for (i, &sample) in samples.iter().enumerate() {
        let window = 0.5
            * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos());
        buffer[i] = Complex64::new((sample - mean) * window, 0.0);
    }

    FftPlanner::new()
        .plan_fft_forward(padded_len)
        .process(&mut buffer);

    let half = padded_len / 2;
    let domega = 2.0 * std::f64::consts::PI / (padded_len as f64 * dt);
    let omegas = (0..half).map(|k| k as f64 * domega).collect();
    let power = buffer[..half].iter().map(|c| c.norm_sqr()).collect();
    Ok(Spectrum { omegas, power })
}

/// Dominant angular frequency of `samples` via the periodogram peak with
/// quadratic (log-power) interpolation, rad/s.
///
/// Fails with `NoPeak` when the spectral peak does not dominate the median
/// power by at least a factor of 10 — constant and noise-only signals land
/// here.
pub fn rabi_frequency_estimate(dt: f64, samples: &[f64]) -> Result<f64, QuantumProbeError> {
    let spectrum = periodogram(dt, samples)?;
    let (peak_index, &peak_power) = spectrum
        .power
        .iter()
        .enumerate()
        .skip(1) // the detrended DC bin carries only window leakage
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .expect("non-empty spectrum");

    let mut sorted: Vec<f64> = spectrum.power.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[sorted.len() / 2];

    // A numerically constant signal leaves only rounding residue after the
    // mean is removed; that residue must not masquerade as a peak.
    let scale = samples.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let power_floor = (1e-13 * scale * samples.len() as f64).powi(2);
    if peak_power <= power_floor {
        return Err(QuantumProbeError::NoPeak { ratio: 0.0 });
    }
    let ratio = if median > 0.0 {
        peak_power / median
    } else {
        f64::INFINITY
    };
    if ratio < PEAK_TO_MEDIAN {
        return Err(QuantumProbeError::NoPeak { ratio });
    }

    // Quadratic interpolation on log power around the peak bin.
    let delta = if peak_index == 0 || peak_index + 1 >= spectrum.power.len() {
        0.0
    } else {
        let floor = peak_power * 1e-12;
        let lower = spectrum.power[peak_index - 1].max(floor).ln();
        let center = peak_power.ln();
        let upper = spectrum.power[peak_index + 1].max(floor).ln();
        let denominator = lower - 2.0 * center + upper;
        if denominator.abs() < f64::EPSILON {
            0.0
        } else {
            (0.5 * (lower - upper) / denominator).clamp(-0.5, 0.5)
        }
    };

    let domega = spectrum.omegas[1] - spectrum.omegas[0];
    Ok((peak_index as f64 + delta) * domega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample(f: impl Fn(f64) -> f64, dt: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| f(i as f64 * dt)).collect()
    }

    #[test]
    fn recovers_cosine_frequency_within_one_percent() {
        // cos(2νt) with ν = 1: dominant angular frequency 2 rad/s.
        let dt = 0.05;
        let n = 1256; // ~20 periods
        let signal = sample(|t| (2.0 * t).cos(), dt, n);
        let estimate = rabi_frequency_estimate(dt, &signal).unwrap();
        assert_relative_eq!(estimate, 2.0, max_relative = 0.01);
    }

    #[test]
    fn recovers_off_bin_frequencies() {
        let dt = 0.01;
        let n = 4096;
        for omega in [0.773, 1.618, 5.0, 12.34] {
            let signal = sample(|t| (omega * t).cos(), dt, n);
            let estimate = rabi_frequency_estimate(dt, &signal).unwrap();
            assert_relative_eq!(estimate, omega, max_relative = 0.01);
        }
    }

    #[test]
    fn constant_signal_has_no_peak() {
        let signal = vec![0.7; 512];
        assert!(matches!(
            rabi_frequency_estimate(0.1, &signal),
            Err(QuantumProbeError::NoPeak { .. })
        ));
    }

    #[test]
    fn short_signal_is_rejected() {
        assert!(matches!(
            rabi_frequency_estimate(0.1, &[1.0; 4]),
            Err(QuantumProbeError::SignalTooShort { .. })
        ));
    }

    #[test]
    fn spectrum_grid_is_consistent() {
        let dt = 0.02;
        let spectrum = periodogram(dt, &sample(|t| (3.0 * t).sin(), dt, 256)).unwrap();
        assert_eq!(spectrum.omegas.len(), spectrum.power.len());
        let domega = spectrum.omegas[1] - spectrum.omegas[0];
        let nyquist = std::f64::consts::PI / dt;
        assert!(spectrum.omegas.last().unwrap() < &nyquist);
        assert!(domega > 0.0);
    }
}
