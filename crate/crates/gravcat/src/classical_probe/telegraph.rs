//! Monte Carlo telegraph process reproducing the closed-form force
//! statistics.
//!
//! The probe-seen force is modeled as a continuous-time two-state Markov
//! jump process on `{+f₀, −f₀}` with flip rate `Γ/2` out of each state.
//! Solving the two-state master equation with `P(−f₀, 0) = 1` gives
//! `⟨F(t)⟩ = −f₀ e^{−Γt}`, and because every sample squares to `f₀²` the
//! two-time correlation is `f₀² e^{−Γ|t−t'|}` for any initial condition —
//! exactly the closed forms in the parent module.
//!
//! Jump times are sampled exactly (exponential waiting times); the uniform
//! output grid just reads the exact path, so the grid step introduces no
//! bias, only resolution.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use super::ClassicalProbeError;

/// A seeded ensemble of telegraph trajectories on a uniform time grid.
/// Every stored sample is exactly `+f0` or `-f0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TelegraphEnsemble {
    /// Uniform, strictly increasing sample times, s.
    pub times: Vec<f64>,
    /// `n_traj` rows of force samples, N.
    pub trajectories: Vec<Vec<f64>>,
    pub seed: u64,
    /// Force magnitude f₀, N.
    pub f0: f64,
    /// Decay constant Γ, 1/s.
    pub gamma: f64,
}

impl TelegraphEnsemble {
    pub fn n_traj(&self) -> usize {
        self.trajectories.len()
    }

    /// CSV serialization: header `t,traj_0,…,traj_{n-1}`, seconds and
    /// newtons at full double precision.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "t")?;
        for i in 0..self.trajectories.len() {
            write!(out, ",traj_{i}")?;
        }
        writeln!(out)?;
        for (row, t) in self.times.iter().enumerate() {
            write!(out, "{t}")?;
            for traj in &self.trajectories {
                write!(out, ",{}", traj[row])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Pointwise ensemble mean/standard error plus stationary autocorrelation
/// over time-origin averages.
#[derive(Debug, Clone, PartialEq)]
pub struct TelegraphStats {
    pub times: Vec<f64>,
    /// Ensemble mean force per grid time, N.
    pub mean: Vec<f64>,
    /// Standard error of the ensemble mean, N.
    pub mean_std_error: Vec<f64>,
    /// Lag values for the autocorrelation, s.
    pub lags: Vec<f64>,
    /// Autocorrelation ⟨F(t₀)F(t₀+lag)⟩ averaged over trajectories and over
    /// time origins in the stationary tail, N².
    pub autocorr: Vec<f64>,
    pub autocorr_std_error: Vec<f64>,
    /// First time admitted as an autocorrelation origin (5/Γ), s.
    pub stationary_start: f64,
}

/// Simulates the telegraph ensemble.
///
/// All trajectories start at `−f0` (the `|+⟩` convention); pass
/// `start_positive = true` to flip the initial sign. Trajectory `i` draws
/// from its own ChaCha stream keyed by `(seed, i)`, so generation is
/// reproducible and independent of any scheduling across workers.
pub fn simulate_telegraph(
    f0: f64,
    gamma: f64,
    dt: f64,
    t_max: f64,
    n_traj: usize,
    seed: u64,
    start_positive: bool,
) -> Result<TelegraphEnsemble, ClassicalProbeError> {
    if dt <= 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "grid step dt",
            value: dt,
        });
    }
    if t_max <= 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "duration t_max",
            value: t_max,
        });
    }
    if n_traj == 0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "trajectory count",
            value: 0.0,
        });
    }
    if gamma < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "decay constant Gamma",
            value: gamma,
        });
    }
    if gamma > 0.0 && dt > 0.1 / gamma {
        return Err(ClassicalProbeError::StepTooCoarse { dt, gamma });
    }

    let n_times = (t_max / dt).round() as usize + 1;
    let times: Vec<f64> = (0..n_times).map(|i| i as f64 * dt).collect();
    let initial = if start_positive { 1.0 } else { -1.0 };

    let flip_rate = gamma / 2.0;
    let mut trajectories = Vec::with_capacity(n_traj);
    for traj_index in 0..n_traj {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(traj_index as u64);
        let mut values = Vec::with_capacity(n_times);
        let mut sign = initial;
        if flip_rate == 0.0 {
            values.resize(n_times, sign * f0);
        } else {
            let waiting = Exp::new(flip_rate).expect("positive flip rate");
            let mut next_flip: f64 = waiting.sample(&mut rng);
            for &t in &times {
                while t >= next_flip {
                    sign = -sign;
                    next_flip += waiting.sample(&mut rng);
                }
                values.push(sign * f0);
            }
        }
        trajectories.push(values);
    }

    Ok(TelegraphEnsemble {
        times,
        trajectories,
        seed,
        f0,
        gamma,
    })
}

/// Ensemble mean with standard error at every grid time, and stationary
/// autocorrelation averaged over trajectories and over time origins
/// `t₀ ≥ 5/Γ`.
///
/// Needs at least two trajectories for the standard-error estimates.
pub fn estimate_statistics(
    ensemble: &TelegraphEnsemble,
) -> Result<TelegraphStats, ClassicalProbeError> {
    let n_traj = ensemble.trajectories.len();
    if n_traj < 2 {
        return Err(ClassicalProbeError::InsufficientData {
            reason: format!("standard errors need at least 2 trajectories, got {n_traj}"),
        });
    }
    let n_times = ensemble.times.len();
    let n = n_traj as f64;

    let mut mean = vec![0.0f64; n_times];
    let mut mean_sq = vec![0.0f64; n_times];
    for traj in &ensemble.trajectories {
        for (i, &v) in traj.iter().enumerate() {
            mean[i] += v;
            mean_sq[i] += v * v;
        }
    }
    let mut mean_std_error = vec![0.0f64; n_times];
    for i in 0..n_times {
        mean[i] /= n;
        let var = (mean_sq[i] - n * mean[i] * mean[i]) / (n - 1.0);
        mean_std_error[i] = (var.max(0.0) / n).sqrt();
    }

    let stationary_start = if ensemble.gamma > 0.0 {
        5.0 / ensemble.gamma
    } else {
        0.0
    };
    let first_origin = ensemble
        .times
        .iter()
        .position(|&t| t >= stationary_start)
        .unwrap_or(n_times);

    let mut lags = Vec::new();
    let mut autocorr = Vec::new();
    let mut autocorr_std_error = Vec::new();
    if first_origin < n_times {
        let max_lag = n_times - 1 - first_origin;
        for lag in 0..=max_lag {
            let origin_count = n_times - lag - first_origin;
            let mut acc = 0.0f64;
            let mut acc_sq = 0.0f64;
            for traj in &ensemble.trajectories {
                let mut per_traj = 0.0f64;
                for origin in first_origin..(n_times - lag) {
                    per_traj += traj[origin] * traj[origin + lag];
                }
                per_traj /= origin_count as f64;
                acc += per_traj;
                acc_sq += per_traj * per_traj;
            }
            let value = acc / n;
            let var = (acc_sq - n * value * value) / (n - 1.0);
            lags.push(lag as f64 * (ensemble.times[1] - ensemble.times[0]));
            autocorr.push(value);
            autocorr_std_error.push((var.max(0.0) / n).sqrt());
        }
    }

    Ok(TelegraphStats {
        times: ensemble.times.clone(),
        mean,
        mean_std_error,
        lags,
        autocorr,
        autocorr_std_error,
        stationary_start,
    })
}
