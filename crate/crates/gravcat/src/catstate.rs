//! Source-mass wavefunctions and the force distribution they induce.
//!
//! A mass `M` in a superposition of two Gaussian wavepackets centered at
//! `±L/2` turns the Newtonian force on an external point mass into a random
//! variable. This module evaluates the position density and estimates the
//! force mean and covariance by Monte Carlo.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::quantities::{Dimension, Quantity, QuantityError, GRAVITATIONAL_CONSTANT};

#[derive(Debug, Error)]
pub enum CatStateError {
    #[error(transparent)]
    Quantity(#[from] QuantityError),

    #[error("amplitudes not normalized: |c+|^2 + |c-|^2 = {norm_sq} (must be 1 within 1e-12)")]
    AmplitudesNotNormalized { norm_sq: f64 },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("source sample within {separation} m of the probe (floor {floor} m)")]
    CoincidentPoints { separation: f64, floor: f64 },

    #[error("need at least {minimum} samples, got {got}")]
    TooFewSamples { minimum: usize, got: usize },
}

/// A source mass in a superposition of two Gaussian wavepackets.
///
/// `separation` is the full center-to-center vector `L`; the packets sit at
/// `±L/2` with common spread `sigma`. `L = 0` degenerates to a single
/// Gaussian. The amplitudes obey `|c+|^2 + |c-|^2 = 1` within 1e-12.
#[derive(Debug, Clone)]
pub struct CatStateSpec {
    mass: f64,
    sigma: f64,
    separation: [f64; 3],
    tunneling_rate: f64,
    c_plus: Complex64,
    c_minus: Complex64,
}

impl CatStateSpec {
    pub fn new(
        mass: Quantity,
        sigma: Quantity,
        separation: [Quantity; 3],
        tunneling_rate: Quantity,
        c_plus: Complex64,
        c_minus: Complex64,
    ) -> Result<Self, CatStateError> {
        let mass = mass.expect_dim(Dimension::MASS, "mass M")?;
        let sigma = sigma.expect_dim(Dimension::LENGTH, "spread sigma")?;
        let separation = [
            separation[0].expect_dim(Dimension::LENGTH, "separation L[0]")?,
            separation[1].expect_dim(Dimension::LENGTH, "separation L[1]")?,
            separation[2].expect_dim(Dimension::LENGTH, "separation L[2]")?,
        ];
        let tunneling_rate = tunneling_rate.expect_dim(Dimension::RATE, "tunneling rate nu")?;
        if mass <= 0.0 {
            return Err(CatStateError::NonPositive {
                what: "mass M",
                value: mass,
            });
        }
        if sigma <= 0.0 {
            return Err(CatStateError::NonPositive {
                what: "spread sigma",
                value: sigma,
            });
        }
        let norm_sq = c_plus.norm_sqr() + c_minus.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(CatStateError::AmplitudesNotNormalized { norm_sq });
        }
        Ok(Self {
            mass,
            sigma,
            separation,
            tunneling_rate,
            c_plus,
            c_minus,
        })
    }

    /// Equal-weight cat, the standard preparation.
    pub fn balanced(
        mass: Quantity,
        sigma: Quantity,
        separation: [Quantity; 3],
        tunneling_rate: Quantity,
    ) -> Result<Self, CatStateError> {
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(mass, sigma, separation, tunneling_rate, amp, amp)
    }

    /// Single wavepacket at the origin (c+ = 1, L = 0).
    pub fn single(
        mass: Quantity,
        sigma: Quantity,
        tunneling_rate: Quantity,
    ) -> Result<Self, CatStateError> {
        let zero = Quantity::meters(0.0)?;
        Self::new(
            mass,
            sigma,
            [zero, zero, zero],
            tunneling_rate,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn mass_kg(&self) -> f64 {
        self.mass
    }
    pub fn sigma_m(&self) -> f64 {
        self.sigma
    }
    pub fn separation_m(&self) -> [f64; 3] {
        self.separation
    }
    pub fn tunneling_rate_per_s(&self) -> f64 {
        self.tunneling_rate
    }
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        (self.c_plus, self.c_minus)
    }

    fn separation_norm(&self) -> f64 {
        norm(self.separation)
    }
}

/// Monte Carlo estimate of the force on a probe mass: per-component mean,
/// 3×3 covariance (unbiased, n−1), and standard error of the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceStatistics {
    /// Mean force, N.
    pub mean: [f64; 3],
    /// Covariance of single-sample forces, N².
    pub covariance: [[f64; 3]; 3],
    pub n_samples: usize,
    /// Standard error of `mean` per component, N.
    pub std_error: [f64; 3],
    pub warnings: Vec<SamplingWarning>,
}

/// Runtime flags attached to a Monte Carlo run; never silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingWarning {
    /// Probe closer than 3σ to a wavepacket center; point statistics are
    /// dominated by near-field samples.
    ProbeNearCore,
    /// `|L| < 8σ`: the sampler draws from the two-component mixture and the
    /// neglected interference cross-term is no longer exponentially small.
    InterferenceTermIgnored,
}

/// Position density `|ψ(x)|²` of the superposed wavepackets, in m⁻³.
///
/// The wavefunction `c₊ψ₊ + c₋ψ₋` is normalized exactly, including the
/// Gaussian overlap of the two branches, so the density integrates to one
/// for every separation, not just in the well-separated limit.
pub fn density(spec: &CatStateSpec, position_m: [f64; 3]) -> f64 {
    let sigma_sq = spec.sigma * spec.sigma;
    let half = scale(spec.separation, 0.5);
    let norm_factor = (2.0 * std::f64::consts::PI * sigma_sq).powf(-0.75);

    let branch = |center: [f64; 3]| -> f64 {
        let d = sub(position_m, center);
        norm_factor * (-dot(d, d) / (4.0 * sigma_sq)).exp()
    };

    let psi = spec.c_plus * branch(half) + spec.c_minus * branch(scale(half, -1.0));

    // ⟨ψ₊|ψ₋⟩ = exp(−L²/8σ²); folds the interference term into the norm.
    let overlap = (-dot(spec.separation, spec.separation) / (8.0 * sigma_sq)).exp();
    let norm_sq = spec.c_plus.norm_sqr()
        + spec.c_minus.norm_sqr()
        + 2.0 * (spec.c_plus * spec.c_minus.conj()).re * overlap;

    psi.norm_sqr() / norm_sq
}

/// Newtonian force on a probe of mass `m` at `probe_m` exerted by a point
/// mass `mass_kg` at `source_m`: attractive, magnitude `G M m / r²`.
///
/// `floor_m` guards the singularity: separations below it are an error. A
/// natural floor is a small fraction of the context's length scale, e.g.
/// `1e-3 σ`.
pub fn newton_force(
    source_m: [f64; 3],
    probe_m: [f64; 3],
    mass_kg: f64,
    probe_mass_kg: f64,
    floor_m: f64,
) -> Result<[f64; 3], CatStateError> {
    let r = sub(probe_m, source_m);
    let dist = norm(r);
    if dist < floor_m || dist == 0.0 {
        return Err(CatStateError::CoincidentPoints {
            separation: dist,
            floor: floor_m,
        });
    }
    let factor = -GRAVITATIONAL_CONSTANT * mass_kg * probe_mass_kg / (dist * dist * dist);
    Ok(scale(r, factor))
}

/// Quantity-typed wrapper over [`newton_force`] for single evaluations.
pub fn newton_force_q(
    source: [Quantity; 3],
    probe: [Quantity; 3],
    mass: Quantity,
    probe_mass: Quantity,
    floor: Quantity,
) -> Result<[Quantity; 3], CatStateError> {
    let source = vec_m(source, "source position")?;
    let probe_pos = vec_m(probe, "probe position")?;
    let mass = mass.expect_dim(Dimension::MASS, "mass M")?;
    let probe_mass = probe_mass.expect_dim(Dimension::MASS, "probe mass m")?;
    let floor = floor.expect_dim(Dimension::LENGTH, "separation floor")?;
    let f = newton_force(source, probe_pos, mass, probe_mass, floor)?;
    Ok([
        Quantity::newtons(f[0])?,
        Quantity::newtons(f[1])?,
        Quantity::newtons(f[2])?,
    ])
}

/// Monte Carlo force statistics at a fixed probe position.
///
/// Samples source positions from the two-branch mixture (branch picked with
/// probability `|c±|²`, then a Gaussian of width σ about `±L/2`) and
/// evaluates the Newtonian force for each. The interference cross-term of
/// the density is ignored by the sampler; a warning flags the regime
/// `|L| < 8σ` where that approximation degrades.
///
/// Sampling is split into fixed-size chunks, each drawing from its own
/// ChaCha stream keyed by `(seed, chunk index)`, so the result is
/// bit-identical regardless of how chunks would be scheduled across
/// workers.
pub fn force_statistics(
    spec: &CatStateSpec,
    probe_m: [f64; 3],
    probe_mass_kg: f64,
    n_samples: usize,
    seed: u64,
) -> Result<ForceStatistics, CatStateError> {
    const MIN_SAMPLES: usize = 1000;
    const CHUNK: usize = 8192;

    if n_samples < MIN_SAMPLES {
        return Err(CatStateError::TooFewSamples {
            minimum: MIN_SAMPLES,
            got: n_samples,
        });
    }

    let mut warnings = Vec::new();
    let half = scale(spec.separation, 0.5);
    let core_distance = norm(sub(probe_m, half)).min(norm(sub(probe_m, scale(half, -1.0))));
    if core_distance < 3.0 * spec.sigma {
        warnings.push(SamplingWarning::ProbeNearCore);
    }
    let branch_prob_plus = spec.c_plus.norm_sqr();
    let mixed = branch_prob_plus > 0.0 && branch_prob_plus < 1.0;
    if mixed && spec.separation_norm() < 8.0 * spec.sigma {
        warnings.push(SamplingWarning::InterferenceTermIgnored);
    }

    let floor = 1e-3 * spec.sigma;

    // Welford accumulation: the naive E[FFᵀ] − E[F]E[F]ᵀ form cancels
    // catastrophically in the far-field regime where fluctuations sit ten
    // orders below the mean.
    let mut mean = [0.0f64; 3];
    let mut m2 = [[0.0f64; 3]; 3];
    let mut count = 0usize;

    let n_chunks = n_samples.div_ceil(CHUNK);
    for chunk in 0..n_chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let chunk_samples = CHUNK.min(n_samples - chunk * CHUNK);
        for _ in 0..chunk_samples {
            let pick_plus: f64 = rng.random();
            let center = if pick_plus < branch_prob_plus {
                half
            } else {
                scale(half, -1.0)
            };
            let mut x = center;
            for axis in &mut x {
                let z: f64 = StandardNormal.sample(&mut rng);
                *axis += spec.sigma * z;
            }
            let f = newton_force(x, probe_m, spec.mass, probe_mass_kg, floor)?;
            count += 1;
            let delta_old = sub(f, mean);
            for i in 0..3 {
                mean[i] += delta_old[i] / count as f64;
            }
            let delta_new = sub(f, mean);
            for i in 0..3 {
                for j in 0..3 {
                    m2[i][j] += delta_old[i] * delta_new[j];
                }
            }
        }
    }

    let n = n_samples as f64;
    let mut covariance = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // Symmetrize: Welford's cross terms differ by rounding only.
            covariance[i][j] = 0.5 * (m2[i][j] + m2[j][i]) / (n - 1.0);
        }
    }
    let std_error = [
        (covariance[0][0].max(0.0) / n).sqrt(),
        (covariance[1][1].max(0.0) / n).sqrt(),
        (covariance[2][2].max(0.0) / n).sqrt(),
    ];

    Ok(ForceStatistics {
        mean,
        covariance,
        n_samples,
        std_error,
        warnings,
    })
}

fn vec_m(v: [Quantity; 3], what: &str) -> Result<[f64; 3], CatStateError> {
    Ok([
        v[0].expect_dim(Dimension::LENGTH, what)?,
        v[1].expect_dim(Dimension::LENGTH, what)?,
        v[2].expect_dim(Dimension::LENGTH, what)?,
    ])
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}
