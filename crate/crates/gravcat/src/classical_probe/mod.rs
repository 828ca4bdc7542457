//! Force statistics at a fixed classical probe.
//!
//! With the source mass confined to two potential minima at `±L/2` and the
//! probe pinned at perpendicular offset `y` from their midpoint, the
//! horizontal force takes exactly two values `±f₀`. Repeated measurements at
//! resolution `τ` relax the mean force exponentially with decay constant
//! `Γ = ν²τ/2` while the two-time correlation decays as `exp(−Γ|t−t'|)`.
//! The closed forms live here; [`telegraph`] simulates the equivalent
//! two-state Markov jump process and estimates the same statistics from
//! sampled trajectories.

mod telegraph;

pub use telegraph::{
    estimate_statistics, simulate_telegraph, TelegraphEnsemble, TelegraphStats,
};

use thiserror::Error;

use crate::quantities::{Dimension, Quantity, QuantityError, GRAVITATIONAL_CONSTANT};

#[derive(Debug, Error)]
pub enum ClassicalProbeError {
    #[error(transparent)]
    Quantity(#[from] QuantityError),

    #[error("degenerate geometry: y and L are both zero")]
    DegenerateGeometry,

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("grid step {dt} s too coarse for decay constant {gamma} 1/s (needs dt <= 0.1/Gamma)")]
    StepTooCoarse { dt: f64, gamma: f64 },

    #[error("insufficient data: {reason}")]
    InsufficientData { reason: String },
}

/// A fixed test mass watching the cat: probe mass, perpendicular offset
/// from the midpoint of the two minima, and temporal resolution τ.
///
/// τ has no prescription from probe hardware; it is a free input.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalProbeSpec {
    mass: f64,
    offset: f64,
    resolution: f64,
}

impl ClassicalProbeSpec {
    pub fn new(
        mass: Quantity,
        offset: Quantity,
        resolution: Quantity,
    ) -> Result<Self, ClassicalProbeError> {
        let mass = mass.expect_dim(Dimension::MASS, "probe mass m")?;
        let offset = offset.expect_dim(Dimension::LENGTH, "offset y")?;
        let resolution = resolution.expect_dim(Dimension::TIME, "resolution tau")?;
        if mass <= 0.0 {
            return Err(ClassicalProbeError::NonPositive {
                what: "probe mass m",
                value: mass,
            });
        }
        if resolution <= 0.0 {
            return Err(ClassicalProbeError::NonPositive {
                what: "resolution tau",
                value: resolution,
            });
        }
        if offset < 0.0 {
            return Err(ClassicalProbeError::NonPositive {
                what: "offset y",
                value: offset,
            });
        }
        Ok(Self {
            mass,
            offset,
            resolution,
        })
    }

    pub fn mass_kg(&self) -> f64 {
        self.mass
    }
    pub fn offset_m(&self) -> f64 {
        self.offset
    }
    pub fn resolution_s(&self) -> f64 {
        self.resolution
    }

    pub fn mass(&self) -> Quantity {
        Quantity::kilograms(self.mass).expect("validated")
    }
    pub fn offset(&self) -> Quantity {
        Quantity::meters(self.offset).expect("validated")
    }
    pub fn resolution(&self) -> Quantity {
        Quantity::seconds(self.resolution).expect("validated")
    }
}

/// Composes the probe geometry and measurement resolution into the
/// telegraph parameters: `f₀` from `(M, m, L, D(y, L))` and `Γ = ν²τ/2`.
pub fn telegraph_parameters(
    probe: &ClassicalProbeSpec,
    source_mass: Quantity,
    separation: Quantity,
    tunneling_rate: Quantity,
) -> Result<(Quantity, Quantity), ClassicalProbeError> {
    let distance = probe_distance(probe.offset(), separation)?;
    let force = f0(source_mass, probe.mass(), separation, distance)?;
    let gamma = decay_constant(tunneling_rate, probe.resolution())?;
    Ok((force, gamma))
}

/// Distance from either potential minimum to the probe:
/// `D = sqrt(y² + L²/4)`.
pub fn probe_distance(offset: Quantity, separation: Quantity) -> Result<Quantity, ClassicalProbeError> {
    let y = offset.expect_dim(Dimension::LENGTH, "offset y")?;
    let l = separation.expect_dim(Dimension::LENGTH, "separation L")?;
    if y < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "offset y",
            value: y,
        });
    }
    if l < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "separation L",
            value: l,
        });
    }
    if y == 0.0 && l == 0.0 {
        return Err(ClassicalProbeError::DegenerateGeometry);
    }
    Ok(Quantity::meters((y * y + l * l / 4.0).sqrt())?)
}

/// Magnitude of the two-valued horizontal force: `f₀ = G M m L / (2 D³)`.
pub fn f0(
    source_mass: Quantity,
    probe_mass: Quantity,
    separation: Quantity,
    distance: Quantity,
) -> Result<Quantity, ClassicalProbeError> {
    let m_source = source_mass.expect_dim(Dimension::MASS, "source mass M")?;
    let m_probe = probe_mass.expect_dim(Dimension::MASS, "probe mass m")?;
    let l = separation.expect_dim(Dimension::LENGTH, "separation L")?;
    let d = distance.expect_dim(Dimension::LENGTH, "distance D")?;
    for (what, value) in [
        ("source mass M", m_source),
        ("probe mass m", m_probe),
        ("distance D", d),
    ] {
        if value <= 0.0 {
            return Err(ClassicalProbeError::NonPositive { what, value });
        }
    }
    if l < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "separation L",
            value: l,
        });
    }
    Ok(Quantity::newtons(
        GRAVITATIONAL_CONSTANT * m_source * m_probe * l / (2.0 * d * d * d),
    )?)
}

/// Measurement-induced relaxation rate: `Γ = ν²τ/2`.
pub fn decay_constant(
    tunneling_rate: Quantity,
    resolution: Quantity,
) -> Result<Quantity, ClassicalProbeError> {
    let nu = tunneling_rate.expect_dim(Dimension::RATE, "tunneling rate nu")?;
    let tau = resolution.expect_dim(Dimension::TIME, "resolution tau")?;
    if nu < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "tunneling rate nu",
            value: nu,
        });
    }
    if tau <= 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "resolution tau",
            value: tau,
        });
    }
    Ok(Quantity::per_second(nu * nu * tau / 2.0)?)
}

/// Mean force at time `t` for the `|+⟩` initial state: `−f₀ exp(−Γt)`.
pub fn mean_force(
    t: Quantity,
    f0: Quantity,
    gamma: Quantity,
) -> Result<Quantity, ClassicalProbeError> {
    let t = t.expect_dim(Dimension::TIME, "time t")?;
    let f = f0.expect_dim(Dimension::FORCE, "force f0")?;
    let g = gamma.expect_dim(Dimension::RATE, "decay constant Gamma")?;
    if t < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "time t",
            value: t,
        });
    }
    Ok(Quantity::newtons(-f * (-g * t).exp())?)
}

/// Two-time force correlation `f₀² exp(−Γ|t'−t|)`; symmetric in its time
/// arguments and exactly `f₀²` at equal times.
pub fn force_correlation(
    t: Quantity,
    t_prime: Quantity,
    f0: Quantity,
    gamma: Quantity,
) -> Result<Quantity, ClassicalProbeError> {
    let t = t.expect_dim(Dimension::TIME, "time t")?;
    let tp = t_prime.expect_dim(Dimension::TIME, "time t'")?;
    let f = f0.expect_dim(Dimension::FORCE, "force f0")?;
    let g = gamma.expect_dim(Dimension::RATE, "decay constant Gamma")?;
    if t < 0.0 || tp < 0.0 {
        return Err(ClassicalProbeError::NonPositive {
            what: "time",
            value: t.min(tp),
        });
    }
    Ok(Quantity::new(
        f * f * (-g * (tp - t).abs()).exp(),
        Dimension::FORCE_SQUARED,
    )?)
}
