//! The two-level ⊗ oscillator probe system.
//!
//! A harmonic oscillator of mass `m` and frequency `ω` constrained to the
//! axis of the cat feels `±f₀` depending on the branch, giving the
//! single-mode Hamiltonian
//!
//! ```text
//! H = ν σ₁ + ω a†a + g σ₃ (a + a†)
//! ```
//!
//! Internally the module works in natural units with `ħ = 1`: every
//! Hamiltonian coefficient (ν, ω, g) is an angular rate in rad/s, and
//! energies are reported in rad/s. The SI restorations happen at the module
//! boundary: the coupling is `g = −f₀ / sqrt(2 m ħ ω)`, the
//! distinguishability criterion is `f₀² / (m ħ ω³)`, and the position
//! operator is `x = sqrt(ħ / (2 m ω)) (a + a†)` in meters. Dimensional
//! analysis fixes these ħ placements uniquely.
//!
//! `|±⟩` is the σ₃ eigenbasis: σ₃ enters the force coupling and σ₁ the
//! tunneling, with the usual Pauli matrix conventions.

mod hamiltonian;
mod propagator;
mod rabi;

pub use hamiltonian::{build_hamiltonian, default_fock_truncation, HamiltonianMatrix};
pub use propagator::{evolve, evolve_series, Propagator};
pub use rabi::{periodogram, rabi_frequency_estimate, Spectrum};

use num_complex::Complex64;
use thiserror::Error;

use crate::quantities::{Dimension, Quantity, QuantityError, REDUCED_PLANCK};

#[derive(Debug, Error)]
pub enum QuantumProbeError {
    #[error(transparent)]
    Quantity(#[from] QuantityError),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("Fock truncation n_max = {n_max} too small for coherent displacement |g|/omega = {displacement:.3} (needs sqrt(n_max)/2 above it)")]
    TruncationTooSmall { n_max: usize, displacement: f64 },

    #[error("occupation {occupation:.3e} of the top two Fock levels exceeds 1e-6; raise n_max")]
    TruncationLeak { occupation: f64 },

    #[error("state vector has {got} amplitudes, basis needs {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("state norm {norm} differs from 1 by more than 1e-10")]
    NotNormalized { norm: f64 },

    #[error("tolerance {tol:e} outside the supported range [1e-12, 1e-6]")]
    ToleranceOutOfRange { tol: f64 },

    #[error("no spectral peak: peak-to-median power ratio {ratio:.2} below 10")]
    NoPeak { ratio: f64 },

    #[error("signal too short: {got} samples, need at least {minimum}")]
    SignalTooShort { minimum: usize, got: usize },
}

/// Probe parameters plus the Fock-space truncation.
///
/// `n_max ≥ 1`; use [`default_fock_truncation`] to size the basis from the
/// expected coherent displacement.
#[derive(Debug, Clone, Copy)]
pub struct QuantumProbeSpec {
    mass: f64,
    omega: f64,
    f0: f64,
    nu: f64,
    n_max: usize,
}

impl QuantumProbeSpec {
    pub fn new(
        mass: Quantity,
        omega: Quantity,
        f0: Quantity,
        nu: Quantity,
        n_max: usize,
    ) -> Result<Self, QuantumProbeError> {
        let mass = mass.expect_dim(Dimension::MASS, "oscillator mass m")?;
        let omega = omega.expect_dim(Dimension::RATE, "frequency omega")?;
        let f0 = f0.expect_dim(Dimension::FORCE, "force f0")?;
        let nu = nu.expect_dim(Dimension::RATE, "tunneling rate nu")?;
        if mass <= 0.0 {
            return Err(QuantumProbeError::NonPositive {
                what: "oscillator mass m",
                value: mass,
            });
        }
        if omega <= 0.0 {
            return Err(QuantumProbeError::NonPositive {
                what: "frequency omega",
                value: omega,
            });
        }
        if n_max < 1 {
            return Err(QuantumProbeError::NonPositive {
                what: "Fock truncation n_max",
                value: n_max as f64,
            });
        }
        Ok(Self {
            mass,
            omega,
            f0,
            nu,
            n_max,
        })
    }

    pub fn mass_kg(&self) -> f64 {
        self.mass
    }
    pub fn omega_rad_s(&self) -> f64 {
        self.omega
    }
    pub fn f0_newtons(&self) -> f64 {
        self.f0
    }
    pub fn nu_rad_s(&self) -> f64 {
        self.nu
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coupling in rad/s via the boundary ħ restoration.
    pub fn coupling_rad_s(&self) -> f64 {
        coupling_g_si(self.f0, self.mass, self.omega)
    }
}

fn coupling_g_si(f0: f64, mass: f64, omega: f64) -> f64 {
    -f0 / (2.0 * mass * REDUCED_PLANCK * omega).sqrt()
}

/// Qubit–oscillator coupling `g = −f₀ / sqrt(2 m ħ ω)`, in rad/s.
///
/// Negative for positive `f₀`.
pub fn coupling_g(f0: Quantity, mass: Quantity, omega: Quantity) -> Result<Quantity, QuantumProbeError> {
    let f0 = f0.expect_dim(Dimension::FORCE, "force f0")?;
    let mass = positive(mass.expect_dim(Dimension::MASS, "oscillator mass m")?, "oscillator mass m")?;
    let omega = positive(omega.expect_dim(Dimension::RATE, "frequency omega")?, "frequency omega")?;
    Ok(Quantity::per_second(coupling_g_si(f0, mass, omega))?)
}

/// Distinguishability criterion `f₀² / (m ħ ω³)`, dimensionless.
///
/// Values ≫ 1 mark the ultra-strong coupling regime where the two
/// quasi-classical oscillation centers are resolvable.
pub fn distinguishability(
    f0: Quantity,
    mass: Quantity,
    omega: Quantity,
) -> Result<Quantity, QuantumProbeError> {
    let f0 = f0.expect_dim(Dimension::FORCE, "force f0")?;
    let mass = positive(mass.expect_dim(Dimension::MASS, "oscillator mass m")?, "oscillator mass m")?;
    let omega = positive(omega.expect_dim(Dimension::RATE, "frequency omega")?, "frequency omega")?;
    Ok(Quantity::dimensionless(
        f0 * f0 / (mass * REDUCED_PLANCK * omega.powi(3)),
    )?)
}

/// Center of the quasi-classical oscillation, `x₀ = f₀ / (m ω²)`, meters.
/// Odd in `f₀`.
pub fn classical_center(
    f0: Quantity,
    mass: Quantity,
    omega: Quantity,
) -> Result<Quantity, QuantumProbeError> {
    let f0 = f0.expect_dim(Dimension::FORCE, "force f0")?;
    let mass = positive(mass.expect_dim(Dimension::MASS, "oscillator mass m")?, "oscillator mass m")?;
    let omega = positive(omega.expect_dim(Dimension::RATE, "frequency omega")?, "frequency omega")?;
    Ok(Quantity::meters(f0 / (mass * omega * omega))?)
}

fn positive(value: f64, what: &'static str) -> Result<f64, QuantumProbeError> {
    if value <= 0.0 {
        return Err(QuantumProbeError::NonPositive { what, value });
    }
    Ok(value)
}

/// Qubit sector label: `Plus` is the σ₃ = +1 eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    pub fn sigma3(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Sector::Plus => 0,
            Sector::Minus => 1,
        }
    }
}

/// Normalized state on the (two-level) ⊗ (truncated Fock) space.
///
/// Amplitudes are ordered qubit-major: index `s (n_max + 1) + n` with
/// `s = 0` for `|+⟩`. Evolution never renormalizes: [`HybridState::norm`]
/// exposes the drift for the caller to inspect.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    amps: Vec<Complex64>,
    n_max: usize,
}

impl HybridState {
    /// Builds a state from amplitudes, checking length and normalization
    /// (`‖ψ‖² = 1` within 1e-10).
    pub fn new(amps: Vec<Complex64>, n_max: usize) -> Result<Self, QuantumProbeError> {
        let expected = 2 * (n_max + 1);
        if amps.len() != expected {
            return Err(QuantumProbeError::WrongLength {
                expected,
                got: amps.len(),
            });
        }
        let state = Self { amps, n_max };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QuantumProbeError::NotNormalized { norm });
        }
        Ok(state)
    }

    pub(crate) fn from_raw(amps: Vec<Complex64>, n_max: usize) -> Self {
        Self { amps, n_max }
    }

    /// Basis state `|sector, n⟩`.
    pub fn basis_state(sector: Sector, n: usize, n_max: usize) -> Result<Self, QuantumProbeError> {
        if n > n_max {
            return Err(QuantumProbeError::WrongLength {
                expected: n_max,
                got: n,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * (n_max + 1)];
        amps[sector.index() * (n_max + 1) + n] = Complex64::new(1.0, 0.0);
        Ok(Self { amps, n_max })
    }

    /// `(c₊|+⟩ + c₋|−⟩) ⊗ |0⟩` with amplitudes normalized by the caller.
    pub fn qubit_vacuum(
        c_plus: Complex64,
        c_minus: Complex64,
        n_max: usize,
    ) -> Result<Self, QuantumProbeError> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * (n_max + 1)];
        amps[0] = c_plus;
        amps[n_max + 1] = c_minus;
        Self::new(amps, n_max)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, sector: Sector, n: usize) -> Complex64 {
        self.amps[sector.index() * (self.n_max + 1) + n]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Total population in Fock levels `n_max` and `n_max − 1`, the
    /// truncation-leak monitor.
    pub fn top_level_occupation(&self) -> f64 {
        let stride = self.n_max + 1;
        let mut occ = 0.0;
        for s in 0..2 {
            occ += self.amps[s * stride + self.n_max].norm_sqr();
            if self.n_max >= 1 {
                occ += self.amps[s * stride + self.n_max - 1].norm_sqr();
            }
        }
        occ
    }

    /// Fidelity |⟨self|other⟩|.
    pub fn overlap(&self, other: &HybridState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Pads the state with zero amplitudes up to a larger truncation.
    pub fn embed(&self, n_max: usize) -> Result<Self, QuantumProbeError> {
        if n_max < self.n_max {
            return Err(QuantumProbeError::WrongLength {
                expected: self.n_max,
                got: n_max,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * (n_max + 1)];
        for s in 0..2 {
            for n in 0..=self.n_max {
                amps[s * (n_max + 1) + n] = self.amps[s * (self.n_max + 1) + n];
            }
        }
        Ok(Self { amps, n_max })
    }
}

/// Observables read out of a [`HybridState`]. Position carries the SI
/// parameters needed to restore meters.
#[derive(Debug, Clone, Copy)]
pub enum Observable {
    Sigma1,
    Sigma3,
    Number,
    /// `x = sqrt(ħ / (2 m ω)) (a + a†)`; `mass_kg` in kg, `omega` in rad/s.
    Position { mass_kg: f64, omega: f64 },
}

/// Real expectation value of `observable`; position in meters.
pub fn expectation(state: &HybridState, observable: Observable) -> f64 {
    let stride = state.n_max + 1;
    match observable {
        Observable::Sigma1 => (0..stride)
            .map(|n| 2.0 * (state.amps[n].conj() * state.amps[stride + n]).re)
            .sum(),
        Observable::Sigma3 => (0..stride)
            .map(|n| state.amps[n].norm_sqr() - state.amps[stride + n].norm_sqr())
            .sum(),
        Observable::Number => (0..2)
            .flat_map(|s| (0..stride).map(move |n| (s, n)))
            .map(|(s, n)| n as f64 * state.amps[s * stride + n].norm_sqr())
            .sum(),
        Observable::Position { mass_kg, omega } => {
            let scale = (REDUCED_PLANCK / (2.0 * mass_kg * omega)).sqrt();
            let mut ladder = 0.0;
            for s in 0..2 {
                for n in 0..state.n_max {
                    ladder += 2.0
                        * ((n + 1) as f64).sqrt()
                        * (state.amps[s * stride + n + 1].conj() * state.amps[s * stride + n]).re;
                }
            }
            scale * ladder
        }
    }
}
