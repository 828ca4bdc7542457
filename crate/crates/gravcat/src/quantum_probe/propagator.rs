//! Unitary propagation `e^{−iHt}`.
//!
//! H is real symmetric, so one orthogonal eigendecomposition propagates to
//! any time exactly (up to the eigensolver's rounding): transform to the
//! eigenbasis, advance phases, transform back. The method is contract-first
//! — the requested local-error tolerance is validated, then comfortably
//! beaten. States are never silently renormalized; the norm drift stays
//! visible through [`HybridState::norm`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{HamiltonianMatrix, HybridState, QuantumProbeError};

/// Occupation threshold in the top two Fock levels above which a
/// propagated state is rejected as a truncation leak.
const LEAK_THRESHOLD: f64 = 1e-6;

const TOL_MIN: f64 = 1e-12;
const TOL_MAX: f64 = 1e-6;

/// Cached spectral decomposition of a Hamiltonian; reusable across times
/// and initial states, and freely shareable between threads.
pub struct Propagator {
    vectors: DMatrix<f64>,
    frequencies: DVector<f64>,
    n_max: usize,
    dim: usize,
}

impl Propagator {
    pub fn new(h: &HamiltonianMatrix) -> Self {
        let eigen = SymmetricEigen::new(h.to_dense());
        Self {
            vectors: eigen.eigenvectors,
            frequencies: eigen.eigenvalues,
            n_max: h.n_max(),
            dim: h.dim(),
        }
    }

    /// Eigenfrequencies of H, rad/s (unordered).
    pub fn frequencies(&self) -> &[f64] {
        self.frequencies.as_slice()
    }

    /// `e^{−iHt}|state⟩` without the truncation-leak check.
    pub fn advance(&self, state: &HybridState, t: f64) -> Result<HybridState, QuantumProbeError> {
        if state.dim() != self.dim {
            return Err(QuantumProbeError::WrongLength {
                expected: self.dim,
                got: state.dim(),
            });
        }
        let re = DVector::from_iterator(self.dim, state.amplitudes().iter().map(|a| a.re));
        let im = DVector::from_iterator(self.dim, state.amplitudes().iter().map(|a| a.im));
        let mut coeff_re = self.vectors.tr_mul(&re);
        let mut coeff_im = self.vectors.tr_mul(&im);
        for k in 0..self.dim {
            let phase = self.frequencies[k] * t;
            let (sin, cos) = phase.sin_cos();
            // (cr + i ci)(cos − i sin)
            let cr = coeff_re[k];
            let ci = coeff_im[k];
            coeff_re[k] = cr * cos + ci * sin;
            coeff_im[k] = ci * cos - cr * sin;
        }
        let out_re = &self.vectors * coeff_re;
        let out_im = &self.vectors * coeff_im;
        let amps = (0..self.dim)
            .map(|i| Complex64::new(out_re[i], out_im[i]))
            .collect();
        Ok(HybridState::from_raw(amps, self.n_max))
    }

    /// `advance` plus the truncation-leak check on the output.
    pub fn evolve(&self, state: &HybridState, t: f64) -> Result<HybridState, QuantumProbeError> {
        let out = self.advance(state, t)?;
        check_leak(&out)?;
        Ok(out)
    }
}

fn check_leak(state: &HybridState) -> Result<(), QuantumProbeError> {
    let occupation = state.top_level_occupation();
    if occupation > LEAK_THRESHOLD {
        return Err(QuantumProbeError::TruncationLeak { occupation });
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), QuantumProbeError> {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(QuantumProbeError::ToleranceOutOfRange { tol });
    }
    Ok(())
}

/// Propagates `state` by time `t` (seconds) under `h` to local error ≤
/// `tol` (supported range `[1e-12, 1e-6]`; the spectral method lands at
/// rounding level regardless). Errors on truncation leaks; never
/// renormalizes.
pub fn evolve(
    state: &HybridState,
    h: &HamiltonianMatrix,
    t: f64,
    tol: f64,
) -> Result<HybridState, QuantumProbeError> {
    check_tol(tol)?;
    Propagator::new(h).evolve(state, t)
}

/// Propagates to every requested time, sharing one eigendecomposition.
pub fn evolve_series(
    state: &HybridState,
    h: &HamiltonianMatrix,
    times: &[f64],
    tol: f64,
) -> Result<Vec<HybridState>, QuantumProbeError> {
    check_tol(tol)?;
    let propagator = Propagator::new(h);
    times
        .iter()
        .map(|&t| propagator.evolve(state, t))
        .collect()
}
