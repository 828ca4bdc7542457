//! Construction of `H = ν σ₁ + ω a†a + g σ₃ (a + a†)` on the truncated
//! qubit ⊗ Fock basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{QuantumProbeError, QuantumProbeSpec};

/// The probe Hamiltonian, real symmetric on the `2(n_max+1)`-dimensional
/// space, stored as the upper-triangle sparse entries. All coefficients are
/// angular rates (rad/s, ħ = 1 convention).
///
/// In qubit-major ordering the three terms contribute: `ω n` on the
/// diagonal, `ν` between `(+, n)` and `(−, n)`, and `±g √(n+1)` on the
/// ladder bonds within each σ₃ sector.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    n_max: usize,
    dim: usize,
    /// `(row, col, value)` with `row ≤ col`; the lower triangle is implied
    /// by symmetry.
    entries: Vec<(usize, usize, f64)>,
    nu: f64,
    omega: f64,
    g: f64,
}

impl HamiltonianMatrix {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn nu_rad_s(&self) -> f64 {
        self.nu
    }

    pub fn omega_rad_s(&self) -> f64 {
        self.omega
    }

    pub fn coupling_rad_s(&self) -> f64 {
        self.g
    }

    /// Dense symmetric materialization for the eigensolver.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        m
    }

    /// Sparse symmetric apply `H ψ`.
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for &(i, j, v) in &self.entries {
            out[i] += v * amps[j];
            if i != j {
                out[j] += v * amps[i];
            }
        }
        out
    }

    /// ⟨ψ|H|ψ⟩, rad/s. Real for any state since H is real symmetric.
    pub fn expectation(&self, amps: &[Complex64]) -> f64 {
        let h_psi = self.apply(amps);
        amps.iter()
            .zip(&h_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// Default truncation sized from the coherent displacement `|g|/ω`:
/// `max(16, ceil(4 (|g|/ω)² + 6 |g|/ω))`.
pub fn default_fock_truncation(g_rad_s: f64, omega_rad_s: f64) -> usize {
    let displacement = (g_rad_s / omega_rad_s).abs();
    let sized = (4.0 * displacement * displacement + 6.0 * displacement).ceil() as usize;
    sized.max(16)
}

/// Builds the Hamiltonian; rejects truncations that cannot hold the
/// predicted coherent displacement (`|g|/ω > sqrt(n_max)/2`).
pub fn build_hamiltonian(spec: &QuantumProbeSpec) -> Result<HamiltonianMatrix, QuantumProbeError> {
    let n_max = spec.n_max();
    let omega = spec.omega_rad_s();
    let nu = spec.nu_rad_s();
    let g = spec.coupling_rad_s();

    let displacement = (g / omega).abs();
    if displacement > (n_max as f64).sqrt() / 2.0 {
        return Err(QuantumProbeError::TruncationTooSmall {
            n_max,
            displacement,
        });
    }

    let stride = n_max + 1;
    let dim = 2 * stride;
    let mut entries = Vec::with_capacity(4 * stride);

    for n in 0..=n_max {
        if n > 0 {
            // ω a†a acts identically on both qubit sectors.
            entries.push((n, n, omega * n as f64));
            entries.push((stride + n, stride + n, omega * n as f64));
        }
        // ν σ₁ couples the sectors at fixed Fock level.
        if nu != 0.0 {
            entries.push((n, stride + n, nu));
        }
    }
    if g != 0.0 {
        for n in 0..n_max {
            let ladder = g * ((n + 1) as f64).sqrt();
            entries.push((n, n + 1, ladder)); // σ₃ = +1 sector
            entries.push((stride + n, stride + n + 1, -ladder)); // σ₃ = −1 sector
        }
    }

    Ok(HamiltonianMatrix {
        n_max,
        dim,
        entries,
        nu,
        omega,
        g,
    })
}
