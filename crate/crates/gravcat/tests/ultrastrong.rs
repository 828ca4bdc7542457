//! Numeric experiment in the ultra-strong regime: a slow tunneling rate
//! dressed by the oscillator.
//!
//! For |g|/ω = α and ν ≪ ω the two σ₃ sectors are displaced oscillators
//! separated by 2α in phase space, and tunneling splits each vibrational
//! doublet by 2ν e^{−2α²} |L_n(4α²)| (Laguerre polynomials from the
//! displaced-state overlaps). A vacuum-seeded run spreads over the low
//! doublets with Poisson weights; at α = 1.2 the n = 1 doublet carries the
//! largest weight, so the dominant ⟨σ₃⟩ frequency is
//! 2ν e^{−2α²} (4α² − 1) — tunneling-scale, collapsed far below both 2ν
//! and ω.

use gravcat::quantities::{Quantity, REDUCED_PLANCK};
use gravcat::quantum_probe::{
    build_hamiltonian, expectation, rabi_frequency_estimate, HybridState, Observable, Propagator,
    QuantumProbeSpec, Sector,
};

#[test]
fn dressed_tunneling_frequency_matches_doublet_splitting() {
    let omega = 1.0;
    let alpha = 1.2;
    let nu = 0.02;
    let mass = 1.0;
    let g = -alpha * omega;
    let f0 = -g * (2.0 * mass * REDUCED_PLANCK * omega).sqrt();
    let n_max = 28;

    let spec = QuantumProbeSpec::new(
        Quantity::kilograms(mass).unwrap(),
        Quantity::per_second(omega).unwrap(),
        Quantity::newtons(f0).unwrap(),
        Quantity::per_second(nu).unwrap(),
        n_max,
    )
    .unwrap();
    // Distinguishability 2(g/ω)² = 2.88: past the ultra-strong onset.
    let h = build_hamiltonian(&spec).unwrap();
    let propagator = Propagator::new(&h);
    let initial = HybridState::basis_state(Sector::Plus, 0, n_max).unwrap();

    // First-excited doublet splitting; the vacuum's Poisson weight peaks
    // at n = 1 for α² = 1.44.
    let expected = 2.0 * nu * (-2.0 * alpha * alpha).exp() * (4.0 * alpha * alpha - 1.0);

    let n_samples = 8192usize;
    let total_time = 6.0 * 2.0 * std::f64::consts::PI / expected;
    let dt = total_time / n_samples as f64;
    let mut signal = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let state = propagator.evolve(&initial, i as f64 * dt).unwrap();
        signal.push(expectation(&state, Observable::Sigma3));
    }

    // The signal swings the full qubit range, not a small ripple.
    let min = signal.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(min < -0.5, "sigma3 never swings negative: min {min}");

    let estimate = rabi_frequency_estimate(dt, &signal).unwrap();
    let deviation = (estimate - expected).abs() / expected;
    assert!(
        deviation <= 0.20,
        "dominant frequency {estimate:.4e} vs dressed splitting {expected:.4e} \
         ({:.1}% off)",
        100.0 * deviation
    );
    // Tunneling scale: far below the bare oscillator frequency.
    assert!(estimate < 0.05 * omega);
}
