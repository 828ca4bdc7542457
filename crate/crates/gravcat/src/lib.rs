//! Simulation and feasibility toolkit for gravitational cat-state experiments.
//!
//! A massive particle held in a superposition of two locations sources a
//! Newtonian field that is itself in superposition. This crate models the
//! pieces needed to judge whether such a "g-cat" is detectable with current
//! force sensors:
//!
//! - [`quantities`] — unit-safe physical quantities and SI dimension algebra,
//!   the currency of every public interface.
//! - [`catstate`] — source-mass wavefunctions and the induced probability
//!   distribution of the Newtonian force at a probe location.
//! - [`classical_probe`] — closed-form force statistics seen by a fixed
//!   classical probe, plus a Monte Carlo telegraph-process simulator that
//!   reproduces them.
//! - [`quantum_probe`] — the two-level ⊗ oscillator system in the
//!   ultra-strong coupling regime: Hamiltonian construction, unitary
//!   evolution, observable extraction, Rabi-frequency estimation.
//! - [`trap_design`] — the superconducting-microsphere trap constraint
//!   chain: trap frequency, critical-field radius bound, sphere mass,
//!   zero-point motion, cat separation.
//! - [`feasibility`] — probe-proposal catalog, sensitivity gaps, Casimir
//!   proximity guard, and a constrained grid search over the design levers.
//! - [`kv`] — the plain-text `key = value` format used by material catalogs,
//!   proposal catalogs, and run configs.

pub mod catstate;
pub mod classical_probe;
pub mod feasibility;
pub mod kv;
pub mod quantities;
pub mod quantum_probe;
pub mod trap_design;

pub use quantities::{ConstantsTable, Dimension, Quantity, QuantityError};
