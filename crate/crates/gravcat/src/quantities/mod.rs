//! Unit-safe physical quantities.
//!
//! Every magnitude in this crate is stored at canonical SI scale (kg, m, s,
//! A, K, mol, cd) together with its [`Dimension`], a vector of the seven SI
//! base exponents. Prefixes and derived units are resolved once, at parse
//! time; no unit strings cross module boundaries except at the CLI.
//!
//! The accepted text grammar is documented in `UNITS.md` at the repository
//! root: case-sensitive symbols, `^` for integer powers, `*` and `/` for
//! composition, and both `1.2e-3` and `10^14` number forms.

mod constants;
mod dimension;
mod quantity;
mod units;

pub use constants::{
    ConstantsTable, ATOMIC_MASS_UNIT, GRAVITATIONAL_CONSTANT, REDUCED_PLANCK, VACUUM_PERMEABILITY,
};
pub use dimension::Dimension;
pub use quantity::Quantity;
pub use units::{format_quantity, parse_quantity, parse_unit_expr};

use thiserror::Error;

/// Errors from quantity construction, arithmetic, parsing, and formatting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantityError {
    #[error("magnitude {value} is not finite")]
    NonFinite { value: f64 },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: Dimension,
        found: Dimension,
    },

    #[error("unknown unit `{token}` at byte {offset}")]
    UnknownUnit { token: String, offset: usize },

    #[error("malformed number at byte {offset}")]
    MalformedNumber { offset: usize },

    #[error("square root of dimension {dim} has non-integer exponents")]
    OddExponentSqrt { dim: Dimension },

    #[error("square root of negative magnitude {magnitude}")]
    NegativeSqrt { magnitude: f64 },
}
