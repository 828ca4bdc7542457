use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Dimension, QuantityError};

/// A real magnitude at canonical SI scale together with its dimension.
///
/// Quantities are value-semantic and immutable. Stored magnitudes are always
/// finite: constructors reject NaN and infinities, and the arithmetic
/// operators panic if a composition overflows — an overflow here means the
/// inputs were unphysical, not that the caller should handle `inf`.
///
/// Addition and subtraction require equal dimensions. The `+`/`-` operators
/// panic on mismatch (a programming error once inputs are validated); use
/// [`Quantity::try_add`]/[`Quantity::try_sub`] where the dimensions come
/// from unchecked input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantity {
    magnitude: f64,
    dim: Dimension,
}

impl Quantity {
    pub fn new(magnitude: f64, dim: Dimension) -> Result<Self, QuantityError> {
        if !magnitude.is_finite() {
            return Err(QuantityError::NonFinite { value: magnitude });
        }
        Ok(Self { magnitude, dim })
    }

    /// Constructor for compile-time constants. The caller guarantees
    /// finiteness.
    pub(crate) const fn from_parts(magnitude: f64, dim: Dimension) -> Self {
        Self { magnitude, dim }
    }

    pub fn dimensionless(magnitude: f64) -> Result<Self, QuantityError> {
        Self::new(magnitude, Dimension::NONE)
    }

    pub fn magnitude(self) -> f64 {
        self.magnitude
    }

    pub fn dim(self) -> Dimension {
        self.dim
    }

    /// Returns the SI magnitude after checking the dimension, naming `what`
    /// in the error. The standard entry point for operations that accept
    /// caller-supplied quantities.
    pub fn expect_dim(self, expected: Dimension, what: &str) -> Result<f64, QuantityError> {
        if self.dim != expected {
            return Err(QuantityError::DimensionMismatch {
                what: what.to_string(),
                expected,
                found: self.dim,
            });
        }
        Ok(self.magnitude)
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity, QuantityError> {
        if self.dim != other.dim {
            return Err(QuantityError::DimensionMismatch {
                what: "addition operand".to_string(),
                expected: self.dim,
                found: other.dim,
            });
        }
        Quantity::new(self.magnitude + other.magnitude, self.dim)
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity, QuantityError> {
        self.try_add(-other)
    }

    pub fn powi(self, n: i32) -> Quantity {
        checked(self.magnitude.powi(n), self.dim.powi(n))
    }

    pub fn sqrt(self) -> Result<Quantity, QuantityError> {
        if self.magnitude < 0.0 {
            return Err(QuantityError::NegativeSqrt {
                magnitude: self.magnitude,
            });
        }
        let dim = self
            .dim
            .sqrt()
            .ok_or(QuantityError::OddExponentSqrt { dim: self.dim })?;
        Quantity::new(self.magnitude.sqrt(), dim)
    }

    pub fn abs(self) -> Quantity {
        Self {
            magnitude: self.magnitude.abs(),
            dim: self.dim,
        }
    }

    pub fn recip(self) -> Quantity {
        checked(self.magnitude.recip(), self.dim.invert())
    }

    // Dimension-tagged constructors for the dimensions this crate traffics in.
    pub fn kilograms(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::MASS)
    }
    pub fn meters(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::LENGTH)
    }
    pub fn seconds(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::TIME)
    }
    pub fn newtons(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::FORCE)
    }
    pub fn per_second(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::RATE)
    }
    pub fn amperes(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::CURRENT)
    }
    pub fn teslas(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::MAGNETIC_FLUX_DENSITY)
    }
    pub fn kg_per_m3(x: f64) -> Result<Self, QuantityError> {
        Self::new(x, Dimension::MASS_DENSITY)
    }
}

fn checked(magnitude: f64, dim: Dimension) -> Quantity {
    match Quantity::new(magnitude, dim) {
        Ok(q) => q,
        Err(e) => panic!("quantity arithmetic produced a non-finite magnitude: {e}"),
    }
}

impl Add for Quantity {
    type Output = Quantity;
    fn add(self, other: Quantity) -> Quantity {
        match self.try_add(other) {
            Ok(q) => q,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Sub for Quantity {
    type Output = Quantity;
    fn sub(self, other: Quantity) -> Quantity {
        match self.try_sub(other) {
            Ok(q) => q,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Neg for Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        Self {
            magnitude: -self.magnitude,
            dim: self.dim,
        }
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, other: Quantity) -> Quantity {
        checked(self.magnitude * other.magnitude, self.dim.multiply(other.dim))
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, other: Quantity) -> Quantity {
        checked(self.magnitude / other.magnitude, self.dim.divide(other.dim))
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;
    fn mul(self, scalar: f64) -> Quantity {
        checked(self.magnitude * scalar, self.dim)
    }
}

impl Mul<Quantity> for f64 {
    type Output = Quantity;
    fn mul(self, q: Quantity) -> Quantity {
        q * self
    }
}

impl Div<f64> for Quantity {
    type Output = Quantity;
    fn div(self, scalar: f64) -> Quantity {
        checked(self.magnitude / scalar, self.dim)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim.is_dimensionless() {
            write!(f, "{}", self.magnitude)
        } else {
            write!(f, "{} {}", self.magnitude, self.dim)
        }
    }
}
