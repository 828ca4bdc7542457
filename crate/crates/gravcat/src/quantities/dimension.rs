use std::fmt;

/// Exponents of the seven SI base dimensions.
///
/// Dimensions form an abelian group under multiplication (exponent
/// addition); the dimensionless element is the all-zero vector. Exponents
/// are small signed integers — no formula in this crate needs rational
/// powers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub mass: i8,
    pub length: i8,
    pub time: i8,
    pub current: i8,
    pub temperature: i8,
    pub amount: i8,
    pub luminosity: i8,
}

const ZERO: Dimension = Dimension {
    mass: 0,
    length: 0,
    time: 0,
    current: 0,
    temperature: 0,
    amount: 0,
    luminosity: 0,
};

macro_rules! dim {
    () => { ZERO };
    ($($field:ident : $value:expr),+ $(,)?) => {
        Dimension { $($field: $value,)+ ..ZERO }
    };
}

impl Dimension {
    pub const NONE: Dimension = dim!();
    pub const MASS: Dimension = dim!(mass: 1);
    pub const LENGTH: Dimension = dim!(length: 1);
    pub const TIME: Dimension = dim!(time: 1);
    pub const CURRENT: Dimension = dim!(current: 1);
    pub const TEMPERATURE: Dimension = dim!(temperature: 1);
    pub const AMOUNT: Dimension = dim!(amount: 1);
    pub const LUMINOSITY: Dimension = dim!(luminosity: 1);

    /// s⁻¹: both plain rates and angular frequencies.
    pub const RATE: Dimension = dim!(time: -1);
    pub const AREA: Dimension = dim!(length: 2);
    pub const VOLUME: Dimension = dim!(length: 3);
    pub const VELOCITY: Dimension = dim!(length: 1, time: -1);
    pub const ACCELERATION: Dimension = dim!(length: 1, time: -2);
    pub const FORCE: Dimension = dim!(mass: 1, length: 1, time: -2);
    pub const ENERGY: Dimension = dim!(mass: 1, length: 2, time: -2);
    pub const POWER: Dimension = dim!(mass: 1, length: 2, time: -3);
    pub const PRESSURE: Dimension = dim!(mass: 1, length: -1, time: -2);
    pub const MASS_DENSITY: Dimension = dim!(mass: 1, length: -3);
    pub const NUMBER_DENSITY: Dimension = dim!(length: -3);
    pub const MAGNETIC_FLUX_DENSITY: Dimension = dim!(mass: 1, time: -2, current: -1);
    /// Force squared, the unit of two-time force correlations.
    pub const FORCE_SQUARED: Dimension = dim!(mass: 2, length: 2, time: -4);

    pub fn is_dimensionless(self) -> bool {
        self == Self::NONE
    }

    /// Exponent addition: the dimension of a product.
    pub fn multiply(self, other: Dimension) -> Dimension {
        Dimension {
            mass: self.mass + other.mass,
            length: self.length + other.length,
            time: self.time + other.time,
            current: self.current + other.current,
            temperature: self.temperature + other.temperature,
            amount: self.amount + other.amount,
            luminosity: self.luminosity + other.luminosity,
        }
    }

    /// Exponent subtraction: the dimension of a quotient.
    pub fn divide(self, other: Dimension) -> Dimension {
        self.multiply(other.invert())
    }

    pub fn invert(self) -> Dimension {
        Dimension {
            mass: -self.mass,
            length: -self.length,
            time: -self.time,
            current: -self.current,
            temperature: -self.temperature,
            amount: -self.amount,
            luminosity: -self.luminosity,
        }
    }

    pub fn powi(self, n: i32) -> Dimension {
        let n = n as i8;
        Dimension {
            mass: self.mass * n,
            length: self.length * n,
            time: self.time * n,
            current: self.current * n,
            temperature: self.temperature * n,
            amount: self.amount * n,
            luminosity: self.luminosity * n,
        }
    }

    /// Halves every exponent; `None` when any exponent is odd.
    pub fn sqrt(self) -> Option<Dimension> {
        let half = |e: i8| if e % 2 == 0 { Some(e / 2) } else { None };
        Some(Dimension {
            mass: half(self.mass)?,
            length: half(self.length)?,
            time: half(self.time)?,
            current: half(self.current)?,
            temperature: half(self.temperature)?,
            amount: half(self.amount)?,
            luminosity: half(self.luminosity)?,
        })
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "1");
        }
        let factors = [
            ("kg", self.mass),
            ("m", self.length),
            ("s", self.time),
            ("A", self.current),
            ("K", self.temperature),
            ("mol", self.amount),
            ("cd", self.luminosity),
        ];
        let mut first = true;
        for (symbol, exponent) in factors {
            if exponent == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exponent == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{symbol}^{exponent}")?;
            }
        }
        Ok(())
    }
}
