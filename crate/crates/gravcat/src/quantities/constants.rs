use super::{Dimension, Quantity};

/// CODATA 2018 values, canonical SI scale.
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11; // m^3 kg^-1 s^-2
pub const VACUUM_PERMEABILITY: f64 = 4.0 * std::f64::consts::PI * 1e-7; // T m / A
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34; // J s
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27; // kg

const G_DIM: Dimension = Dimension {
    mass: -1,
    length: 3,
    time: -2,
    current: 0,
    temperature: 0,
    amount: 0,
    luminosity: 0,
};
const MU0_DIM: Dimension = Dimension {
    mass: 1,
    length: 1,
    time: -2,
    current: -2,
    temperature: 0,
    amount: 0,
    luminosity: 0,
};
const HBAR_DIM: Dimension = Dimension {
    mass: 1,
    length: 2,
    time: -1,
    current: 0,
    temperature: 0,
    amount: 0,
    luminosity: 0,
};

/// The physical-constants table shared by every module. Immutable after
/// construction; all fields carry their SI dimensions.
#[derive(Clone, Copy, Debug)]
pub struct ConstantsTable {
    /// Gravitational constant G, m³ kg⁻¹ s⁻².
    pub gravitational: Quantity,
    /// Vacuum permeability μ₀, T m/A.
    pub vacuum_permeability: Quantity,
    /// Reduced Planck constant ħ, J s.
    pub reduced_planck: Quantity,
    /// Atomic mass unit, kg.
    pub atomic_mass: Quantity,
}

impl ConstantsTable {
    pub const fn codata() -> Self {
        Self {
            gravitational: Quantity::from_parts(GRAVITATIONAL_CONSTANT, G_DIM),
            vacuum_permeability: Quantity::from_parts(VACUUM_PERMEABILITY, MU0_DIM),
            reduced_planck: Quantity::from_parts(REDUCED_PLANCK, HBAR_DIM),
            atomic_mass: Quantity::from_parts(ATOMIC_MASS_UNIT, Dimension::MASS),
        }
    }
}

impl Default for ConstantsTable {
    fn default() -> Self {
        Self::codata()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dimensions_compose() {
        let c = ConstantsTable::codata();
        // G M m / r^2 must be a force.
        let m = Quantity::kilograms(1.0).unwrap();
        let r = Quantity::meters(1.0).unwrap();
        let f = c.gravitational * m * m / (r * r);
        assert_eq!(f.dim(), Dimension::FORCE);
        assert_relative_eq!(f.magnitude(), 6.67430e-11);

        // sqrt(mu0 / rho) * I / l^2 must be a rate.
        let rho = Quantity::kg_per_m3(11360.0).unwrap();
        let i = Quantity::amperes(10.0).unwrap();
        let l = Quantity::meters(25e-6).unwrap();
        let omega = (c.vacuum_permeability / rho).sqrt().unwrap() * i / (l * l);
        assert_eq!(omega.dim(), Dimension::RATE);
    }

    #[test]
    fn codata_six_digits() {
        let c = ConstantsTable::codata();
        assert_relative_eq!(c.gravitational.magnitude(), 6.67430e-11, max_relative = 1e-6);
        assert_relative_eq!(
            c.vacuum_permeability.magnitude(),
            1.25663706212e-6,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            c.reduced_planck.magnitude(),
            1.054571817e-34,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            c.atomic_mass.magnitude(),
            1.66053906660e-27,
            max_relative = 1e-9
        );
    }
}
