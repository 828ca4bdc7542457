//! The superconducting-microsphere trap constraint chain.
//!
//! A quadrupole magnetic field levitates a superconducting sphere via the
//! Meissner effect. The chain runs: coil current and radius fix the trap
//! frequency, the critical field caps the sphere radius, radius and density
//! give the mass, mass and frequency give the zero-point motion, and the
//! parametric coupling χ sets the cat separation `L = 4 χ x_zp`.
//!
//! "Much larger than the penetration depth λ and coherence length ξ" is
//! hardened to a ×10 separation with a configurable factor; the cooling
//! floor on the trap frequency defaults to 2π × 10 kHz.

use std::path::Path;

use thiserror::Error;

use crate::kv::{KvError, KvFile};
use crate::quantities::{
    parse_quantity, Dimension, Quantity, QuantityError, REDUCED_PLANCK, VACUUM_PERMEABILITY,
};

#[derive(Debug, Error)]
pub enum TrapError {
    #[error(transparent)]
    Quantity(#[from] QuantityError),

    #[error(transparent)]
    Catalog(#[from] KvError),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("material `{name}`: missing key `{key}`")]
    MissingMaterialKey { name: String, key: String },

    #[error("material catalog entry `{key}`: {message}")]
    BadMaterialEntry { key: String, message: String },
}

/// A superconductor: density, critical field, penetration depth, coherence
/// length.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub rho: Quantity,
    pub b_crit: Quantity,
    pub lambda: Quantity,
    pub xi: Quantity,
}

impl Material {
    pub fn new(
        name: &str,
        rho: Quantity,
        b_crit: Quantity,
        lambda: Quantity,
        xi: Quantity,
    ) -> Result<Self, TrapError> {
        for (what, quantity, dim) in [
            ("density rho", rho, Dimension::MASS_DENSITY),
            ("critical field B_crit", b_crit, Dimension::MAGNETIC_FLUX_DENSITY),
            ("penetration depth lambda", lambda, Dimension::LENGTH),
            ("coherence length xi", xi, Dimension::LENGTH),
        ] {
            let value = quantity.expect_dim(dim, what)?;
            if value <= 0.0 {
                return Err(TrapError::NonPositive { what, value });
            }
        }
        Ok(Self {
            name: name.to_string(),
            rho,
            b_crit,
            lambda,
            xi,
        })
    }

    /// Lead at T = 0: ρ = 11360 kg/m³, B_crit = 0.08 T, λ = 30.5 nm,
    /// ξ = 96 nm.
    pub fn lead() -> Self {
        Self {
            name: "Pb".to_string(),
            rho: Quantity::kg_per_m3(11360.0).expect("finite"),
            b_crit: Quantity::teslas(0.08).expect("finite"),
            lambda: Quantity::meters(30.5e-9).expect("finite"),
            xi: Quantity::meters(96e-9).expect("finite"),
        }
    }

    /// Tantalum: ρ = 16.7 g/cm³ with a critical field slightly above lead's
    /// (0.083 T) and standard literature λ, ξ.
    pub fn tantalum() -> Self {
        Self {
            name: "Ta".to_string(),
            rho: Quantity::kg_per_m3(16700.0).expect("finite"),
            b_crit: Quantity::teslas(0.083).expect("finite"),
            lambda: Quantity::meters(35e-9).expect("finite"),
            xi: Quantity::meters(93e-9).expect("finite"),
        }
    }

    pub fn builtin() -> Vec<Material> {
        vec![Self::lead(), Self::tantalum()]
    }
}

/// Loads a materials catalog: keys `<Name>.rho`, `<Name>.b_crit`,
/// `<Name>.lambda`, `<Name>.xi`, unit-tagged values.
pub fn load_materials(path: &Path) -> Result<Vec<Material>, TrapError> {
    let file = KvFile::load(path)?;
    let (map, _warnings) = file.to_map();

    let mut names: Vec<String> = Vec::new();
    for key in map.keys() {
        if let Some((name, _field)) = key.split_once('.') {
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }

    let mut materials = Vec::new();
    for name in names {
        let field = |key: &str| -> Result<Quantity, TrapError> {
            let full = format!("{name}.{key}");
            let entry = map.get(&full).ok_or_else(|| TrapError::MissingMaterialKey {
                name: name.clone(),
                key: key.to_string(),
            })?;
            parse_quantity(&entry.value).map_err(|e| TrapError::BadMaterialEntry {
                key: full.clone(),
                message: e.to_string(),
            })
        };
        materials.push(Material::new(
            &name,
            field("rho")?,
            field("b_crit")?,
            field("lambda")?,
            field("xi")?,
        )?);
    }
    Ok(materials)
}

/// Default cooling floor on the trap frequency, rad/s (2π × 10 kHz).
pub fn default_cooling_floor() -> Quantity {
    Quantity::per_second(2.0 * std::f64::consts::PI * 1e4).expect("finite")
}

/// Default hardening factor for the `R ≫ λ, ξ` size checks.
pub const DEFAULT_SIZE_FACTOR: f64 = 10.0;

/// Trap frequency `ω_t = sqrt(μ₀/ρ) I / l²` in rad/s; `l` is the coil
/// radius and separation of the anti-Helmholtz pair.
pub fn trap_frequency(
    current: Quantity,
    coil_radius: Quantity,
    rho: Quantity,
) -> Result<Quantity, TrapError> {
    let i = positive(current.expect_dim(Dimension::CURRENT, "current I")?, "current I")?;
    let l = positive(
        coil_radius.expect_dim(Dimension::LENGTH, "coil radius l")?,
        "coil radius l",
    )?;
    let rho = positive(rho.expect_dim(Dimension::MASS_DENSITY, "density rho")?, "density rho")?;
    Ok(Quantity::per_second(
        (VACUUM_PERMEABILITY / rho).sqrt() * i / (l * l),
    )?)
}

/// The quadrupole geometry fixes the transverse frequency at `ω_t / 2`.
pub fn perpendicular_frequency(omega_t: Quantity) -> Result<Quantity, TrapError> {
    let w = omega_t.expect_dim(Dimension::RATE, "trap frequency omega_t")?;
    Ok(Quantity::per_second(w / 2.0)?)
}

/// Critical-field radius bound `R_max = B_crit / (ω_t sqrt(μ₀ ρ))`.
pub fn max_radius(
    b_crit: Quantity,
    rho: Quantity,
    omega_t: Quantity,
) -> Result<Quantity, TrapError> {
    let b = positive(
        b_crit.expect_dim(Dimension::MAGNETIC_FLUX_DENSITY, "critical field B_crit")?,
        "critical field B_crit",
    )?;
    let rho = positive(rho.expect_dim(Dimension::MASS_DENSITY, "density rho")?, "density rho")?;
    let w = positive(
        omega_t.expect_dim(Dimension::RATE, "trap frequency omega_t")?,
        "trap frequency omega_t",
    )?;
    Ok(Quantity::meters(b / (w * (VACUUM_PERMEABILITY * rho).sqrt()))?)
}

/// Sphere mass `M = (4/3) π R³ ρ`.
pub fn sphere_mass(radius: Quantity, rho: Quantity) -> Result<Quantity, TrapError> {
    let r = positive(radius.expect_dim(Dimension::LENGTH, "radius R")?, "radius R")?;
    let rho = positive(rho.expect_dim(Dimension::MASS_DENSITY, "density rho")?, "density rho")?;
    Ok(Quantity::kilograms(
        4.0 * std::f64::consts::PI / 3.0 * rho * ((r * r) * r),
    )?)
}

/// Ground-state position spread `x_zp = sqrt(ħ / (2 M ω_t))`.
pub fn zero_point_motion(mass: Quantity, omega_t: Quantity) -> Result<Quantity, TrapError> {
    let m = positive(mass.expect_dim(Dimension::MASS, "mass M")?, "mass M")?;
    let w = positive(
        omega_t.expect_dim(Dimension::RATE, "trap frequency omega_t")?,
        "trap frequency omega_t",
    )?;
    Ok(Quantity::meters((REDUCED_PLANCK / (2.0 * m * w)).sqrt())?)
}

/// Cat separation from the parametric coupling: `L = 4 χ x_zp`.
pub fn cat_separation(chi: f64, x_zp: Quantity) -> Result<Quantity, TrapError> {
    if chi < 0.0 {
        return Err(TrapError::NonPositive {
            what: "parametric coupling chi",
            value: chi,
        });
    }
    let x = positive(
        x_zp.expect_dim(Dimension::LENGTH, "zero-point motion x_zp")?,
        "zero-point motion x_zp",
    )?;
    Ok(Quantity::meters(4.0 * chi * x)?)
}

fn positive(value: f64, what: &'static str) -> Result<f64, TrapError> {
    if value <= 0.0 {
        return Err(TrapError::NonPositive { what, value });
    }
    Ok(value)
}

/// A candidate trap configuration. `ω_⊥ = ω_t/2` holds by construction;
/// the remaining invariants are evaluated by [`validate_trap`] as report
/// entries, never as exceptions.
#[derive(Debug, Clone)]
pub struct TrapConfig {
    pub material: Material,
    pub radius: Quantity,
    pub current: Quantity,
    pub coil_radius: Quantity,
    /// Parametric qubit coupling; dimensionless free input.
    pub chi: f64,
    /// Minimum trap frequency that still allows ground-state cooling.
    pub cooling_floor: Quantity,
    /// Hardening factor for the `R ≫ λ, ξ` checks.
    pub size_factor: f64,
}

impl TrapConfig {
    pub fn new(
        material: Material,
        radius: Quantity,
        current: Quantity,
        coil_radius: Quantity,
        chi: f64,
    ) -> Self {
        Self {
            material,
            radius,
            current,
            coil_radius,
            chi,
            cooling_floor: default_cooling_floor(),
            size_factor: DEFAULT_SIZE_FACTOR,
        }
    }
}

/// One validation line: a named check, pass/fail, and a dimensionless
/// margin (≥ 1 passes; the ratio by which the constraint is met).
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub margin: f64,
}

fn check(name: &'static str, margin: f64) -> CheckResult {
    CheckResult {
        name,
        pass: margin >= 1.0,
        margin,
    }
}

/// Constraint checks shared by trap validation and the design optimizer:
/// `R < R_max(ω_t)`, `R ≥ factor·λ`, `R ≥ factor·ξ`, `ω_t ≥ floor`.
pub fn trap_checks(
    material: &Material,
    radius: Quantity,
    omega_t: Quantity,
    cooling_floor: Quantity,
    size_factor: f64,
) -> Result<Vec<CheckResult>, TrapError> {
    let r = radius.expect_dim(Dimension::LENGTH, "radius R")?;
    let r_max = max_radius(material.b_crit, material.rho, omega_t)?.magnitude();
    let lambda = material.lambda.magnitude();
    let xi = material.xi.magnitude();
    let w = omega_t.expect_dim(Dimension::RATE, "trap frequency omega_t")?;
    let floor = cooling_floor.expect_dim(Dimension::RATE, "cooling floor")?;
    Ok(vec![
        check("radius_below_critical_field_limit", r_max / r),
        check("radius_vs_penetration_depth", r / (size_factor * lambda)),
        check("radius_vs_coherence_length", r / (size_factor * xi)),
        check("trap_frequency_above_cooling_floor", w / floor),
    ])
}

/// Evaluates every trap constraint for the configuration; failures come
/// back as entries with margin < 1.
pub fn validate_trap(config: &TrapConfig) -> Result<Vec<CheckResult>, TrapError> {
    let omega_t = trap_frequency(config.current, config.coil_radius, config.material.rho)?;
    trap_checks(
        &config.material,
        config.radius,
        omega_t,
        config.cooling_floor,
        config.size_factor,
    )
}

/// The full derived chain for a configuration, for reporting.
#[derive(Debug, Clone)]
pub struct TrapChain {
    pub omega_t: Quantity,
    pub omega_perp: Quantity,
    pub r_max: Quantity,
    pub mass: Quantity,
    pub x_zp: Quantity,
    pub separation: Quantity,
    pub checks: Vec<CheckResult>,
}

/// Composes trap_frequency → max_radius → sphere_mass → zero_point_motion
/// → cat_separation and attaches the validation checks.
pub fn trap_chain(config: &TrapConfig) -> Result<TrapChain, TrapError> {
    let omega_t = trap_frequency(config.current, config.coil_radius, config.material.rho)?;
    let omega_perp = perpendicular_frequency(omega_t)?;
    let r_max = max_radius(config.material.b_crit, config.material.rho, omega_t)?;
    let mass = sphere_mass(config.radius, config.material.rho)?;
    let x_zp = zero_point_motion(mass, omega_t)?;
    let separation = cat_separation(config.chi, x_zp)?;
    let checks = trap_checks(
        &config.material,
        config.radius,
        omega_t,
        config.cooling_floor,
        config.size_factor,
    )?;
    Ok(TrapChain {
        omega_t,
        omega_perp,
        r_max,
        mass,
        x_zp,
        separation,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    fn reference_config() -> TrapConfig {
        TrapConfig::new(
            Material::lead(),
            Quantity::meters(2e-6).unwrap(),
            Quantity::amperes(10.0).unwrap(),
            Quantity::meters(25e-6).unwrap(),
            8.7,
        )
    }

    #[test]
    fn trap_frequency_reference_point() {
        // I = 10 A, l = 25 μm, Pb: 1.68e5 rad/s ≈ 2π × 27 kHz, within 5%
        // of the quoted 2π × 28 kHz.
        let w = trap_frequency(
            Quantity::amperes(10.0).unwrap(),
            Quantity::meters(25e-6).unwrap(),
            Material::lead().rho,
        )
        .unwrap();
        assert_relative_eq!(w.magnitude(), 1.68e5, max_relative = 0.01);
        assert_relative_eq!(w.magnitude(), TWO_PI * 28e3, max_relative = 0.05);
    }

    #[test]
    fn trap_frequency_scaling() {
        let i = Quantity::amperes(10.0).unwrap();
        let l = Quantity::meters(25e-6).unwrap();
        let rho = Material::lead().rho;
        let base = trap_frequency(i, l, rho).unwrap().magnitude();
        let doubled_current = trap_frequency(i * 2.0, l, rho).unwrap().magnitude();
        assert_relative_eq!(doubled_current, 2.0 * base, max_relative = 1e-12);
        let doubled_coil = trap_frequency(i, l * 2.0, rho).unwrap().magnitude();
        assert_relative_eq!(doubled_coil, base / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn max_radius_reference_points() {
        let pb = Material::lead();
        // ω_t = 2π × 28 kHz: about 3.7–3.8 μm.
        let at_28khz = max_radius(
            pb.b_crit,
            pb.rho,
            Quantity::per_second(TWO_PI * 28e3).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(at_28khz.magnitude(), 3.8e-6, max_relative = 0.02);
        assert_relative_eq!(at_28khz.magnitude(), 3.7e-6, max_relative = 0.10);

        // ω_t = 2π × 13 kHz reconstructs the ~8 μm absolute Pb limit.
        let at_13khz = max_radius(
            pb.b_crit,
            pb.rho,
            Quantity::per_second(TWO_PI * 13e3).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(at_13khz.magnitude(), 8e-6, max_relative = 0.05);

        // Halving ω_t doubles R_max.
        let halved = max_radius(
            pb.b_crit,
            pb.rho,
            Quantity::per_second(TWO_PI * 14e3).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(
            halved.magnitude(),
            2.0 * at_28khz.magnitude(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn sphere_mass_reference_points() {
        let pb = sphere_mass(Quantity::meters(2e-6).unwrap(), Material::lead().rho).unwrap();
        assert_relative_eq!(pb.magnitude(), 0.38e-12, max_relative = 0.01);

        let ta = sphere_mass(Quantity::meters(5e-6).unwrap(), Material::tantalum().rho).unwrap();
        assert_relative_eq!(ta.magnitude(), 8.74e-12, max_relative = 0.01);

        let doubled = sphere_mass(Quantity::meters(4e-6).unwrap(), Material::lead().rho).unwrap();
        assert_relative_eq!(doubled.magnitude(), 8.0 * pb.magnitude(), max_relative = 1e-12);
    }

    #[test]
    fn zero_point_motion_reference_point() {
        let x = zero_point_motion(
            Quantity::kilograms(0.38e-12).unwrap(),
            Quantity::per_second(1.68e5).unwrap(),
        )
        .unwrap();
        assert_eq!(x.dim(), Dimension::LENGTH);
        assert_relative_eq!(x.magnitude(), 2.9e-14, max_relative = 0.02);

        let quadrupled_mass = zero_point_motion(
            Quantity::kilograms(4.0 * 0.38e-12).unwrap(),
            Quantity::per_second(1.68e5).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(
            quadrupled_mass.magnitude(),
            x.magnitude() / 2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn cat_separation_reference_point() {
        let x_zp = Quantity::meters(2.9e-14).unwrap();
        let l = cat_separation(8.7, x_zp).unwrap();
        assert_relative_eq!(l.magnitude(), 1.0e-12, max_relative = 0.02);
        assert_eq!(cat_separation(0.0, x_zp).unwrap().magnitude(), 0.0);
        let doubled = cat_separation(17.4, x_zp).unwrap();
        assert_relative_eq!(doubled.magnitude(), 2.0 * l.magnitude(), max_relative = 1e-12);
    }

    #[test]
    fn log_log_slopes_match_closed_forms() {
        // Power-law exponents probed by doubling each argument.
        let slope = |a: f64, b: f64| (b / a).log2();
        let i = Quantity::amperes(3.0).unwrap();
        let l = Quantity::meters(1e-5).unwrap();
        let rho = Material::lead().rho;
        let w0 = trap_frequency(i, l, rho).unwrap().magnitude();
        assert_relative_eq!(
            slope(w0, trap_frequency(i * 2.0, l, rho).unwrap().magnitude()),
            1.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            slope(w0, trap_frequency(i, l * 2.0, rho).unwrap().magnitude()),
            -2.0,
            epsilon = 1e-12
        );

        let b = Material::lead().b_crit;
        let w = Quantity::per_second(1e5).unwrap();
        let r0 = max_radius(b, rho, w).unwrap().magnitude();
        assert_relative_eq!(
            slope(r0, max_radius(b, rho, w * 2.0).unwrap().magnitude()),
            -1.0,
            epsilon = 1e-12
        );

        let radius = Quantity::meters(1e-6).unwrap();
        let m0 = sphere_mass(radius, rho).unwrap().magnitude();
        assert_relative_eq!(
            slope(m0, sphere_mass(radius * 2.0, rho).unwrap().magnitude()),
            3.0,
            epsilon = 1e-12
        );

        let mass = Quantity::kilograms(1e-12).unwrap();
        let x0 = zero_point_motion(mass, w).unwrap().magnitude();
        assert_relative_eq!(
            slope(x0, zero_point_motion(mass * 2.0, w).unwrap().magnitude()),
            -0.5,
            epsilon = 1e-12
        );

        let xz = Quantity::meters(1e-14).unwrap();
        let l0 = cat_separation(1.0, xz).unwrap().magnitude();
        assert_relative_eq!(
            slope(l0, cat_separation(2.0, xz).unwrap().magnitude()),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn reference_configuration_validates() {
        let checks = validate_trap(&reference_config()).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn oversized_radius_fails_critical_field_check() {
        // R = 4 μm at ω_t ≈ 2π × 27 kHz exceeds R_max ≈ 4.0 μm? No: the
        // computed chain gives R_max = 3.98 μm, so 4 μm fails while 2 μm
        // passes.
        let mut config = reference_config();
        config.radius = Quantity::meters(4.05e-6).unwrap();
        let checks = validate_trap(&config).unwrap();
        let r_max_check = checks
            .iter()
            .find(|c| c.name == "radius_below_critical_field_limit")
            .unwrap();
        assert!(!r_max_check.pass);
        assert!(r_max_check.margin < 1.0);
    }

    #[test]
    fn small_sphere_fails_size_separation() {
        // R = 200 nm against ×10 hardening: both λ (10×30.5 nm) and
        // ξ (10×96 nm) checks fail, with both margins reported.
        let mut config = reference_config();
        config.radius = Quantity::meters(200e-9).unwrap();
        let checks = validate_trap(&config).unwrap();
        let lambda_check = checks
            .iter()
            .find(|c| c.name == "radius_vs_penetration_depth")
            .unwrap();
        let xi_check = checks
            .iter()
            .find(|c| c.name == "radius_vs_coherence_length")
            .unwrap();
        assert!(!lambda_check.pass);
        assert!(!xi_check.pass);
        assert_relative_eq!(lambda_check.margin, 200.0 / 305.0, max_relative = 1e-12);
        assert_relative_eq!(xi_check.margin, 200.0 / 960.0, max_relative = 1e-12);
    }

    #[test]
    fn chain_reproduces_reference_numbers() {
        let chain = trap_chain(&reference_config()).unwrap();
        assert_relative_eq!(chain.omega_t.magnitude(), TWO_PI * 28e3, max_relative = 0.10);
        assert_relative_eq!(
            chain.omega_perp.magnitude(),
            chain.omega_t.magnitude() / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(chain.r_max.magnitude(), 3.7e-6, max_relative = 0.10);
        assert_relative_eq!(chain.mass.magnitude(), 0.38e-12, max_relative = 0.10);
        // M ≈ 2.3e14 amu, same order as the quoted ~1e14 amu.
        let amu = chain.mass.magnitude() / crate::quantities::ATOMIC_MASS_UNIT;
        assert!((amu.log10() - 14.0).abs() < 0.5);
        assert_relative_eq!(chain.x_zp.magnitude(), 2.9e-14, max_relative = 0.10);
        // Composed separation lands within a factor 3 of 1e-12 m with the
        // reconstructed χ = 8.7.
        let ratio = chain.separation.magnitude() / 1e-12;
        assert!(ratio > 1.0 / 3.0 && ratio < 3.0);
        assert!(chain.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn builtin_materials_are_valid() {
        for material in Material::builtin() {
            assert!(material.rho.magnitude() > 0.0);
            assert!(material.b_crit.magnitude() > 0.0);
        }
        // Ta density from its g/cm³ quote; B_crit slightly above Pb.
        let ta = Material::tantalum();
        assert_relative_eq!(ta.rho.magnitude(), 16.7e3, max_relative = 1e-12);
        assert!(ta.b_crit.magnitude() > Material::lead().b_crit.magnitude());
    }

    #[test]
    fn materials_load_from_kv() {
        let dir = std::env::temp_dir().join("gravcat_materials_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("materials.kv");
        std::fs::write(
            &path,
            "Nb.rho = 8570 kg/m^3\nNb.b_crit = 0.2 T\nNb.lambda = 39 nm\nNb.xi = 38 nm\n",
        )
        .unwrap();
        let materials = load_materials(&path).unwrap();
        assert_eq!(materials.len(), 1);
        assert_eq!(materials[0].name, "Nb");
        assert_relative_eq!(materials[0].rho.magnitude(), 8570.0);

        std::fs::write(&path, "Nb.rho = 8570 kg/m^3\n").unwrap();
        assert!(matches!(
            load_materials(&path),
            Err(TrapError::MissingMaterialKey { .. })
        ));
    }
}
