//! Subcommand implementations. Each takes a validated [`LoadedConfig`] and
//! returns the artifacts to emit; config problems exit 2, computational
//! failures exit 1.

pub mod classical;
pub mod estimate;
pub mod feasibility;
pub mod optimize;
pub mod quantum;
pub mod trap;

use gravcat::quantities::{format_quantity, Quantity};
use gravcat::trap_design::{load_materials, Material};

use crate::config::{ConfigError, LoadedConfig};

#[derive(Debug)]
pub enum RunError {
    /// Bad configuration: exit code 2.
    Config(ConfigError),
    /// Computation failed on valid configuration: exit code 1.
    Compute(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

pub fn compute_error(e: impl std::fmt::Display) -> RunError {
    RunError::Compute(e.to_string())
}

/// Formats with a fixed significant-digit budget; the unit is
/// schema-controlled so the formatting cannot fail.
pub fn fq(q: Quantity, unit: &str, sig: usize) -> String {
    format_quantity(q, unit, sig).expect("unit matches the quantity dimension")
}

/// The material set visible to a run: built-ins, overlaid by an optional
/// `materials_file` (file entries win on name collisions).
pub fn resolve_materials(config: &LoadedConfig) -> Result<Vec<Material>, RunError> {
    let mut materials = Material::builtin();
    if let Some(file) = config.text("materials_file") {
        let loaded = load_materials(&config.sibling_path(file)).map_err(compute_error)?;
        for material in loaded {
            materials.retain(|m| m.name != material.name);
            materials.push(material);
        }
    }
    Ok(materials)
}

pub fn material_by_name(
    config: &LoadedConfig,
    materials: &[Material],
    name: &str,
) -> Result<Material, RunError> {
    materials
        .iter()
        .find(|m| m.name == name)
        .cloned()
        .ok_or_else(|| {
            RunError::Config(config.invalid(format!(
                "unknown material `{name}` (available: {})",
                materials
                    .iter()
                    .map(|m| m.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )))
        })
}

/// Source-mass resolution shared by `estimate` and `feasibility`: an
/// explicit `M`, or a sphere from `R` plus either `rho` or `material`.
pub fn resolve_source_mass(
    config: &LoadedConfig,
    materials: &[Material],
) -> Result<Quantity, RunError> {
    if let Some(mass) = config.quantity("M") {
        return Ok(mass);
    }
    let radius = config.quantity("R").ok_or_else(|| {
        RunError::Config(config.invalid("provide `M`, or `R` together with `rho` or `material`"))
    })?;
    let rho = if let Some(rho) = config.quantity("rho") {
        rho
    } else if let Some(name) = config.text("material") {
        material_by_name(config, materials, name)?.rho
    } else {
        return Err(RunError::Config(
            config.invalid("provide `M`, or `R` together with `rho` or `material`"),
        ));
    };
    gravcat::trap_design::sphere_mass(radius, rho).map_err(compute_error)
}
