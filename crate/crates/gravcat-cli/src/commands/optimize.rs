//! `optimize`: constrained grid search over material, radius, surface gap,
//! and separation.

use gravcat::feasibility::{optimize_f0, DesignBounds, GuardStatus};
use gravcat::quantities::Dimension;
use serde_json::json;

use crate::config::{optional, required, KeySpec, LoadedConfig, ValueKind};
use crate::output::CommandOutput;

use super::{compute_error, fq, material_by_name, resolve_materials, RunError};

pub fn schema() -> Vec<KeySpec> {
    vec![
        optional("materials", ValueKind::Text),
        optional("materials_file", ValueKind::Text),
        required("R_min", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("R_max", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("a_min", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("a_max", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("L_min", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("L_max", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("m", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional("grid_points", ValueKind::Integer),
        optional("cooling_floor", ValueKind::Quantity(Dimension::RATE, "angular rate")),
        optional("casimir_min", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("size_factor", ValueKind::Number),
    ]
}

pub fn run(config: &LoadedConfig) -> Result<CommandOutput, RunError> {
    let available = resolve_materials(config)?;
    let materials = match config.text("materials") {
        Some(list) => list
            .split(',')
            .map(|name| material_by_name(config, &available, name.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => available,
    };

    let mut bounds = DesignBounds::new(
        materials,
        (
            config.require_quantity("R_min")?,
            config.require_quantity("R_max")?,
        ),
        (
            config.require_quantity("a_min")?,
            config.require_quantity("a_max")?,
        ),
        (
            config.require_quantity("L_min")?,
            config.require_quantity("L_max")?,
        ),
        config.require_quantity("m")?,
    )
    .map_err(compute_error)?;
    if let Some(points) = config.integer("grid_points") {
        bounds = bounds.with_grid_points(points.max(1) as usize);
    }
    if let Some(floor) = config.quantity("cooling_floor") {
        bounds = bounds.with_cooling_floor(floor);
    }
    if let Some(threshold) = config.quantity("casimir_min") {
        bounds = bounds.with_casimir_threshold(threshold);
    }
    if let Some(factor) = config.number("size_factor") {
        bounds.size_factor = factor;
    }

    let design = optimize_f0(&bounds).map_err(compute_error)?;

    let mut text = String::new();
    text.push_str("lever search\n");
    text.push_str(&format!(
        "  grid: {} points per axis (log-spaced), {} material(s)\n",
        bounds.grid_points,
        bounds.materials.len()
    ));
    text.push_str("best design\n");
    text.push_str(&format!(
        "  material = {}   R = {}   a = {}   L = {}\n",
        design.material.name,
        fq(design.radius, "um", 3),
        fq(design.surface_gap, "um", 3),
        fq(design.separation, "pm", 3),
    ));
    text.push_str(&format!(
        "  M = {}   f0 = {}\n",
        fq(design.source_mass, "ng", 3),
        fq(design.f0, "N", 2)
    ));
    for check in &design.checks {
        text.push_str(&format!(
            "  check {:<38} {}  margin {:.3} (dimensionless)\n",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.margin
        ));
    }
    if let GuardStatus::Warning { message } = &design.casimir {
        text.push_str(&format!("  casimir warning: {message}\n"));
    }

    let json = json!({
        "command": "optimize",
        "grid_points": bounds.grid_points,
        "material": design.material.name,
        "radius_m": design.radius.magnitude(),
        "surface_gap_m": design.surface_gap.magnitude(),
        "separation_m": design.separation.magnitude(),
        "source_mass_kg": design.source_mass.magnitude(),
        "f0_N": design.f0.magnitude(),
        "grid_index": [
            design.grid_index.0,
            design.grid_index.1,
            design.grid_index.2,
            design.grid_index.3,
        ],
        "checks": design.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "margin": c.margin,
        })).collect::<Vec<_>>(),
    });

    Ok(CommandOutput::new(json, text))
}
