//! `trap`: the microsphere trap constraint chain plus validation.

use gravcat::quantities::Dimension;
use gravcat::trap_design::{trap_chain, Material, TrapConfig, DEFAULT_SIZE_FACTOR};
use serde_json::json;

use crate::config::{optional, required, KeySpec, LoadedConfig, ValueKind};
use crate::output::CommandOutput;

use super::{compute_error, fq, material_by_name, resolve_materials, RunError};

pub fn schema() -> Vec<KeySpec> {
    vec![
        optional("material", ValueKind::Text),
        optional("materials_file", ValueKind::Text),
        optional("rho", ValueKind::Quantity(Dimension::MASS_DENSITY, "mass density")),
        optional(
            "b_crit",
            ValueKind::Quantity(Dimension::MAGNETIC_FLUX_DENSITY, "magnetic flux density"),
        ),
        optional("lambda", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("xi", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("I", ValueKind::Quantity(Dimension::CURRENT, "current")),
        required("l", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("R", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("chi", ValueKind::Number),
        optional("cooling_floor", ValueKind::Quantity(Dimension::RATE, "angular rate")),
        optional("size_factor", ValueKind::Number),
    ]
}

fn resolve_material(config: &LoadedConfig) -> Result<Material, RunError> {
    if let Some(name) = config.text("material") {
        let materials = resolve_materials(config)?;
        return material_by_name(config, &materials, name);
    }
    match (
        config.quantity("rho"),
        config.quantity("b_crit"),
        config.quantity("lambda"),
        config.quantity("xi"),
    ) {
        (Some(rho), Some(b_crit), Some(lambda), Some(xi)) => {
            Material::new("inline", rho, b_crit, lambda, xi).map_err(compute_error)
        }
        _ => Err(RunError::Config(config.invalid(
            "provide `material`, or all of `rho`, `b_crit`, `lambda`, `xi`",
        ))),
    }
}

pub fn run(config: &LoadedConfig) -> Result<CommandOutput, RunError> {
    let material = resolve_material(config)?;
    let chi = config.number("chi");

    let mut trap = TrapConfig::new(
        material.clone(),
        config.require_quantity("R")?,
        config.require_quantity("I")?,
        config.require_quantity("l")?,
        chi.unwrap_or(0.0),
    );
    if let Some(floor) = config.quantity("cooling_floor") {
        trap.cooling_floor = floor;
    }
    trap.size_factor = config.number("size_factor").unwrap_or(DEFAULT_SIZE_FACTOR);

    let chain = trap_chain(&trap).map_err(compute_error)?;
    let khz = chain.omega_t.magnitude() / (2.0 * std::f64::consts::PI * 1e3);

    let mut text = String::new();
    text.push_str(&format!("trap chain (material {})\n", material.name));
    text.push_str(&format!(
        "  omega_t    = {} = 2pi x {khz:.1} kHz\n",
        fq(chain.omega_t, "rad/s", 3)
    ));
    text.push_str(&format!(
        "  omega_perp = {} (omega_t / 2)\n",
        fq(chain.omega_perp, "rad/s", 3)
    ));
    text.push_str(&format!("  R_max      = {}\n", fq(chain.r_max, "um", 2)));
    text.push_str(&format!("  M          = {}\n", fq(chain.mass, "ng", 3)));
    text.push_str(&format!("  x_zp       = {}\n", fq(chain.x_zp, "m", 2)));
    if let Some(chi) = chi {
        text.push_str(&format!(
            "  L          = {} = {} (chi = {chi} (dimensionless), reconstructed input)\n",
            fq(chain.separation, "m", 2),
            fq(chain.separation, "pm", 2),
        ));
    }
    text.push_str("validation\n");
    for check in &chain.checks {
        text.push_str(&format!(
            "  {:<38} {}  margin {:.3} (dimensionless)\n",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.margin
        ));
    }
    if chain.checks.iter().all(|c| c.pass) {
        text.push_str("all checks pass\n");
    } else {
        text.push_str("some checks FAIL\n");
    }

    let json = json!({
        "command": "trap",
        "material": material.name,
        "omega_t_rad_s": chain.omega_t.magnitude(),
        "omega_t_khz": khz,
        "omega_perp_rad_s": chain.omega_perp.magnitude(),
        "r_max_m": chain.r_max.magnitude(),
        "mass_kg": chain.mass.magnitude(),
        "x_zp_m": chain.x_zp.magnitude(),
        "separation_m": chain.separation.magnitude(),
        "chi": chi,
        "checks": chain.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "margin": c.margin,
        })).collect::<Vec<_>>(),
    });

    Ok(CommandOutput::new(json, text))
}
