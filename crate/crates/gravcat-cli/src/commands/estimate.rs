//! `estimate`: closed-form force magnitude and sensitivity gap for one
//! source–probe configuration.

use gravcat::classical_probe::f0;
use gravcat::feasibility::{casimir_guard, f0_density_form, sensitivity_gap, GuardStatus};
use gravcat::quantities::Dimension;
use serde_json::json;

use crate::config::{optional, required, KeySpec, LoadedConfig, ValueKind};
use crate::output::CommandOutput;

use super::{compute_error, fq, resolve_materials, resolve_source_mass, RunError};

pub fn schema() -> Vec<KeySpec> {
    vec![
        optional("M", ValueKind::Quantity(Dimension::MASS, "mass")),
        required("m", ValueKind::Quantity(Dimension::MASS, "mass")),
        required("L", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("D", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("R", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("a", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("rho", ValueKind::Quantity(Dimension::MASS_DENSITY, "mass density")),
        optional("material", ValueKind::Text),
        optional("materials_file", ValueKind::Text),
        optional("sensitivity", ValueKind::Quantity(Dimension::FORCE, "force")),
    ]
}

pub fn run(config: &LoadedConfig) -> Result<CommandOutput, RunError> {
    let materials = resolve_materials(config)?;
    let source_mass = resolve_source_mass(config, &materials)?;
    let probe_mass = config.require_quantity("m")?;
    let separation = config.require_quantity("L")?;

    let distance = if let Some(d) = config.quantity("D") {
        d
    } else {
        match (config.quantity("R"), config.quantity("a")) {
            (Some(r), Some(a)) => r.try_add(a).map_err(compute_error)?,
            _ => {
                return Err(RunError::Config(
                    config.invalid("provide `D`, or `R` together with `a`"),
                ))
            }
        }
    };

    let force = f0(source_mass, probe_mass, separation, distance).map_err(compute_error)?;

    let mut text = String::new();
    text.push_str("force estimate\n");
    text.push_str(&format!("  M  = {}\n", fq(source_mass, "ng", 3)));
    text.push_str(&format!("  m  = {}\n", fq(probe_mass, "ng", 3)));
    text.push_str(&format!("  L  = {}\n", fq(separation, "pm", 3)));
    text.push_str(&format!("  D  = {}\n", fq(distance, "um", 3)));
    text.push_str(&format!("f0 = {}\n", fq(force, "N", 2)));

    let mut root = json!({
        "command": "estimate",
        "inputs": {
            "M_kg": source_mass.magnitude(),
            "m_kg": probe_mass.magnitude(),
            "L_m": separation.magnitude(),
            "D_m": distance.magnitude(),
        },
        "f0_N": force.magnitude(),
    });

    // The density route doubles as a consistency check whenever the sphere
    // parameters are on hand.
    if let (Some(rho), Some(radius), Some(gap)) = (
        config.quantity("rho"),
        config.quantity("R"),
        config.quantity("a"),
    ) {
        let density_route =
            f0_density_form(rho, probe_mass, separation, gap, radius).map_err(compute_error)?;
        text.push_str(&format!(
            "density form f0 = {} (point-mass composition and density form agree)\n",
            fq(density_route, "N", 2)
        ));
        root["density_form_f0_N"] = json!(density_route.magnitude());
    }

    if let Some(gap) = config.quantity("a") {
        if let GuardStatus::Warning { message } = casimir_guard(gap).map_err(compute_error)? {
            text.push_str(&format!("casimir warning: {message}\n"));
            root["casimir_warning"] = json!(message);
        } else {
            text.push_str(&format!(
                "casimir guard: ok at a = {}\n",
                fq(gap, "um", 2)
            ));
        }
    }

    if let Some(sensitivity) = config.quantity("sensitivity") {
        let orders = sensitivity_gap(force, sensitivity).map_err(compute_error)?;
        text.push_str(&format!(
            "sensitivity gap = {orders:.1} orders of magnitude (sensitivity = {})\n",
            fq(sensitivity, "N", 2)
        ));
        root["sensitivity_N"] = json!(sensitivity.magnitude());
        root["gap_orders"] = json!(orders);
    }

    Ok(CommandOutput::new(root, text))
}
