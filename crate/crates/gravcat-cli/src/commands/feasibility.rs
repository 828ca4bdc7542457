//! `feasibility`: the probe-survey table with sensitivity gaps, the
//! extended-separation projections, and the quantum-probe appraisal.

use gravcat::feasibility::{
    build_report, builtin_catalog, evaluate_proposal, extended_separation_projections,
    load_proposals, quantum_probe_appraisal, reference_probe_mass, CatSource,
};
use gravcat::quantities::{Dimension, Quantity};
use serde_json::json;

use crate::config::{optional, required, KeySpec, LoadedConfig, ValueKind};
use crate::output::CommandOutput;

use super::{compute_error, resolve_materials, resolve_source_mass, RunError};

pub fn schema() -> Vec<KeySpec> {
    vec![
        optional("M", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional("rho", ValueKind::Quantity(Dimension::MASS_DENSITY, "mass density")),
        optional("material", ValueKind::Text),
        optional("materials_file", ValueKind::Text),
        required("R", ValueKind::Quantity(Dimension::LENGTH, "length")),
        required("L", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("a", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("m", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional("proposals", ValueKind::Text),
        optional("quantum_probe_mass", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional(
            "quantum_probe_omega",
            ValueKind::Quantity(Dimension::RATE, "angular rate"),
        ),
        optional("quantum_probe_force", ValueKind::Quantity(Dimension::FORCE, "force")),
    ]
}

pub fn run(config: &LoadedConfig) -> Result<CommandOutput, RunError> {
    let materials = resolve_materials(config)?;
    let source_mass = resolve_source_mass(config, &materials)?;
    let radius = config.require_quantity("R")?;
    let separation = config.require_quantity("L")?;
    let surface_gap = config
        .quantity("a")
        .unwrap_or_else(|| Quantity::meters(1e-6).expect("finite"));
    let source = CatSource::new(source_mass, radius, separation).map_err(compute_error)?;

    let catalog = match config.text("proposals") {
        Some(file) => load_proposals(&config.sibling_path(file)).map_err(compute_error)?,
        None => builtin_catalog(),
    };
    let entries = catalog
        .iter()
        .map(|p| evaluate_proposal(p, &source, surface_gap))
        .collect::<Result<Vec<_>, _>>()
        .map_err(compute_error)?;

    let probe_mass = config.quantity("m").unwrap_or_else(reference_probe_mass);
    let projections =
        extended_separation_projections(probe_mass, &materials).map_err(compute_error)?;

    let appraisal = match (
        config.quantity("quantum_probe_mass"),
        config.quantity("quantum_probe_omega"),
    ) {
        (Some(mass), Some(omega)) => {
            let force = config
                .quantity("quantum_probe_force")
                .unwrap_or_else(|| Quantity::newtons(1e-21).expect("finite"));
            Some(quantum_probe_appraisal(mass, force, omega).map_err(compute_error)?)
        }
        _ => None,
    };

    let report = build_report(
        source,
        surface_gap,
        entries,
        None,
        Some(projections),
        appraisal,
    )
    .map_err(compute_error)?;

    let mut json = json!({ "command": "feasibility" });
    if let (serde_json::Value::Object(root), serde_json::Value::Object(body)) =
        (&mut json, report.to_json())
    {
        root.extend(body);
    }
    Ok(CommandOutput::new(json, report.to_table()))
}
