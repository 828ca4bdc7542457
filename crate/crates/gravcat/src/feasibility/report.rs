//! Assembled feasibility reports: the per-proposal table, the optimizer
//! outcome, and the extended-separation projections, rendered both as JSON
//! and as an aligned text table.

use serde_json::{json, Map, Value};

use crate::quantities::{format_quantity, Quantity};
use crate::trap_design::Material;

use super::catalog::FeasibilityEntry;
use super::{
    f0_density_form, optimize_f0, CatSource, DesignBounds, FeasibilityError, GuardStatus,
    OptimizedDesign, QuantumProbeAppraisal,
};

/// Orders of magnitude by which free wavepacket expansion schemes are
/// expected to grow the cat separation beyond the parametric-coupling
/// values (pm → hundreds of nm).
pub const SEPARATION_ENHANCEMENT_ORDERS: i32 = 5;

/// One projected scenario: a separation and the force it buys.
#[derive(Debug, Clone)]
pub struct ProjectionScenario {
    pub label: String,
    pub separation: Quantity,
    pub force: Quantity,
    pub detail: String,
}

/// The extended-separation projections. `baseline` holds the reference
/// configuration at its separation scaled up by
/// [`SEPARATION_ENHANCEMENT_ORDERS`]; `improved` opens every lever with the
/// enhanced separation cap; `improved_at_baseline_separation` caps the
/// optimized levers at the baseline's 100 nm for comparison.
#[derive(Debug, Clone)]
pub struct Projections {
    pub baseline: ProjectionScenario,
    pub improved: ProjectionScenario,
    pub improved_at_baseline_separation: ProjectionScenario,
}

/// Recomputes the projected forces for separations grown by five orders of
/// magnitude. Nothing is hard-coded: the baseline is the reference Pb
/// configuration evaluated at L = 100 nm, and the improved figure reruns
/// the lever search with the enhanced scenario's separation scaled by the
/// same five orders (10 pm → 1 μm).
pub fn extended_separation_projections(
    probe_mass: Quantity,
    materials: &[Material],
) -> Result<Projections, FeasibilityError> {
    let enhancement = 10f64.powi(SEPARATION_ENHANCEMENT_ORDERS);

    let baseline_separation = Quantity::meters(1e-12 * enhancement)?; // 1 pm → 100 nm
    let baseline_force = f0_density_form(
        Material::lead().rho,
        probe_mass,
        baseline_separation,
        Quantity::meters(1e-6)?,
        Quantity::meters(2e-6)?,
    )?;
    let baseline = ProjectionScenario {
        label: "baseline".to_string(),
        separation: baseline_separation,
        force: baseline_force,
        detail: "reference Pb sphere (R = 2 um, a = 1 um) with the separation grown \
                 five orders of magnitude to 100 nm"
            .to_string(),
    };

    let improved_separation = Quantity::meters(10e-12 * enhancement)?; // 10 pm → 1 μm
    let lever_bounds = |l_max: Quantity| -> Result<DesignBounds, FeasibilityError> {
        DesignBounds::new(
            materials.to_vec(),
            (Quantity::meters(1e-6)?, Quantity::meters(2e-5)?),
            (Quantity::meters(1e-6)?, Quantity::meters(1e-6)?),
            (Quantity::meters(1e-12)?, l_max),
            probe_mass,
        )
    };
    let improved_design = optimize_f0(&lever_bounds(improved_separation)?)?;
    let improved = ProjectionScenario {
        label: "improved".to_string(),
        separation: improved_design.separation,
        force: improved_design.f0,
        detail: format!(
            "all levers open ({} sphere, R = {}, a = {}) with the enhanced separation \
             likewise grown five orders of magnitude",
            improved_design.material.name,
            format_quantity(improved_design.radius, "um", 3).unwrap_or_default(),
            format_quantity(improved_design.surface_gap, "um", 2).unwrap_or_default(),
        ),
    };

    let capped_design = optimize_f0(&lever_bounds(baseline_separation)?)?;
    let improved_at_baseline_separation = ProjectionScenario {
        label: "improved_at_100nm".to_string(),
        separation: capped_design.separation,
        force: capped_design.f0,
        detail: "all levers open but the separation capped at the baseline 100 nm; \
                 sits an order below the improved projection"
            .to_string(),
    };

    Ok(Projections {
        baseline,
        improved,
        improved_at_baseline_separation,
    })
}

/// The assembled feasibility report.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    pub source: CatSource,
    pub surface_gap: Quantity,
    pub entries: Vec<FeasibilityEntry>,
    pub design: Option<OptimizedDesign>,
    pub projections: Option<Projections>,
    pub quantum_appraisal: Option<QuantumProbeAppraisal>,
    pub notes: Vec<String>,
}

/// Assembles the report; the entry table is mandatory, everything else
/// optional. Always carries the probe self-energy caveat.
pub fn build_report(
    source: CatSource,
    surface_gap: Quantity,
    entries: Vec<FeasibilityEntry>,
    design: Option<OptimizedDesign>,
    projections: Option<Projections>,
    quantum_appraisal: Option<QuantumProbeAppraisal>,
) -> Result<FeasibilityReport, FeasibilityError> {
    if entries.is_empty() {
        return Err(FeasibilityError::EmptyEntries);
    }
    let notes = vec![
        "probe mass is not treated as an enhancement lever: for heavier probes the \
         gravitational self-energy of the probe can rival the source-probe interaction \
         energy; recorded as a caveat, not modeled"
            .to_string(),
    ];
    Ok(FeasibilityReport {
        source,
        surface_gap,
        entries,
        design,
        projections,
        quantum_appraisal,
        notes,
    })
}

fn force_n(q: Quantity) -> Value {
    json!(q.magnitude())
}

impl FeasibilityReport {
    /// Machine-readable form. Schema: `proposals` maps each proposal key to
    /// `{force_N, gap_orders, flags, notes[, acceleration_m_s2]}`.
    pub fn to_json(&self) -> Value {
        let mut proposals = Map::new();
        for entry in &self.entries {
            let mut object = Map::new();
            object.insert("force_N".into(), force_n(entry.f_grav));
            object.insert("gap_orders".into(), json!(entry.gap_orders));
            object.insert("flags".into(), json!(entry.constraint_flags));
            object.insert("notes".into(), json!(entry.notes));
            if let Some(acceleration) = entry.acceleration {
                object.insert("acceleration_m_s2".into(), json!(acceleration.magnitude()));
            }
            proposals.insert(entry.key.clone(), Value::Object(object));
        }

        let mut root = Map::new();
        root.insert(
            "source".into(),
            json!({
                "mass_kg": self.source.mass.magnitude(),
                "radius_m": self.source.radius.magnitude(),
                "separation_m": self.source.separation.magnitude(),
                "surface_gap_m": self.surface_gap.magnitude(),
            }),
        );
        root.insert("proposals".into(), Value::Object(proposals));

        if let Some(design) = &self.design {
            root.insert(
                "design".into(),
                json!({
                    "material": design.material.name,
                    "radius_m": design.radius.magnitude(),
                    "surface_gap_m": design.surface_gap.magnitude(),
                    "separation_m": design.separation.magnitude(),
                    "source_mass_kg": design.source_mass.magnitude(),
                    "f0_N": design.f0.magnitude(),
                    "checks": design.checks.iter().map(|c| json!({
                        "name": c.name,
                        "pass": c.pass,
                        "margin": c.margin,
                    })).collect::<Vec<_>>(),
                }),
            );
        }
        if let Some(projections) = &self.projections {
            let scenario = |s: &ProjectionScenario| {
                json!({
                    "separation_m": s.separation.magnitude(),
                    "force_N": s.force.magnitude(),
                    "detail": s.detail,
                })
            };
            root.insert(
                "projections".into(),
                json!({
                    "baseline": scenario(&projections.baseline),
                    "improved": scenario(&projections.improved),
                    "improved_at_100nm": scenario(&projections.improved_at_baseline_separation),
                }),
            );
        }
        if let Some(appraisal) = &self.quantum_appraisal {
            root.insert(
                "quantum_probe".into(),
                json!({
                    "probe_mass_kg": appraisal.probe_mass.magnitude(),
                    "force_N": appraisal.force.magnitude(),
                    "omega_rad_s": appraisal.omega.magnitude(),
                    "coupling_rad_s": appraisal.coupling.magnitude(),
                    "distinguishability": appraisal.distinguishability,
                    "classical_center_m": appraisal.classical_center.magnitude(),
                    "notes": appraisal.notes,
                }),
            );
        }
        root.insert("notes".into(), json!(self.notes));
        Value::Object(root)
    }

    /// Human-readable aligned table plus the optional sections.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let fq = |q: Quantity, unit: &str| format_quantity(q, unit, 2).unwrap_or_default();

        out.push_str("source configuration\n");
        out.push_str(&format!("  mass       = {}\n", fq(self.source.mass, "ng")));
        out.push_str(&format!("  radius     = {}\n", fq(self.source.radius, "um")));
        out.push_str(&format!(
            "  separation = {}\n",
            fq(self.source.separation, "pm")
        ));
        out.push_str(&format!("  gap        = {}\n\n", fq(self.surface_gap, "um")));

        out.push_str(&format!(
            "{:<5} {:<14} {:<12} {:<38}\n",
            "key", "force", "gap (orders)", "description"
        ));
        for entry in &self.entries {
            out.push_str(&format!(
                "{:<5} {:<14} {:<12.1} {:<38}\n",
                entry.key,
                fq(entry.f_grav, "N"),
                entry.gap_orders,
                entry.description
            ));
        }
        for entry in &self.entries {
            if let Some(acceleration) = entry.acceleration {
                out.push_str(&format!(
                    "{}: per-body acceleration {} (sensitivity is differential acceleration)\n",
                    entry.key,
                    fq(acceleration, "m/s^2"),
                ));
            }
            for flag in &entry.constraint_flags {
                out.push_str(&format!("{}: flag {}\n", entry.key, flag));
            }
            for note in &entry.notes {
                out.push_str(&format!("{}: note: {}\n", entry.key, note));
            }
        }

        if let Some(design) = &self.design {
            out.push_str("\noptimized design\n");
            out.push_str(&format!(
                "  material = {}  R = {}  a = {}  L = {}\n",
                design.material.name,
                fq(design.radius, "um"),
                fq(design.surface_gap, "um"),
                fq(design.separation, "pm"),
            ));
            out.push_str(&format!(
                "  M = {}  f0 = {}\n",
                fq(design.source_mass, "ng"),
                fq(design.f0, "N")
            ));
            for check in &design.checks {
                out.push_str(&format!(
                    "  check {:<38} {}  margin {:.3}\n",
                    check.name,
                    if check.pass { "pass" } else { "FAIL" },
                    check.margin
                ));
            }
            if let GuardStatus::Warning { message } = &design.casimir {
                out.push_str(&format!("  casimir warning: {message}\n"));
            }
        }

        if let Some(projections) = &self.projections {
            out.push_str("\nextended-separation projections\n");
            for scenario in [
                &projections.baseline,
                &projections.improved,
                &projections.improved_at_baseline_separation,
            ] {
                out.push_str(&format!(
                    "  {:<18} L = {:<10} f0 = {:<12}  {}\n",
                    scenario.label,
                    fq(scenario.separation, "nm"),
                    fq(scenario.force, "N"),
                    scenario.detail
                ));
            }
        }

        if let Some(appraisal) = &self.quantum_appraisal {
            out.push_str("\nquantum probe appraisal\n");
            out.push_str(&format!(
                "  m = {}  f0 = {}  omega = {}\n",
                fq(appraisal.probe_mass, "ng"),
                fq(appraisal.force, "N"),
                fq(appraisal.omega, "rad/s"),
            ));
            out.push_str(&format!(
                "  coupling g = {}  distinguishability = {:.3e} (dimensionless)  x0 = {}\n",
                fq(appraisal.coupling, "rad/s"),
                appraisal.distinguishability,
                fq(appraisal.classical_center, "m"),
            ));
            for note in &appraisal.notes {
                out.push_str(&format!("  note: {note}\n"));
            }
        }

        if !self.notes.is_empty() {
            out.push('\n');
            for note in &self.notes {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        out
    }
}
