//! Constrained grid search over the design levers.
//!
//! The objective (the density-form force) is monotone in every axis and the
//! feasible region mixes a discrete material choice with box bounds, so an
//! exhaustive log-spaced grid is exact at grid resolution and trivially
//! deterministic. Ties resolve lexicographically on grid indices, making
//! the argmax independent of evaluation order.
//!
//! Radius feasibility is checked at the cooling-floor trap frequency: a
//! radius fits under the critical-field bound for some coolable frequency
//! exactly when it fits at the floor.

use crate::quantities::{Dimension, Quantity};
use crate::trap_design::{
    default_cooling_floor, sphere_mass, trap_checks, CheckResult, Material, DEFAULT_SIZE_FACTOR,
};

use super::{
    casimir_guard_with, default_casimir_threshold, f0_density_form, FeasibilityError, GuardStatus,
};

/// Search space for [`optimize_f0`]: material set, radius / surface-gap /
/// separation ranges, and the fixed probe.
#[derive(Debug, Clone)]
pub struct DesignBounds {
    pub materials: Vec<Material>,
    pub radius: (Quantity, Quantity),
    pub surface_gap: (Quantity, Quantity),
    pub separation: (Quantity, Quantity),
    pub probe_mass: Quantity,
    /// Grid points per continuous axis (log-spaced), default 50.
    pub grid_points: usize,
    pub cooling_floor: Quantity,
    pub casimir_threshold: Quantity,
    pub size_factor: f64,
}

impl DesignBounds {
    pub fn new(
        materials: Vec<Material>,
        radius: (Quantity, Quantity),
        surface_gap: (Quantity, Quantity),
        separation: (Quantity, Quantity),
        probe_mass: Quantity,
    ) -> Result<Self, FeasibilityError> {
        if materials.is_empty() {
            return Err(FeasibilityError::BadBounds {
                message: "material set is empty".to_string(),
            });
        }
        for (what, (low, high)) in [
            ("radius R", radius),
            ("surface gap a", surface_gap),
            ("separation L", separation),
        ] {
            let low_m = low.expect_dim(Dimension::LENGTH, what)?;
            let high_m = high.expect_dim(Dimension::LENGTH, what)?;
            if low_m <= 0.0 {
                return Err(FeasibilityError::BadBounds {
                    message: format!("{what}: lower bound must be positive, got {low_m}"),
                });
            }
            if high_m < low_m {
                return Err(FeasibilityError::BadBounds {
                    message: format!("{what}: range [{low_m}, {high_m}] is empty"),
                });
            }
        }
        let probe = probe_mass.expect_dim(Dimension::MASS, "probe mass m")?;
        if probe <= 0.0 {
            return Err(FeasibilityError::NonPositive {
                what: "probe mass m",
                value: probe,
            });
        }
        Ok(Self {
            materials,
            radius,
            surface_gap,
            separation,
            probe_mass,
            grid_points: 50,
            cooling_floor: default_cooling_floor(),
            casimir_threshold: default_casimir_threshold(),
            size_factor: DEFAULT_SIZE_FACTOR,
        })
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points.max(1);
        self
    }

    pub fn with_cooling_floor(mut self, floor: Quantity) -> Self {
        self.cooling_floor = floor;
        self
    }

    pub fn with_casimir_threshold(mut self, threshold: Quantity) -> Self {
        self.casimir_threshold = threshold;
        self
    }
}

/// The argmax of the constrained search with its full constraint report.
#[derive(Debug, Clone)]
pub struct OptimizedDesign {
    pub material: Material,
    pub radius: Quantity,
    pub surface_gap: Quantity,
    pub separation: Quantity,
    pub source_mass: Quantity,
    pub f0: Quantity,
    /// Trap checks evaluated at the cooling-floor frequency.
    pub checks: Vec<CheckResult>,
    pub casimir: GuardStatus,
    /// (material, radius, gap, separation) grid indices of the winner.
    pub grid_index: (usize, usize, usize, usize),
}

fn log_axis(low: Quantity, high: Quantity, points: usize) -> Vec<f64> {
    let low = low.magnitude();
    let high = high.magnitude();
    if points <= 1 || low == high {
        return vec![low];
    }
    let ratio = high / low;
    (0..points)
        .map(|i| low * ratio.powf(i as f64 / (points - 1) as f64))
        .collect()
}

/// Exhaustively maximizes the density-form force over material × R × a × L
/// subject to the trap checks at the cooling floor, the Casimir guard, and
/// the separation bound. Deterministic; errors with `NoFeasiblePoint` when
/// every grid point violates a hard constraint.
pub fn optimize_f0(bounds: &DesignBounds) -> Result<OptimizedDesign, FeasibilityError> {
    let radii = log_axis(bounds.radius.0, bounds.radius.1, bounds.grid_points);
    let gaps = log_axis(bounds.surface_gap.0, bounds.surface_gap.1, bounds.grid_points);
    let separations = log_axis(bounds.separation.0, bounds.separation.1, bounds.grid_points);

    let mut best: Option<(f64, (usize, usize, usize, usize))> = None;

    for (mat_index, material) in bounds.materials.iter().enumerate() {
        for (r_index, &radius) in radii.iter().enumerate() {
            let radius_q = Quantity::meters(radius)?;
            let checks = trap_checks(
                material,
                radius_q,
                bounds.cooling_floor,
                bounds.cooling_floor,
                bounds.size_factor,
            )?;
            if !checks.iter().all(|c| c.pass) {
                continue;
            }
            for (a_index, &gap) in gaps.iter().enumerate() {
                let gap_q = Quantity::meters(gap)?;
                if !casimir_guard_with(gap_q, bounds.casimir_threshold)?.is_ok() {
                    continue;
                }
                for (l_index, &separation) in separations.iter().enumerate() {
                    let f = f0_density_form(
                        material.rho,
                        bounds.probe_mass,
                        Quantity::meters(separation)?,
                        gap_q,
                        radius_q,
                    )?
                    .magnitude();
                    let index = (mat_index, r_index, a_index, l_index);
                    let better = match &best {
                        None => true,
                        Some((best_f, best_index)) => {
                            f > *best_f || (f == *best_f && index < *best_index)
                        }
                    };
                    if better {
                        best = Some((f, index));
                    }
                }
            }
        }
    }

    let Some((f, (mat_index, r_index, a_index, l_index))) = best else {
        return Err(FeasibilityError::NoFeasiblePoint);
    };

    let material = bounds.materials[mat_index].clone();
    let radius = Quantity::meters(radii[r_index])?;
    let surface_gap = Quantity::meters(gaps[a_index])?;
    let separation = Quantity::meters(separations[l_index])?;
    let checks = trap_checks(
        &material,
        radius,
        bounds.cooling_floor,
        bounds.cooling_floor,
        bounds.size_factor,
    )?;
    let casimir = casimir_guard_with(surface_gap, bounds.casimir_threshold)?;
    let source_mass = sphere_mass(radius, material.rho)?;

    Ok(OptimizedDesign {
        material,
        radius,
        surface_gap,
        separation,
        source_mass,
        f0: Quantity::newtons(f)?,
        checks,
        casimir,
        grid_index: (mat_index, r_index, a_index, l_index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn meters(x: f64) -> Quantity {
        Quantity::meters(x).unwrap()
    }

    fn point_bounds(r: f64, a: f64, l: f64, materials: Vec<Material>) -> DesignBounds {
        DesignBounds::new(
            materials,
            (meters(r), meters(r)),
            (meters(a), meters(a)),
            (meters(l), meters(l)),
            Quantity::kilograms(4e-12).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degenerate_bounds_return_that_point() {
        let design = optimize_f0(&point_bounds(
            2e-6,
            1e-6,
            1e-12,
            vec![Material::lead()],
        ))
        .unwrap();
        assert_eq!(design.material.name, "Pb");
        assert_relative_eq!(design.radius.magnitude(), 2e-6);
        assert_relative_eq!(design.f0.magnitude(), 1.88e-30, max_relative = 0.01);
        assert!(design.checks.iter().all(|c| c.pass));
        assert!(design.casimir.is_ok());
    }

    #[test]
    fn enhanced_scenario_pinned() {
        // Ta, R = 5 μm, a = 1 μm, L = 10 pm, m = 4 ng: within 10% of the
        // 0.6e-28 N quote.
        let design = optimize_f0(&point_bounds(
            5e-6,
            1e-6,
            10e-12,
            vec![Material::tantalum()],
        ))
        .unwrap();
        assert_relative_eq!(design.f0.magnitude(), 0.6e-28, max_relative = 0.10);
        assert_relative_eq!(design.source_mass.magnitude(), 8.74e-12, max_relative = 0.01);
    }

    #[test]
    fn optimum_scales_linearly_with_separation_cap() {
        let mut bounds = point_bounds(2e-6, 1e-6, 1e-12, vec![Material::lead()]);
        bounds.separation = (meters(1e-13), meters(1e-11));
        bounds = bounds.with_grid_points(17);
        let narrow = optimize_f0(&bounds).unwrap();
        let mut widened = bounds.clone();
        widened.separation = (meters(1e-13), meters(2e-11));
        let wide = optimize_f0(&widened).unwrap();
        assert_relative_eq!(
            wide.f0.magnitude(),
            2.0 * narrow.f0.magnitude(),
            max_relative = 1e-12
        );
        assert_relative_eq!(narrow.separation.magnitude(), 1e-11, max_relative = 1e-12);
    }

    #[test]
    fn optimum_monotone_in_upper_bounds() {
        let base = DesignBounds::new(
            vec![Material::lead(), Material::tantalum()],
            (meters(1e-6), meters(4e-6)),
            (meters(1e-6), meters(4e-6)),
            (meters(1e-12), meters(1e-11)),
            Quantity::kilograms(4e-12).unwrap(),
        )
        .unwrap()
        .with_grid_points(9);
        let f_base = optimize_f0(&base).unwrap().f0.magnitude();
        for (r_hi, a_hi, l_hi) in [(8e-6, 4e-6, 1e-11), (8e-6, 8e-6, 2e-11)] {
            let mut widened = base.clone();
            widened.radius.1 = meters(r_hi);
            widened.surface_gap.1 = meters(a_hi);
            widened.separation.1 = meters(l_hi);
            let f_wide = optimize_f0(&widened).unwrap().f0.magnitude();
            assert!(f_wide >= f_base * (1.0 - 1e-12));
        }
    }

    #[test]
    fn prefers_dense_material_and_small_gap() {
        let bounds = DesignBounds::new(
            vec![Material::lead(), Material::tantalum()],
            (meters(1e-6), meters(6e-6)),
            (meters(1e-6), meters(1e-5)),
            (meters(1e-12), meters(1e-11)),
            Quantity::kilograms(4e-12).unwrap(),
        )
        .unwrap()
        .with_grid_points(13);
        let design = optimize_f0(&bounds).unwrap();
        assert_eq!(design.material.name, "Ta");
        assert_relative_eq!(design.surface_gap.magnitude(), 1e-6, max_relative = 1e-9);
        assert_relative_eq!(design.radius.magnitude(), 6e-6, max_relative = 1e-9);
        assert_relative_eq!(design.separation.magnitude(), 1e-11, max_relative = 1e-9);
    }

    #[test]
    fn critical_field_bound_limits_radius() {
        // R range reaching far beyond R_max at the cooling floor: the
        // winner stays below R_max(Pb, 2π×10 kHz) ≈ 10.7 μm.
        let bounds = DesignBounds::new(
            vec![Material::lead()],
            (meters(1e-6), meters(1e-4)),
            (meters(1e-6), meters(1e-6)),
            (meters(1e-12), meters(1e-12)),
            Quantity::kilograms(4e-12).unwrap(),
        )
        .unwrap()
        .with_grid_points(40);
        let design = optimize_f0(&bounds).unwrap();
        assert!(design.radius.magnitude() < 1.07e-5);
        assert!(design.radius.magnitude() > 8e-6);
        assert!(design.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn infeasible_everywhere_is_an_error() {
        // Radii all below the ×10 coherence-length floor.
        let bounds = DesignBounds::new(
            vec![Material::lead()],
            (meters(1e-8), meters(5e-8)),
            (meters(1e-6), meters(1e-6)),
            (meters(1e-12), meters(1e-12)),
            Quantity::kilograms(4e-12).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            optimize_f0(&bounds),
            Err(FeasibilityError::NoFeasiblePoint)
        ));
    }

    #[test]
    fn casimir_threshold_excludes_small_gaps() {
        let mut bounds = point_bounds(2e-6, 1e-6, 1e-12, vec![Material::lead()]);
        bounds.surface_gap = (meters(1e-7), meters(1e-6));
        bounds = bounds.with_grid_points(7);
        let design = optimize_f0(&bounds).unwrap();
        // Only the 1 μm endpoint survives the guard.
        assert_relative_eq!(design.surface_gap.magnitude(), 1e-6, max_relative = 1e-9);
    }
}
