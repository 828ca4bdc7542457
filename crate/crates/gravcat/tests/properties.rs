//! Property tests for the crate-wide invariants: unit round-trips,
//! dimension safety, scaling laws, and estimator symmetries.

use gravcat::classical_probe::{f0, force_correlation};
use gravcat::feasibility::sensitivity_gap;
use gravcat::quantities::{format_quantity, parse_quantity, parse_unit_expr, Dimension, Quantity};

use proptest::prelude::*;

fn catalog_units() -> Vec<&'static str> {
    vec![
        "N", "zN", "aN", "yN", "kg", "ng", "g", "m", "um", "pm", "nm", "s", "ms", "Hz", "kHz",
        "rad/s", "T", "mT", "A", "g/cm^3", "kg/m^3", "m/s^2", "J", "K", "mK",
    ]
}

proptest! {
    /// parse ∘ format is the identity to within one unit in the last shown
    /// digit, for every catalog unit and precision.
    #[test]
    fn format_parse_round_trip(
        exponent in -32.0f64..6.0,
        mantissa in 1.0f64..9.999,
        negative in any::<bool>(),
        unit_index in 0usize..25,
        sig in 1usize..9,
    ) {
        let units = catalog_units();
        let unit = units[unit_index % units.len()];
        let (scale, dim) = parse_unit_expr(unit, 0).unwrap();
        let sign = if negative { -1.0 } else { 1.0 };
        let si = sign * mantissa * 10f64.powf(exponent);
        let quantity = Quantity::new(si, dim).unwrap();

        let text = format_quantity(quantity, unit, sig).unwrap();
        let back = parse_quantity(&text).unwrap();
        prop_assert_eq!(back.dim(), dim);

        let shown = si / scale;
        let shown_exponent = shown.abs().log10().floor();
        let last_digit = 10f64.powf(shown_exponent - sig as f64 + 1.0);
        prop_assert!(
            (back.magnitude() / scale - shown).abs() <= 0.5 * last_digit * (1.0 + 1e-9),
            "{} -> {} -> {}", si, text, back.magnitude()
        );
    }

    /// Addition never silently coerces dimensions.
    #[test]
    fn mixed_dimension_addition_rejected(
        mass in 1e-30f64..1e3,
        length in 1e-30f64..1e3,
    ) {
        let m = Quantity::kilograms(mass).unwrap();
        let l = Quantity::meters(length).unwrap();
        prop_assert!(m.try_add(l).is_err());
        prop_assert!(l.try_sub(m).is_err());
        prop_assert!(m.try_add(m).is_ok());
    }

    /// Dimension algebra is an abelian group under multiplication.
    #[test]
    fn dimension_group_laws(
        a in -3i8..4, b in -3i8..4, c in -3i8..4,
        d in -3i8..4, e in -3i8..4, f in -3i8..4,
    ) {
        let x = Dimension { mass: a, length: b, time: c, ..Dimension::NONE };
        let y = Dimension { mass: d, length: e, time: f, ..Dimension::NONE };
        prop_assert_eq!(x.multiply(y), y.multiply(x));
        prop_assert_eq!(x.multiply(x.invert()), Dimension::NONE);
        prop_assert_eq!(x.multiply(Dimension::NONE), x);
        prop_assert_eq!(x.multiply(y).divide(y), x);
    }

    /// The two-valued force is linear in each mass and the separation, and
    /// falls off as the inverse cube of the distance.
    #[test]
    fn f0_scaling_laws(
        source in 1e-15f64..1e-9,
        probe in 1e-15f64..1e-9,
        separation in 1e-13f64..1e-10,
        distance in 1e-6f64..1e-3,
        factor in 1.1f64..10.0,
    ) {
        let base = f0(
            Quantity::kilograms(source).unwrap(),
            Quantity::kilograms(probe).unwrap(),
            Quantity::meters(separation).unwrap(),
            Quantity::meters(distance).unwrap(),
        ).unwrap().magnitude();

        let scaled_mass = f0(
            Quantity::kilograms(source * factor).unwrap(),
            Quantity::kilograms(probe).unwrap(),
            Quantity::meters(separation).unwrap(),
            Quantity::meters(distance).unwrap(),
        ).unwrap().magnitude();
        prop_assert!((scaled_mass / base / factor - 1.0).abs() < 1e-12);

        let scaled_distance = f0(
            Quantity::kilograms(source).unwrap(),
            Quantity::kilograms(probe).unwrap(),
            Quantity::meters(separation).unwrap(),
            Quantity::meters(distance * factor).unwrap(),
        ).unwrap().magnitude();
        let slope = (scaled_distance / base).ln() / factor.ln();
        prop_assert!((slope + 3.0).abs() < 1e-9);
    }

    /// Equal-time correlation is exactly f0² whatever the decay constant.
    #[test]
    fn equal_time_correlation_invariant(
        f0_magnitude in 1e-32f64..1e-18,
        gamma in 0.0f64..1e4,
        t in 0.0f64..1e3,
    ) {
        let value = force_correlation(
            Quantity::seconds(t).unwrap(),
            Quantity::seconds(t).unwrap(),
            Quantity::newtons(f0_magnitude).unwrap(),
            Quantity::per_second(gamma).unwrap(),
        ).unwrap().magnitude();
        prop_assert!((value - f0_magnitude * f0_magnitude).abs()
            <= 1e-12 * f0_magnitude * f0_magnitude);
    }

    /// The sensitivity gap is invariant under common rescaling.
    #[test]
    fn gap_rescaling_invariance(
        force in 1e-40f64..1e-20,
        sensitivity in 1e-25f64..1e-15,
        factor in 1e-6f64..1e6,
    ) {
        let base = sensitivity_gap(
            Quantity::newtons(force).unwrap(),
            Quantity::newtons(sensitivity).unwrap(),
        ).unwrap();
        let rescaled = sensitivity_gap(
            Quantity::newtons(force * factor).unwrap(),
            Quantity::newtons(sensitivity * factor).unwrap(),
        ).unwrap();
        prop_assert!((base - rescaled).abs() < 1e-9);
    }
}
