//! The unit-text grammar: parsing unit expressions and formatting
//! quantities back into them. See `UNITS.md` for the user-facing reference.

use super::{Dimension, Quantity, QuantityError};

struct UnitDef {
    symbol: &'static str,
    scale: f64,
    dim: Dimension,
    prefixable: bool,
}

const fn unit(symbol: &'static str, scale: f64, dim: Dimension, prefixable: bool) -> UnitDef {
    UnitDef {
        symbol,
        scale,
        dim,
        prefixable,
    }
}

/// SI base and derived symbols, plus the non-SI survivors the domain needs.
/// The gram is the prefix base for mass, so `kg` resolves as `k` + `g`.
const UNIT_TABLE: &[UnitDef] = &[
    unit("m", 1.0, Dimension::LENGTH, true),
    unit("g", 1e-3, Dimension::MASS, true),
    unit("s", 1.0, Dimension::TIME, true),
    unit("A", 1.0, Dimension::CURRENT, true),
    unit("K", 1.0, Dimension::TEMPERATURE, true),
    unit("mol", 1.0, Dimension::AMOUNT, true),
    unit("cd", 1.0, Dimension::LUMINOSITY, true),
    unit("Hz", 1.0, Dimension::RATE, true),
    unit("N", 1.0, Dimension::FORCE, true),
    unit("J", 1.0, Dimension::ENERGY, true),
    unit("W", 1.0, Dimension::POWER, true),
    unit("Pa", 1.0, Dimension::PRESSURE, true),
    unit("T", 1.0, Dimension::MAGNETIC_FLUX_DENSITY, true),
    // The radian is dimensionless; angular rates in rad/s carry dimension s⁻¹.
    unit("rad", 1.0, Dimension::NONE, true),
    unit("amu", 1.660_539_066_60e-27, Dimension::MASS, false),
];

/// Decimal prefixes y..Y. `da` is listed first so the only two-character
/// prefix wins the longest-match probe.
const PREFIXES: &[(&str, f64)] = &[
    ("da", 1e1),
    ("y", 1e-24),
    ("z", 1e-21),
    ("a", 1e-18),
    ("f", 1e-15),
    ("p", 1e-12),
    ("n", 1e-9),
    ("u", 1e-6),
    ("\u{3bc}", 1e-6), // μ
    ("m", 1e-3),
    ("c", 1e-2),
    ("d", 1e-1),
    ("h", 1e2),
    ("k", 1e3),
    ("M", 1e6),
    ("G", 1e9),
    ("T", 1e12),
    ("P", 1e15),
    ("E", 1e18),
    ("Z", 1e21),
    ("Y", 1e24),
];

/// Exact symbol match first, then prefix + prefixable symbol.
fn lookup_symbol(token: &str) -> Option<(f64, Dimension)> {
    if let Some(def) = UNIT_TABLE.iter().find(|def| def.symbol == token) {
        return Some((def.scale, def.dim));
    }
    for (prefix, prefix_scale) in PREFIXES {
        if let Some(rest) = token.strip_prefix(prefix) {
            if rest.is_empty() {
                continue;
            }
            if let Some(def) = UNIT_TABLE
                .iter()
                .find(|def| def.prefixable && def.symbol == rest)
            {
                return Some((prefix_scale * def.scale, def.dim));
            }
        }
    }
    None
}

/// Parses a unit expression such as `N`, `g/cm^3`, or `kg*m/s^2` into a
/// scale factor to canonical SI and a dimension. An empty (or all-blank)
/// expression is dimensionless with scale 1. `offset` is the byte position
/// of `text` inside the original input, used for error reporting.
pub fn parse_unit_expr(text: &str, offset: usize) -> Result<(f64, Dimension), QuantityError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut scale = 1.0f64;
    let mut dim = Dimension::NONE;
    let mut divide_next = false;
    let mut first = true;

    skip_spaces(bytes, &mut pos);
    while pos < bytes.len() {
        let term_start = pos;
        let symbol = scan_symbol(text, &mut pos);
        if symbol.is_empty() {
            return Err(QuantityError::UnknownUnit {
                token: snippet(text, term_start),
                offset: offset + term_start,
            });
        }
        let (sym_scale, sym_dim) =
            lookup_symbol(symbol).ok_or_else(|| QuantityError::UnknownUnit {
                token: symbol.to_string(),
                offset: offset + term_start,
            })?;

        let mut exponent = 1i32;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let exp_start = pos;
            exponent = scan_int(bytes, &mut pos).ok_or(QuantityError::MalformedNumber {
                offset: offset + exp_start,
            })?;
        }

        let factor = sym_scale.powi(exponent);
        let term_dim = sym_dim.powi(exponent);
        if divide_next {
            scale /= factor;
            dim = dim.divide(term_dim);
        } else {
            scale *= factor;
            dim = dim.multiply(term_dim);
        }
        first = false;

        skip_spaces(bytes, &mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'*' => divide_next = false,
            b'/' => divide_next = true,
            _ => {
                return Err(QuantityError::UnknownUnit {
                    token: snippet(text, pos),
                    offset: offset + pos,
                })
            }
        }
        pos += 1;
        skip_spaces(bytes, &mut pos);
        if pos >= bytes.len() {
            // Trailing operator with no term.
            return Err(QuantityError::UnknownUnit {
                token: String::new(),
                offset: offset + pos,
            });
        }
    }

    if first {
        // Nothing but blanks: dimensionless.
        return Ok((1.0, Dimension::NONE));
    }
    Ok((scale, dim))
}

/// Parses `<decimal><whitespace?><unit-expr>` into a canonical-SI quantity.
///
/// Accepted number forms: ordinary decimals with optional `e` exponent
/// (`4.0`, `1.2e-3`) and powers of ten written `10^14`. A missing unit
/// expression yields a dimensionless quantity. All parsing is
/// locale-independent; errors carry the byte offset of the fault.
pub fn parse_quantity(text: &str) -> Result<Quantity, QuantityError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    skip_spaces(bytes, &mut pos);

    let number_start = pos;
    let value = scan_number(text, &mut pos)?;
    if pos == number_start {
        return Err(QuantityError::MalformedNumber {
            offset: number_start,
        });
    }

    let (scale, dim) = parse_unit_expr(&text[pos..], pos)?;
    Quantity::new(value * scale, dim).map_err(|_| QuantityError::MalformedNumber {
        offset: number_start,
    })
}

/// Formats `q` in the given unit with `sig_digits` significant digits.
///
/// Values whose decimal exponent sits in `[-3, sig_digits - 1]` print in
/// plain positional form (`16.7`), everything else in scientific form
/// (`1.9e-30`); zero prints as `0e0`. Round-trips through
/// [`parse_quantity`] to within one unit in the last shown digit.
pub fn format_quantity(q: Quantity, unit: &str, sig_digits: usize) -> Result<String, QuantityError> {
    assert!(sig_digits >= 1, "sig_digits must be at least 1");
    let (scale, dim) = parse_unit_expr(unit, 0)?;
    if dim != q.dim() {
        return Err(QuantityError::DimensionMismatch {
            what: format!("unit `{unit}`"),
            expected: q.dim(),
            found: dim,
        });
    }
    let value = q.magnitude() / scale;
    let number = format_number(value, sig_digits);
    if unit.trim().is_empty() {
        Ok(number)
    } else {
        Ok(format!("{number} {unit}"))
    }
}

fn format_number(value: f64, sig_digits: usize) -> String {
    if value == 0.0 {
        return "0e0".to_string();
    }
    let exp10 = decimal_exponent(value);
    if exp10 >= -3 && exp10 < sig_digits as i32 {
        let decimals = (sig_digits as i32 - 1 - exp10).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.*e}", sig_digits - 1)
    }
}

/// Decimal exponent of the shortest round-trip representation, robust at
/// exact powers of ten where `log10().floor()` can land one off.
fn decimal_exponent(value: f64) -> i32 {
    let text = format!("{value:e}");
    text[text.find('e').expect("exponent marker") + 1..]
        .parse()
        .expect("exponent digits")
}

fn skip_spaces(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && (bytes[*pos] == b' ' || bytes[*pos] == b'\t') {
        *pos += 1;
    }
}

/// Longest run of alphabetic characters (covers μ) starting at `pos`.
fn scan_symbol<'a>(text: &'a str, pos: &mut usize) -> &'a str {
    let start = *pos;
    for (i, c) in text[start..].char_indices() {
        if !c.is_alphabetic() {
            *pos = start + i;
            return &text[start..*pos];
        }
    }
    *pos = text.len();
    &text[start..]
}

fn scan_int(bytes: &[u8], pos: &mut usize) -> Option<i32> {
    let start = *pos;
    if *pos < bytes.len() && (bytes[*pos] == b'+' || bytes[*pos] == b'-') {
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        *pos = start;
        return None;
    }
    std::str::from_utf8(&bytes[start..*pos]).ok()?.parse().ok()
}

fn scan_number(text: &str, pos: &mut usize) -> Result<f64, QuantityError> {
    let bytes = text.as_bytes();
    let start = *pos;
    let mut cursor = *pos;

    let mut sign = 1.0;
    if cursor < bytes.len() && (bytes[cursor] == b'+' || bytes[cursor] == b'-') {
        if bytes[cursor] == b'-' {
            sign = -1.0;
        }
        cursor += 1;
    }

    // Power-of-ten form: 10^<int>.
    if text[cursor..].starts_with("10^") {
        cursor += 3;
        let exp_offset = cursor;
        let exponent = scan_int(bytes, &mut cursor)
            .ok_or(QuantityError::MalformedNumber { offset: exp_offset })?;
        let value: f64 = format!("1e{exponent}")
            .parse()
            .map_err(|_| QuantityError::MalformedNumber { offset: start })?;
        if !value.is_finite() || value == 0.0 {
            return Err(QuantityError::MalformedNumber { offset: start });
        }
        *pos = cursor;
        return Ok(sign * value);
    }

    let digit_run = |cursor: &mut usize| {
        let s = *cursor;
        while *cursor < bytes.len() && bytes[*cursor].is_ascii_digit() {
            *cursor += 1;
        }
        *cursor > s
    };

    let int_digits = digit_run(&mut cursor);
    let mut frac_digits = false;
    if cursor < bytes.len() && bytes[cursor] == b'.' {
        cursor += 1;
        frac_digits = digit_run(&mut cursor);
    }
    if !int_digits && !frac_digits {
        return Err(QuantityError::MalformedNumber { offset: start });
    }
    if cursor < bytes.len() && (bytes[cursor] == b'e' || bytes[cursor] == b'E') {
        let mark = cursor;
        cursor += 1;
        if cursor < bytes.len() && (bytes[cursor] == b'+' || bytes[cursor] == b'-') {
            cursor += 1;
        }
        if !digit_run(&mut cursor) {
            // Not an exponent after all; let the unit parser see `e...`.
            cursor = mark;
        }
    }

    let value: f64 = text[start..cursor]
        .parse()
        .map_err(|_| QuantityError::MalformedNumber { offset: start })?;
    if !value.is_finite() {
        return Err(QuantityError::MalformedNumber { offset: start });
    }
    *pos = cursor;
    Ok(value)
}

fn snippet(text: &str, from: usize) -> String {
    text[from..].chars().take(12).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mag(text: &str) -> f64 {
        parse_quantity(text).unwrap().magnitude()
    }

    #[test]
    fn prefix_arithmetic() {
        assert_relative_eq!(mag("4.0 ng"), 4.0e-12, max_relative = 1e-15);
        assert_eq!(parse_quantity("4.0 ng").unwrap().dim(), Dimension::MASS);
        assert_relative_eq!(mag("1 km"), 1.0e3);
        assert_relative_eq!(mag("25 um"), 25.0e-6);
        assert_relative_eq!(mag("25 \u{3bc}m"), 25.0e-6);
        assert_relative_eq!(mag("14 zN"), 1.4e-20, max_relative = 1e-15);
        assert_relative_eq!(mag("42 yN"), 4.2e-23, max_relative = 1e-15);
    }

    #[test]
    fn composite_units() {
        // Density quoted in g/cm^3 lands on the canonical kg/m^3 scale.
        let rho = parse_quantity("16.7 g/cm^3").unwrap();
        assert_eq!(rho.dim(), Dimension::MASS_DENSITY);
        assert_relative_eq!(rho.magnitude(), 1.67e4, max_relative = 1e-12);

        let accel = parse_quantity("9.8 m/s^2").unwrap();
        assert_eq!(accel.dim(), Dimension::ACCELERATION);

        let force = parse_quantity("3 kg*m/s^2").unwrap();
        assert_eq!(force.dim(), Dimension::FORCE);

        let rate = parse_quantity("2.0 rad/s").unwrap();
        assert_eq!(rate.dim(), Dimension::RATE);
    }

    #[test]
    fn power_of_ten_form() {
        let m = parse_quantity("10^14 amu").unwrap();
        assert_eq!(m.dim(), Dimension::MASS);
        assert_relative_eq!(m.magnitude(), 1.6605390666e-13, max_relative = 1e-12);
        assert_relative_eq!(mag("10^-3 m"), 1e-3);
        assert_relative_eq!(mag("-10^2"), -100.0);
    }

    #[test]
    fn scientific_and_bare_numbers() {
        assert_relative_eq!(mag("1.2e-3 s"), 1.2e-3);
        assert_relative_eq!(mag("8.7"), 8.7);
        assert!(parse_quantity("8.7")
            .unwrap()
            .dim()
            .is_dimensionless());
    }

    #[test]
    fn exact_symbols_beat_prefix_splits() {
        // T is the tesla, not a bare tera prefix; mol is not milli-ol.
        assert_eq!(
            parse_quantity("1 T").unwrap().dim(),
            Dimension::MAGNETIC_FLUX_DENSITY
        );
        assert_eq!(parse_quantity("1 mol").unwrap().dim(), Dimension::AMOUNT);
        assert_eq!(
            parse_quantity("1 mT").unwrap().dim(),
            Dimension::MAGNETIC_FLUX_DENSITY
        );
        assert_relative_eq!(mag("1 mT"), 1e-3);
        // Case matters: Pa vs pA.
        assert_eq!(parse_quantity("1 Pa").unwrap().dim(), Dimension::PRESSURE);
        assert_eq!(parse_quantity("1 pA").unwrap().dim(), Dimension::CURRENT);
        assert_relative_eq!(mag("1 pA"), 1e-12);
    }

    #[test]
    fn error_offsets() {
        match parse_quantity("4.0 foos").unwrap_err() {
            QuantityError::UnknownUnit { token, offset } => {
                assert_eq!(token, "foos");
                assert_eq!(offset, 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
        match parse_quantity("abc").unwrap_err() {
            QuantityError::MalformedNumber { offset } => assert_eq!(offset, 0),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_quantity("1 m^x").unwrap_err() {
            QuantityError::MalformedNumber { offset } => assert_eq!(offset, 4),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_quantity("1e400 N").is_err());
        // amu refuses prefixes.
        assert!(parse_quantity("1 kamu").is_err());
    }

    #[test]
    fn formatting_examples() {
        let f = Quantity::newtons(1.9e-30).unwrap();
        assert_eq!(format_quantity(f, "N", 2).unwrap(), "1.9e-30 N");

        let rho = Quantity::kg_per_m3(1.67e4).unwrap();
        assert_eq!(format_quantity(rho, "g/cm^3", 3).unwrap(), "16.7 g/cm^3");

        let zero = Quantity::newtons(0.0).unwrap();
        assert_eq!(format_quantity(zero, "zN", 1).unwrap(), "0e0 zN");
    }

    #[test]
    fn formatting_rejects_wrong_unit() {
        let f = Quantity::newtons(1.0).unwrap();
        assert!(matches!(
            format_quantity(f, "kg", 3),
            Err(QuantityError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn format_parse_round_trip() {
        let values = [
            (1.8787e-30, "N"),
            (1.67e4, "g/cm^3"),
            (3.8066e-13, "ng"),
            (2.9e-14, "m"),
            (1.682816e5, "rad/s"),
            (-4.2e-23, "yN"),
            (0.083, "T"),
        ];
        for sig in 1..=9usize {
            for (si, unit) in values {
                let (scale, dim) = parse_unit_expr(unit, 0).unwrap();
                let q = Quantity::new(si, dim).unwrap();
                let text = format_quantity(q, unit, sig).unwrap();
                let back = parse_quantity(&text).unwrap();
                assert_eq!(back.dim(), dim);
                // One unit in the last shown digit, in the display scale.
                let shown = si / scale;
                let ulp = 10f64.powi(decimal_exponent(shown) - sig as i32 + 1);
                assert!(
                    (back.magnitude() / scale - shown).abs() <= 0.5 * ulp * (1.0 + 1e-12),
                    "round trip failed: {text} sig={sig}"
                );
            }
        }
    }
}
