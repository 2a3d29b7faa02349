//! Locale-independent number formatting in the style of C's `%.12g`.

use std::fmt::Write as _;

/// Significant digits used for every number the CLI writes.
pub const DIGITS: usize = 12;

/// Formats `v` like `printf("%.*g", digits, v)`.
pub fn g(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    // rounding first fixes the decimal exponent
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mut out = trim_fraction(mantissa).to_string();
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

/// `%.12g`.
pub fn num(v: f64) -> String {
    g(v, DIGITS)
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Joins formatted values with commas and terminates the row with LF.
pub fn csv_row(values: &[f64]) -> String {
    let mut row = values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",");
    row.push('\n');
    row
}
