//! Text output helpers shared by the CSV writers.

use nalgebra::DMatrix;

/// Significant digits used for every floating-point number we print.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` like C's `%.12g`: twelve significant digits, trailing zeros
/// trimmed, scientific notation for very large or very small magnitudes.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS as i32;
    // Round first, then read the exponent of the rounded value.
    let sci = format!("{:.*e}", (p - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= p {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (p - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Dense matrix as CSV with a header row; `row_label` names each row.
pub fn matrix_csv(header: &[String], values: &DMatrix<f64>, row_label: impl Fn(usize) -> String) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..values.nrows() {
        out.push_str(&row_label(i));
        for j in 0..values.ncols() {
            out.push(',');
            out.push_str(&format_float(values[(i, j)]));
        }
        out.push('\n');
    }
    out
}
