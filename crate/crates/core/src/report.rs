//! Deterministic text output: 15-significant-digit number formatting and
//! CSV emission for sweep tables.
//!
//! Byte-identical output for identical inputs is part of the CLI contract,
//! so everything here is locale-free ('.' decimal separator, LF endings)
//! and avoids any formatting that could vary between runs.

use crate::radius::SweepRow;

/// Format with 15 significant digits, trimming trailing zeros; plain
/// decimal notation for moderate exponents, scientific otherwise (printf
/// `%.15g` semantics).
pub fn fmt_g15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{x:.14e}");
    let (mantissa, exponent) = formatted
        .split_once('e')
        .expect("exponential format always contains 'e'");
    let exp: i32 = exponent.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if negative { "-" } else { "" };

    // %g: plain decimal for -4 <= exp < 15, scientific otherwise.
    if (-4..15).contains(&exp) {
        let mut out = String::new();
        if exp >= 0 {
            let point = (exp as usize) + 1;
            if digits.len() <= point {
                out.push_str(digits);
                out.push_str(&"0".repeat(point - digits.len()));
            } else {
                out.push_str(&digits[..point]);
                out.push('.');
                out.push_str(&digits[point..]);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-exp - 1) as usize));
            out.push_str(digits);
        }
        format!("{sign}{out}")
    } else {
        let head = &digits[..1];
        let tail = &digits[1..];
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

/// Render a sweep table as CSV with header `p,r_max,R,rho,samples_tried`.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("p,r_max,R,rho,samples_tried\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_g15(row.p),
            fmt_g15(row.r_max),
            fmt_g15(row.big_r),
            fmt_g15(row.rho),
            row.samples_tried
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_decimals() {
        assert_eq!(fmt_g15(0.0), "0");
        assert_eq!(fmt_g15(1.0), "1");
        assert_eq!(fmt_g15(0.1), "0.1");
        assert_eq!(fmt_g15(-2.5), "-2.5");
        assert_eq!(fmt_g15(std::f64::consts::LN_2), "0.693147180559945");
        assert_eq!(fmt_g15(1e14), "100000000000000");
    }

    #[test]
    fn scientific_for_extreme_exponents() {
        assert_eq!(fmt_g15(1e15), "1e15");
        assert_eq!(fmt_g15(1.25e-7), "1.25e-7");
        assert_eq!(fmt_g15(-3e-9), "-3e-9");
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(fmt_g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_g15(2.0 / 3.0), "0.666666666666667");
    }

    #[test]
    fn csv_shape() {
        let rows = vec![SweepRow {
            p: 0.1,
            r_max: 0.00025,
            big_r: 0.01,
            rho: 0.5,
            samples_tried: 100,
        }];
        let csv = sweep_to_csv(&rows);
        assert_eq!(
            csv,
            "p,r_max,R,rho,samples_tried\n0.1,0.00025,0.01,0.5,100\n"
        );
    }
}
