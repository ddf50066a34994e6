//! Inline argument parsing: complex scalars, coordinate lists, matrices,
//! and point files.

use blackwell::simplex::{ComplexSimplexPoint, HalfPlanePoint, RealSimplexPoint, SimplexConfig};
use blackwell::{ComplexMatrix, PositiveMatrix};
use num_complex::Complex64;
use serde::Deserialize;

/// Parse a complex scalar written as `a`, `bi`, `a+bi` or `a-bi`
/// (exponents allowed, no whitespace).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Find the sign separating the real part from the imaginary part:
        // a '+'/'-' that is neither leading nor part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_text, im_text) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let re: f64 = re_text
            .parse()
            .map_err(|_| format!("bad real part in '{s}'"))?;
        let im: f64 = match im_text {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse()
                .map_err(|_| format!("bad imaginary part in '{s}'"))?,
        };
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(|_| format!("bad number '{s}'"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Parse `re`, `re,im`, or an `a+bi` form into a complex scalar.
pub fn parse_point_arg(text: &str) -> Result<Complex64, String> {
    if text.contains(['i', 'I']) {
        return parse_complex(text);
    }
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(
            re.trim()
                .parse()
                .map_err(|_| format!("bad number '{re}'"))?,
            0.0,
        )),
        [re, im] => Ok(Complex64::new(
            re.trim()
                .parse()
                .map_err(|_| format!("bad real part '{re}'"))?,
            im.trim()
                .parse()
                .map_err(|_| format!("bad imaginary part '{im}'"))?,
        )),
        _ => Err(format!("expected 're' or 're,im', got '{text}'")),
    }
}

pub fn parse_half_plane(text: &str) -> Result<HalfPlanePoint, String> {
    HalfPlanePoint::new(parse_point_arg(text)?).map_err(|e| e.to_string())
}

/// Comma-separated complex coordinates.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(|f| parse_complex(f.trim())).collect()
}

/// Comma-separated real coordinates.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{f}'"))
        })
        .collect()
}

/// Row-major square matrix from a comma-separated entry list.
pub fn parse_complex_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let entries = parse_complex_list(text)?;
    let dim = (entries.len() as f64).sqrt() as usize;
    if dim * dim != entries.len() || dim == 0 {
        return Err(format!(
            "{} entries do not form a square matrix",
            entries.len()
        ));
    }
    let rows = entries.chunks(dim).map(|c| c.to_vec()).collect();
    ComplexMatrix::new(rows).map_err(|e| e.to_string())
}

/// Row-major square real matrix, rejecting complex entries.
pub fn parse_positive_matrix(text: &str) -> Result<PositiveMatrix, String> {
    let entries = parse_complex_list(text)?;
    if entries.iter().any(|e| e.im != 0.0) {
        return Err("matrix must be real".into());
    }
    let dim = (entries.len() as f64).sqrt() as usize;
    if dim * dim != entries.len() || dim == 0 {
        return Err(format!(
            "{} entries do not form a square matrix",
            entries.len()
        ));
    }
    let rows = entries
        .chunks(dim)
        .map(|c| c.iter().map(|e| e.re).collect())
        .collect();
    PositiveMatrix::new(rows).map_err(|e| e.to_string())
}

/// One coordinate in a points file: a real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl CoordSpec {
    fn value(self) -> Complex64 {
        match self {
            CoordSpec::Real(re) => Complex64::new(re, 0.0),
            CoordSpec::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// A `{"v": [...], "w": [...]}` points file.
#[derive(Debug, Deserialize)]
pub struct PointsFile {
    pub v: Vec<CoordSpec>,
    pub w: Vec<CoordSpec>,
}

impl PointsFile {
    pub fn v_complex(&self, cfg: &SimplexConfig) -> Result<ComplexSimplexPoint, String> {
        ComplexSimplexPoint::with_config(self.v.iter().map(|c| c.value()).collect(), cfg)
            .map_err(|e| e.to_string())
    }

    pub fn w_complex(&self, cfg: &SimplexConfig) -> Result<ComplexSimplexPoint, String> {
        ComplexSimplexPoint::with_config(self.w.iter().map(|c| c.value()).collect(), cfg)
            .map_err(|e| e.to_string())
    }
}

/// Build a real simplex point from complex coordinates that must be real.
pub fn require_real_point(
    coords: &[Complex64],
    cfg: &SimplexConfig,
) -> Result<RealSimplexPoint, String> {
    if coords.iter().any(|c| c.im != 0.0) {
        return Err("point must be real".into());
    }
    RealSimplexPoint::with_config(coords.iter().map(|c| c.re).collect(), cfg)
        .map_err(|e| e.to_string())
}

/// Sweep range `start:end:step` (inclusive) or a comma list of values.
pub fn parse_sweep_range(text: &str) -> Result<Vec<f64>, String> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, end, step] = parts.as_slice() else {
            return Err(format!("expected 'start:end:step', got '{text}'"));
        };
        let start: f64 = start.parse().map_err(|_| "bad range start".to_string())?;
        let end: f64 = end.parse().map_err(|_| "bad range end".to_string())?;
        let step: f64 = step.parse().map_err(|_| "bad range step".to_string())?;
        if !(step > 0.0) || end < start {
            return Err("range needs end >= start and step > 0".into());
        }
        let mut values = Vec::new();
        let count = ((end - start) / step).round() as usize;
        for k in 0..=count {
            let v = start + step * k as f64;
            if v <= end + step * 1e-9 {
                values.push(v);
            }
        }
        Ok(values)
    } else {
        parse_real_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("1e-3+2.5e-2i").unwrap(),
            Complex64::new(1e-3, 2.5e-2)
        );
        assert_eq!(
            parse_complex("0.779079247486-0.007790792474i").unwrap(),
            Complex64::new(0.779079247486, -0.007790792474)
        );
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn point_arg_forms() {
        assert_eq!(
            parse_point_arg("0.9,-0.009").unwrap(),
            Complex64::new(0.9, -0.009)
        );
        assert_eq!(parse_point_arg("2.5").unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_point_arg("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert!(parse_point_arg("1,2,3").is_err());
    }

    #[test]
    fn matrix_parsing() {
        let m = parse_positive_matrix("2,1,1,2").unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert!(parse_positive_matrix("2,1,1").is_err());
        assert!(parse_positive_matrix("2,1,1,2i").is_err());
        let c = parse_complex_matrix("1,2i,3,4").unwrap();
        assert_eq!(c.get(0, 1), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn sweep_ranges() {
        let r = parse_sweep_range("0.1:0.9:0.2").unwrap();
        assert_eq!(r.len(), 5);
        assert!((r[4] - 0.9).abs() < 1e-12);
        let l = parse_sweep_range("0.25,0.5").unwrap();
        assert_eq!(l, vec![0.25, 0.5]);
        assert!(parse_sweep_range("0.9:0.1:0.1").is_err());
    }
}
