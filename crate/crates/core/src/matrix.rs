//! Positive matrices, their complex perturbations, and the induced
//! projective action on the simplex.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{ComplexSimplexPoint, RealSimplexPoint};

/// A square real matrix in which every column is either strictly positive or
/// identically zero, with at least one strictly positive column.
///
/// Strictly positive matrices are the common case; the zero-column extension
/// covers the "zeroed columns" matrices produced by hiding states of a
/// Markov chain behind an output symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveMatrix {
    entries: Vec<Vec<f64>>,
    /// `true` for strictly positive columns, `false` for zero columns.
    column_mask: Vec<bool>,
}

impl PositiveMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::model("matrix must be nonempty"));
        }
        if entries.iter().any(|row| row.len() != dim) {
            return Err(Error::model("matrix must be square"));
        }
        if entries.iter().flatten().any(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::model("entries must be finite and nonnegative"));
        }
        let mut column_mask = Vec::with_capacity(dim);
        for j in 0..dim {
            let positive = entries.iter().filter(|row| row[j] > 0.0).count();
            match positive {
                0 => column_mask.push(false),
                n if n == dim => column_mask.push(true),
                _ => {
                    return Err(Error::model(format!(
                        "column {j} is neither strictly positive nor identically zero"
                    )))
                }
            }
        }
        if !column_mask.iter().any(|&m| m) {
            return Err(Error::model(
                "at least one column must be strictly positive",
            ));
        }
        Ok(PositiveMatrix {
            entries,
            column_mask,
        })
    }

    /// Random strictly positive matrix with entries uniform in `lo..hi`.
    pub fn sample<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let entries = (0..dim)
            .map(|_| (0..dim).map(|_| rng.random_range(lo..hi)).collect())
            .collect();
        PositiveMatrix::new(entries).expect("sampled entries are strictly positive")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Per-column positivity flags.
    pub fn column_mask(&self) -> &[bool] {
        &self.column_mask
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.column_mask.iter().all(|&m| m)
    }

    pub fn transpose(&self) -> Result<Self> {
        let dim = self.dim();
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| self.entries[j][i]).collect())
            .collect();
        PositiveMatrix::new(entries)
    }

    /// View as a complex matrix (the unperturbed center of a matrix ball).
    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|&e| Complex64::new(e, 0.0)).collect())
                .collect(),
        }
    }
}

/// A square complex matrix, typically a perturbation of a [`PositiveMatrix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    entries: Vec<Vec<Complex64>>,
}

impl ComplexMatrix {
    pub fn new(entries: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::model("matrix must be nonempty"));
        }
        if entries.iter().any(|row| row.len() != dim) {
            return Err(Error::model("matrix must be square"));
        }
        if entries
            .iter()
            .flatten()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::model("entries must be finite"));
        }
        Ok(ComplexMatrix { entries })
    }

    /// Entrywise perturbation of `center` by complex offsets of modulus at
    /// most `radius` (uniform in the closed disk).
    pub fn sample_in_ball<R: Rng + ?Sized>(
        center: &PositiveMatrix,
        radius: f64,
        rng: &mut R,
    ) -> Self {
        let entries = center
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| {
                        let offset = sample_unit_disk(rng) * radius;
                        Complex64::new(e, 0.0) + offset
                    })
                    .collect()
            })
            .collect();
        ComplexMatrix { entries }
    }

    /// Membership check for the entrywise ball `B_T(r)`:
    /// `|t_ij - center_ij| <= r` for all `i, j`.
    pub fn in_ball(&self, center: &PositiveMatrix, radius: f64) -> bool {
        self.dim() == center.dim()
            && self
                .entries
                .iter()
                .zip(center.entries())
                .all(|(row, crow)| {
                    row.iter()
                        .zip(crow)
                        .all(|(&e, &c)| (e - Complex64::new(c, 0.0)).norm() <= radius)
                })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }
}

/// Uniform sample from the closed complex unit disk.
pub(crate) fn sample_unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Row-vector action of a positive matrix on the simplex:
/// `w -> wT / (wT 1)`.
pub fn induced_map(t: &PositiveMatrix, w: &RealSimplexPoint) -> Result<RealSimplexPoint> {
    if t.dim() != w.dim() {
        return Err(Error::domain("dimension mismatch"));
    }
    let dim = t.dim();
    let mut image = vec![0.0; dim];
    for j in 0..dim {
        image[j] = (0..dim).map(|i| w.coords()[i] * t.get(i, j)).sum();
    }
    let norm: f64 = image.iter().sum();
    if norm <= 0.0 {
        return Err(Error::singularity("normalizer wT·1 vanished"));
    }
    for x in &mut image {
        *x /= norm;
    }
    RealSimplexPoint::new(image)
}

/// Complex version of [`induced_map`]: `w -> wT / (wT 1)` for a complex
/// matrix acting on a complex simplex point.
pub fn induced_map_complex(
    t: &ComplexMatrix,
    w: &ComplexSimplexPoint,
) -> Result<ComplexSimplexPoint> {
    if t.dim() != w.dim() {
        return Err(Error::domain("dimension mismatch"));
    }
    let dim = t.dim();
    let mut image = vec![Complex64::ZERO; dim];
    for j in 0..dim {
        image[j] = (0..dim).map(|i| w.coords()[i] * t.get(i, j)).sum();
    }
    let norm: Complex64 = image.iter().sum();
    if norm.norm() < 1e-300 {
        return Err(Error::singularity(
            "normalizer wT·1 vanished: the perturbation left the admissible region",
        ));
    }
    for x in &mut image {
        *x /= norm;
    }
    // The image sums to 1 by construction; bypass the renormalization check.
    ComplexSimplexPoint::new(image)
}

/// The projectivity constant `phi(T) = min t_ik t_jl / (t_jk t_il)` over all
/// index tuples, with `k, l` restricted to strictly positive columns.
pub fn birkhoff_phi(t: &PositiveMatrix) -> Result<f64> {
    let dim = t.dim();
    let cols: Vec<usize> = (0..dim).filter(|&j| t.column_mask()[j]).collect();
    if cols.is_empty() {
        return Err(Error::domain("no strictly positive column"));
    }
    let mut phi = f64::INFINITY;
    for i in 0..dim {
        for j in 0..dim {
            for &k in &cols {
                for &l in &cols {
                    let ratio = (t.get(i, k) * t.get(j, l)) / (t.get(j, k) * t.get(i, l));
                    phi = phi.min(ratio);
                }
            }
        }
    }
    Ok(phi)
}

/// Birkhoff contraction coefficient
/// `tau(T) = (1 - sqrt(phi)) / (1 + sqrt(phi))`, the optimal Lipschitz
/// constant of the induced map under the real Hilbert metric.
pub fn birkhoff_tau(t: &PositiveMatrix) -> Result<f64> {
    let phi = birkhoff_phi(t)?;
    let s = phi.sqrt();
    Ok((1.0 - s) / (1.0 + s))
}
