//! Simplex domains: the real probability simplex, its complex extension, and
//! the right half-plane that parameterizes the two-dimensional case.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the "coordinates sum to 1" invariant after construction.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Constructors renormalize inputs whose coordinate sum deviates from 1 by at
/// most this much, and reject anything worse. Tolerating a small deviation
/// absorbs accumulated float error without masking genuinely bad inputs.
pub const RENORM_TOLERANCE: f64 = 1e-9;

/// Validation tolerances for simplex constructors, overridable by callers
/// that need looser or tighter input handling.
#[derive(Debug, Clone, Copy)]
pub struct SimplexConfig {
    /// Maximum |sum - 1| accepted before renormalizing.
    pub renorm_tolerance: f64,
}

impl Default for SimplexConfig {
    fn default() -> Self {
        SimplexConfig {
            renorm_tolerance: RENORM_TOLERANCE,
        }
    }
}

/// A point of the standard real simplex: nonnegative coordinates summing
/// to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealSimplexPoint {
    coords: Vec<f64>,
}

impl RealSimplexPoint {
    /// Build a simplex point, renormalizing sums within [`RENORM_TOLERANCE`].
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::with_config(coords, &SimplexConfig::default())
    }

    /// As [`new`](Self::new) with explicit tolerances.
    pub fn with_config(mut coords: Vec<f64>, cfg: &SimplexConfig) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("simplex point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("simplex coordinates must be finite"));
        }
        if let Some(c) = coords.iter().find(|&&c| c < 0.0) {
            return Err(Error::domain(format!("negative coordinate {c}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > cfg.renorm_tolerance {
            return Err(Error::domain(format!(
                "coordinates sum to {sum}, outside the renormalization tolerance"
            )));
        }
        for c in &mut coords {
            *c /= sum;
        }
        Ok(RealSimplexPoint { coords })
    }

    /// Build an interior point (all coordinates strictly positive).
    pub fn interior(coords: Vec<f64>) -> Result<Self> {
        let p = Self::new(coords)?;
        p.require_interior()?;
        Ok(p)
    }

    /// Uniform sample from the interior of the simplex (symmetric
    /// Dirichlet(1), via normalized exponentials).
    pub fn sample_interior<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let mut coords: Vec<f64> = (0..dim)
                .map(|_| -(1.0 - rng.random::<f64>()).ln())
                .collect();
            let sum: f64 = coords.iter().sum();
            if sum <= 0.0 {
                continue;
            }
            for c in &mut coords {
                *c /= sum;
            }
            if coords.iter().all(|&c| c > 0.0) {
                return RealSimplexPoint { coords };
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// True if every coordinate is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|&c| c > 0.0)
    }

    pub(crate) fn require_interior(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::domain("point is not interior: some coordinate <= 0"))
        }
    }

    /// View as a complex simplex point.
    pub fn to_complex(&self) -> ComplexSimplexPoint {
        ComplexSimplexPoint {
            coords: self
                .coords
                .iter()
                .map(|&c| Complex64::new(c, 0.0))
                .collect(),
        }
    }
}

/// A point of the complex simplex: complex coordinates summing to 1.
///
/// Metric evaluation additionally requires membership in `W_C^+`, the subset
/// whose coordinates all have strictly positive real part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSimplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexSimplexPoint {
    /// Build a complex simplex point, renormalizing sums within
    /// [`RENORM_TOLERANCE`] of 1.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        Self::with_config(coords, &SimplexConfig::default())
    }

    /// As [`new`](Self::new) with explicit tolerances.
    pub fn with_config(mut coords: Vec<Complex64>, cfg: &SimplexConfig) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("simplex point needs at least one coordinate"));
        }
        if coords
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::domain("simplex coordinates must be finite"));
        }
        let sum: Complex64 = coords.iter().sum();
        if (sum - Complex64::ONE).norm() > cfg.renorm_tolerance {
            return Err(Error::domain(format!(
                "coordinates sum to {sum}, outside the renormalization tolerance"
            )));
        }
        for c in &mut coords {
            *c /= sum;
        }
        Ok(ComplexSimplexPoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// True if every coordinate has strictly positive real part (membership
    /// in `W_C^+`).
    pub fn in_positive_half(&self) -> bool {
        self.coords.iter().all(|c| c.re > 0.0)
    }

    pub(crate) fn require_positive_half(&self, what: &str) -> Result<()> {
        if self.in_positive_half() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{what} is outside W_C^+: some coordinate has nonpositive real part"
            )))
        }
    }
}

/// A point of the open right half-plane `H` (`Re z > 0`), the ratio
/// coordinate `x/y` of a two-dimensional simplex point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    z: Complex64,
}

impl HalfPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain("half-plane point must be finite"));
        }
        if z.re <= 0.0 {
            return Err(Error::domain(format!(
                "half-plane point must have positive real part, got {z}"
            )));
        }
        Ok(HalfPlanePoint { z })
    }

    pub fn value(&self) -> Complex64 {
        self.z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn real_point_renormalizes_small_drift() {
        let p = RealSimplexPoint::new(vec![0.5 + 3e-10, 0.5]).unwrap();
        let sum: f64 = p.coords().iter().sum();
        assert!((sum - 1.0).abs() <= SUM_TOLERANCE);
    }

    #[test]
    fn real_point_rejects_large_drift() {
        assert!(RealSimplexPoint::new(vec![0.6, 0.5]).is_err());
    }

    #[test]
    fn real_point_rejects_negative() {
        assert!(RealSimplexPoint::new(vec![1.2, -0.2]).is_err());
    }

    #[test]
    fn interior_rejects_zero_coordinate() {
        assert!(RealSimplexPoint::interior(vec![1.0, 0.0]).is_err());
        assert!(RealSimplexPoint::interior(vec![0.3, 0.7]).is_ok());
    }

    #[test]
    fn complex_point_membership() {
        let p = ComplexSimplexPoint::new(vec![Complex64::new(0.5, 0.1), Complex64::new(0.5, -0.1)])
            .unwrap();
        assert!(p.in_positive_half());
        let q = ComplexSimplexPoint::new(vec![Complex64::new(-0.2, 0.0), Complex64::new(1.2, 0.0)])
            .unwrap();
        assert!(!q.in_positive_half());
    }

    #[test]
    fn half_plane_rejects_imaginary_axis() {
        assert!(HalfPlanePoint::new(Complex64::new(0.0, 1.0)).is_err());
        assert!(HalfPlanePoint::new(Complex64::new(1e-12, 1.0)).is_ok());
    }

    #[test]
    fn dirichlet_sample_is_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dim in [2, 3, 5] {
            let p = RealSimplexPoint::sample_interior(dim, &mut rng);
            assert!(p.is_interior());
            let sum: f64 = p.coords().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }
}
