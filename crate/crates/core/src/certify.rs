//! Empirical certification of contraction and neighborhood invariance for
//! complex perturbations of positive matrices, plus numerical oracles for
//! the two elementary inequalities the contraction argument rests on.
//!
//! The contraction theorem is non-constructive about its constants, so this
//! module certifies concrete `(r, delta)` choices by seeded Monte Carlo:
//! sample matrices from the entrywise ball `B_T(r)`, points from the
//! relative neighborhood `W_C°(delta)`, and measure contraction ratios and
//! witness success directly. All certifiers are deterministic for a fixed
//! seed and parallelize over per-sample seed streams.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{induced_map_complex, sample_unit_disk, ComplexMatrix, PositiveMatrix};
use crate::metrics::{delta_witness, hilbert_complex};
use crate::seeding::task_rng;
use crate::simplex::{ComplexSimplexPoint, RealSimplexPoint};

/// A sampled point of `W_C°(delta)` together with the real interior point
/// witnessing its membership.
#[derive(Debug, Clone)]
pub struct NeighborhoodSample {
    pub point: ComplexSimplexPoint,
    pub witness: RealSimplexPoint,
}

/// Sample a point of `W_C°(delta)`: draw `u` uniformly from the interior of
/// the real simplex, multiply each coordinate by `1 + delta * zeta_i` with
/// `zeta_i` uniform in the closed unit disk, renormalize to sum 1, and
/// re-verify the witness inequality against `u` (renormalization can break
/// it; rejected draws are redrawn).
pub fn sample_delta_neighborhood<R: Rng + ?Sized>(
    dim: usize,
    delta: f64,
    rng: &mut R,
) -> Result<NeighborhoodSample> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::argument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    for _ in 0..1000 {
        let u = RealSimplexPoint::sample_interior(dim, rng);
        let coords: Vec<Complex64> = u
            .coords()
            .iter()
            .map(|&ui| Complex64::new(ui, 0.0) * (Complex64::ONE + sample_unit_disk(rng) * delta))
            .collect();
        let sum: Complex64 = coords.iter().sum();
        if sum.norm() == 0.0 {
            continue;
        }
        let coords: Vec<Complex64> = coords.iter().map(|c| c / sum).collect();
        let ok = coords
            .iter()
            .zip(u.coords())
            .all(|(&vi, &ui)| (vi - Complex64::new(ui, 0.0)).norm() <= delta * ui);
        if !ok {
            continue;
        }
        return Ok(NeighborhoodSample {
            point: ComplexSimplexPoint::new(coords)?,
            witness: u,
        });
    }
    Err(Error::Numerical(
        "rejection sampling of the delta-neighborhood did not terminate".into(),
    ))
}

/// Ratio `d_H(f(x), f(y)) / d_H(x, y)` of the complex Hilbert metric under
/// the induced action of `t`.
///
/// Errors if `x = y`, if either point (or either image) leaves `W_C^+`, or
/// if a ratio crosses the branch cut — all reported as contraction-domain
/// violations.
pub fn empirical_contraction_ratio(
    t: &ComplexMatrix,
    x: &ComplexSimplexPoint,
    y: &ComplexSimplexPoint,
) -> Result<f64> {
    if x == y {
        return Err(Error::argument("x = y: contraction ratio undefined"));
    }
    let before = hilbert_complex(x, y)?;
    if before == 0.0 {
        return Err(Error::argument(
            "d_H(x, y) = 0: contraction ratio undefined",
        ));
    }
    let fx = induced_map_complex(t, x)?;
    let fy = induced_map_complex(t, y)?;
    let after = hilbert_complex(&fx, &fy)
        .map_err(|e| Error::domain(format!("image left the metric domain: {e}")))?;
    Ok(after / before)
}

/// Report of a Monte Carlo contraction certification at fixed `(r, delta)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContractionReport {
    pub samples: u64,
    /// Trials whose points or images left the metric domain.
    pub domain_failures: u64,
    /// Trials with ratio >= 1.
    pub expansions: u64,
    pub max_ratio: f64,
    /// Sample index attaining `max_ratio`.
    pub argmax_sample: u64,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.expansions == 0 && self.domain_failures == 0 && self.max_ratio < 1.0
    }
}

/// Monte Carlo certification that perturbations of `t` in `B_T(r)` contract
/// `W_C°(delta)`: samples `(T̂, x, y)` triples and reports the worst ratio.
pub fn certify_contraction(
    t: &PositiveMatrix,
    r: f64,
    delta: f64,
    samples: u64,
    seed: u64,
) -> Result<ContractionReport> {
    if samples == 0 {
        return Err(Error::argument("samples must be >= 1"));
    }
    let per_sample: Vec<(u64, Option<f64>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, k);
            let perturbed = ComplexMatrix::sample_in_ball(t, r, &mut rng);
            let x = sample_delta_neighborhood(t.dim(), delta, &mut rng);
            let y = sample_delta_neighborhood(t.dim(), delta, &mut rng);
            let ratio = match (x, y) {
                (Ok(x), Ok(y)) => empirical_contraction_ratio(&perturbed, &x.point, &y.point).ok(),
                _ => None,
            };
            (k, ratio)
        })
        .collect();

    let mut report = ContractionReport {
        samples,
        domain_failures: 0,
        expansions: 0,
        max_ratio: f64::NEG_INFINITY,
        argmax_sample: 0,
    };
    for (k, ratio) in per_sample {
        match ratio {
            None => report.domain_failures += 1,
            Some(rho) => {
                if rho >= 1.0 {
                    report.expansions += 1;
                }
                if rho > report.max_ratio {
                    report.max_ratio = rho;
                    report.argmax_sample = k;
                }
            }
        }
    }
    Ok(report)
}

/// Report of a neighborhood-invariance certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub samples: u64,
    /// Images for which the witness heuristic certified membership in
    /// `W_C°(delta)`.
    pub passes: u64,
    /// Images with no witness found (not a proof of non-membership: the
    /// witness check is sufficient, not necessary).
    pub failures: u64,
    /// Images that could not be computed (vanished normalizer).
    pub singular: u64,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.singular == 0
    }
}

/// Checks `f_T̂(W_C°(delta)) ⊂ W_C°(delta)` by sampling: maps sampled
/// neighborhood points and runs the witness heuristic on each image.
pub fn certify_invariance(
    t: &ComplexMatrix,
    delta: f64,
    samples: u64,
    seed: u64,
) -> Result<InvarianceReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::argument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if samples == 0 {
        return Err(Error::argument("samples must be >= 1"));
    }
    let outcomes: Vec<u8> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, k);
            let Ok(x) = sample_delta_neighborhood(t.dim(), delta, &mut rng) else {
                return 2u8;
            };
            let x = x.point;
            match induced_map_complex(t, &x) {
                Err(_) => 2u8,
                Ok(image) => match delta_witness(&image, delta) {
                    Ok(Some(_)) => 0u8,
                    _ => 1u8,
                },
            }
        })
        .collect();
    let mut report = InvarianceReport {
        samples,
        passes: 0,
        failures: 0,
        singular: 0,
    };
    for o in outcomes {
        match o {
            0 => report.passes += 1,
            1 => report.failures += 1,
            _ => report.singular += 1,
        }
    }
    Ok(report)
}

/// Report of a convex-hull maximum-modulus check ("the sup over the scaled
/// simplex is attained at a vertex").
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxOneReport {
    pub samples: u64,
    /// Largest observed `|sum t_i z_i + z| - max_i |t z_i + z|` (violations
    /// would be positive; convexity keeps this <= 0 up to rounding).
    pub max_violation: f64,
    pub violations: u64,
}

/// Tolerance below which a positive excess is attributed to rounding.
pub const LEMMA_TOLERANCE: f64 = 1e-12;

/// Checks that for nonnegative weights `t_1..t_n` summing to `t`,
/// `|t_1 z_1 + ... + t_n z_n + z| <= max_i |t z_i + z|`, over `samples`
/// random weight vectors (Dirichlet(1) scaled by `t`).
pub fn lemma_maxone_check(
    zs: &[Complex64],
    z: Complex64,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<MaxOneReport> {
    if zs.len() < 2 {
        return Err(Error::argument("need at least two points"));
    }
    if !(t > 0.0) {
        return Err(Error::argument("t must be positive"));
    }
    let vertex_max = zs
        .iter()
        .map(|&zi| (zi * t + z).norm())
        .fold(f64::NEG_INFINITY, f64::max);
    let excesses: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, k);
            let mut weights: Vec<f64> = (0..zs.len())
                .map(|_| -(1.0 - rng.random::<f64>()).ln())
                .collect();
            let sum: f64 = weights.iter().sum();
            for w in &mut weights {
                *w *= t / sum;
            }
            let combo: Complex64 = zs.iter().zip(&weights).map(|(&zi, &wi)| zi * wi).sum();
            (combo + z).norm() - vertex_max
        })
        .collect();
    let mut report = MaxOneReport {
        samples,
        max_violation: f64::NEG_INFINITY,
        violations: 0,
    };
    for e in excesses {
        report.max_violation = report.max_violation.max(e);
        if e > LEMMA_TOLERANCE {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Result of one mass-balance check for the weighted-vs-unweighted
/// normalized difference.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AaCheck {
    /// `sum of D_n over D_n >= 0` where
    /// `D_n = a_n x_n / sum(a x) - x_n / sum(x)`.
    pub positive_mass: f64,
    /// `sum of |D_n| over D_n < 0`; equals `positive_mass` up to rounding.
    pub negative_mass: f64,
    /// `(1 - sqrt(a/A)) / (1 + sqrt(a/A))` with `a = min a_n`,
    /// `A = max a_n`.
    pub bound: f64,
}

impl AaCheck {
    /// |positive mass - negative mass|; zero in exact arithmetic.
    pub fn balance_residual(&self) -> f64 {
        (self.positive_mass - self.negative_mass).abs()
    }

    pub fn within_bound(&self, slack: f64) -> bool {
        self.positive_mass <= self.bound + slack
    }
}

/// Computes the positive/negative mass of
/// `D_n = a_n x_n / sum(a x) - x_n / sum(x)` and the spread bound it must
/// respect.
pub fn lemma_aa_check(a: &[f64], x: &[f64]) -> Result<AaCheck> {
    if a.len() != x.len() || a.is_empty() {
        return Err(Error::argument("a and x must have equal positive length"));
    }
    if a.iter().chain(x).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::domain("all entries of a and x must be positive"));
    }
    let ax_sum: f64 = a.iter().zip(x).map(|(&ai, &xi)| ai * xi).sum();
    let x_sum: f64 = x.iter().sum();
    let mut positive = 0.0;
    let mut negative = 0.0;
    for (&ai, &xi) in a.iter().zip(x) {
        let d = ai * xi / ax_sum - xi / x_sum;
        if d >= 0.0 {
            positive += d;
        } else {
            negative += -d;
        }
    }
    let a_min = a.iter().cloned().fold(f64::INFINITY, f64::min);
    let a_max = a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s = (a_min / a_max).sqrt();
    Ok(AaCheck {
        positive_mass: positive,
        negative_mass: negative,
        bound: (1.0 - s) / (1.0 + s),
    })
}

/// Report of a randomized sweep of [`lemma_aa_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AaReport {
    pub samples: u64,
    pub max_balance_residual: f64,
    /// Largest observed `positive_mass - bound` (violations would be
    /// positive).
    pub max_excess: f64,
    pub violations: u64,
}

/// Randomized instances of [`lemma_aa_check`] with dimensions up to
/// `max_dim` and log-uniform entries.
pub fn lemma_aa_mc(max_dim: usize, samples: u64, seed: u64) -> Result<AaReport> {
    if max_dim < 2 {
        return Err(Error::argument("max_dim must be >= 2"));
    }
    let results: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, k);
            let dim = rng.random_range(2..=max_dim);
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
                (0..dim)
                    .map(|_| (rng.random_range(-3.0..3.0f64)).exp())
                    .collect()
            };
            let a = draw(&mut rng);
            let x = draw(&mut rng);
            let check = lemma_aa_check(&a, &x).expect("sampled entries are positive");
            (check.balance_residual(), check.positive_mass - check.bound)
        })
        .collect();
    let mut report = AaReport {
        samples,
        max_balance_residual: 0.0,
        max_excess: f64::NEG_INFINITY,
        violations: 0,
    };
    for (residual, excess) in results {
        report.max_balance_residual = report.max_balance_residual.max(residual);
        report.max_excess = report.max_excess.max(excess);
        if excess > LEMMA_TOLERANCE {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Randomized instances of [`lemma_maxone_check`] with fresh `(zs, z, t)`
/// per instance; `inner` weight draws each.
pub fn lemma_maxone_mc(samples: u64, inner: u64, seed: u64) -> Result<MaxOneReport> {
    let results: Vec<(f64, u64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, u64::MAX - k);
            let n = rng.random_range(2..=8usize);
            let zs: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                .collect();
            let z = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let t = rng.random_range(0.1..4.0);
            let r = lemma_maxone_check(&zs, z, t, inner, seed ^ k)
                .expect("sampled inputs are admissible");
            (r.max_violation, r.violations)
        })
        .collect();
    let mut report = MaxOneReport {
        samples: samples * inner,
        max_violation: f64::NEG_INFINITY,
        violations: 0,
    };
    for (violation, count) in results {
        report.max_violation = report.max_violation.max(violation);
        report.violations += count;
    }
    Ok(report)
}
