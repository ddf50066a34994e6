//! Certified lower bounds on the radius of analyticity of the entropy rate
//! in the channel parameter.
//!
//! For a binary chain `pi` with `det(pi) != 0` observed at crossover
//! `epsilon0 < 1/2`, the scalar filter maps both send `[0, inf]` into the
//! interval `S = [S1, S2]`. Three closed-form conditions on a triple
//! `(r, R, rho)` — contraction of the filter maps on the complex
//! `R`-neighborhood of `S`, smallness of the channel perturbation over
//! `|epsilon - epsilon0| <= r`, and boundedness of the conditional sums —
//! together certify that the entropy rate is analytic on
//! `|epsilon - epsilon0| < r`. [`max_radius_search`] hunts for the largest
//! certifiable `r` by seeded randomized search plus bisection refinement;
//! [`verify_conditions_sampled`] cross-checks a certified tuple against the
//! sampled, un-relaxed conditions it is supposed to dominate.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bsc::{bsc_conditionals_complex, bsc_step_complex, BscHmm};
use crate::error::{Error, Result};
use crate::matrix::sample_unit_disk;
use crate::seeding::task_rng;

/// An analyticity-radius problem: the chain, and the channel parameter the
/// expansion is centered at.
///
/// `det(pi) != 0` is required; `det = 0` (the symmetric `p = 1/2` chain)
/// makes the bound honestly degenerate and is rejected. Negative
/// determinants are admitted — the filter maps are then decreasing, which
/// only flips the orientation of the invariant interval; the contraction
/// bound depends on `|det|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RadiusProblem {
    pi: [[f64; 2]; 2],
    epsilon0: f64,
}

impl RadiusProblem {
    /// `pi` strictly positive and row-stochastic with `det != 0`;
    /// `0 < epsilon0 < 1/2`.
    pub fn new(pi: [[f64; 2]; 2], epsilon0: f64) -> Result<Self> {
        if !(epsilon0 > 0.0 && epsilon0 < 0.5) {
            return Err(Error::model(format!(
                "epsilon0 must lie in (0, 1/2), got {epsilon0}"
            )));
        }
        for (i, row) in pi.iter().enumerate() {
            if row.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
                return Err(Error::model(format!("pi row {i} has a nonpositive entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > crate::hmm::STOCHASTIC_TOLERANCE {
                return Err(Error::model(format!("pi row {i} sums to {sum}, not 1")));
            }
        }
        let det = pi[0][0] * pi[1][1] - pi[0][1] * pi[1][0];
        if det == 0.0 {
            return Err(Error::model(
                "det(pi) = 0: the filter forgets instantly and the radius bound degenerates",
            ));
        }
        Ok(RadiusProblem { pi, epsilon0 })
    }

    pub fn symmetric(p: f64, epsilon0: f64) -> Result<Self> {
        Self::new([[p, 1.0 - p], [1.0 - p, p]], epsilon0)
    }

    /// The chain under the standing `det > 0` assumption, when it holds.
    pub fn model(&self) -> Result<BscHmm> {
        BscHmm::new(self.pi, self.epsilon0)
    }

    pub fn pi(&self) -> &[[f64; 2]; 2] {
        &self.pi
    }

    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    pub fn determinant(&self) -> f64 {
        self.pi[0][0] * self.pi[1][1] - self.pi[0][1] * self.pi[1][0]
    }

    /// Invariant interval of the filter at `epsilon0`: the convex hull of
    /// the images of `[0, inf]` under both filter maps. For `det > 0` this
    /// is `[eps0 pi10 / ((1-eps0) pi11), (1-eps0) pi00 / (eps0 pi01)]`; a
    /// negative determinant swaps which endpoint each ratio supplies.
    pub fn s_interval(&self) -> SInterval {
        let pi = self.pi;
        let e = self.epsilon0;
        let at_zero = pi[1][0] / pi[1][1];
        let at_infinity = pi[0][0] / pi[0][1];
        let lo = at_zero.min(at_infinity);
        let hi = at_zero.max(at_infinity);
        SInterval {
            s1: e / (1.0 - e) * lo,
            s2: (1.0 - e) / e * hi,
        }
    }
}

/// The interval `[S1, S2]` that both filter maps send `[0, inf]` into:
/// `S1 = eps0 pi10 / ((1-eps0) pi11)`, `S2 = (1-eps0) pi00 / (eps0 pi01)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SInterval {
    pub s1: f64,
    pub s2: f64,
}

/// A triple `(r, R, rho)` to be certified: `r` is the claimed radius in the
/// channel parameter, `R` the Euclidean neighborhood radius around `S`, and
/// `rho` the contraction bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleTuple {
    pub r: f64,
    pub big_r: f64,
    pub rho: f64,
}

/// Condition 1: the mean-value bound for the contraction factor of the
/// filter maps on the `R`-neighborhood of `S`,
/// `0 < |det(pi)| / (pi01 pi00 (S1-R) + pi01 pi10 + pi11 pi00 + pi11 pi10/(S2+R)) <= rho`.
pub fn cond1(p: &RadiusProblem, big_r: f64, rho: f64) -> Result<bool> {
    Ok(cond1_lhs(p, big_r)? <= rho)
}

/// The left-hand side of condition 1 (also the smallest admissible `rho`
/// for a given `R`).
pub fn cond1_lhs(p: &RadiusProblem, big_r: f64) -> Result<f64> {
    let s = p.s_interval();
    if !(big_r >= 0.0) || big_r >= s.s1 {
        return Err(Error::argument(format!(
            "need 0 <= R < S1 = {}, got R = {big_r}",
            s.s1
        )));
    }
    let pi = p.pi();
    let denom = pi[0][1] * pi[0][0] * (s.s1 - big_r)
        + pi[0][1] * pi[1][0]
        + pi[1][1] * pi[0][0]
        + pi[1][1] * pi[1][0] / (s.s2 + big_r);
    Ok(p.determinant().abs() / denom)
}

/// Condition 2: the channel-perturbation displacement bound,
/// `0 < r/(eps0 - r) + r/(1 - eps0 - r) <= (R/(S2 + R)) (1 - rho)`.
pub fn cond2(epsilon0: f64, r: f64, big_r: f64, rho: f64, s2: f64) -> Result<bool> {
    if !(r >= 0.0) || r >= epsilon0 || r >= 1.0 - epsilon0 {
        return Err(Error::argument(format!(
            "need 0 <= r < min(eps0, 1 - eps0), got r = {r}"
        )));
    }
    let lhs = r / (epsilon0 - r) + r / (1.0 - epsilon0 - r);
    let rhs = (big_r / (s2 + big_r)) * (1.0 - rho);
    Ok(lhs > 0.0 && lhs <= rhs)
}

/// Condition 3, coefficient-relaxed form: the conditional-sum bound on the
/// neighborhood with every modulus bounded coefficientwise,
/// `0 < [ ((1-eps0+r) pi00 + (eps0+r) pi01)(S2+R) + ((1-eps0+r) pi10 + (eps0+r) pi11)
///      + ((eps0+r) pi00 + (1-eps0+r) pi01)(S2+R) + ((eps0+r) pi10 + (1-eps0+r) pi11) ]
///      / (S1 - R + 1) <= 1/rho`.
///
/// Sound but very conservative: the left side is at least
/// `(S2+1)/(S1+1)`, which for chains far from `det = 0` exceeds `1/rho` for
/// every admissible `rho`, leaving no certifiable tuple at all. The
/// enclosure form [`cond3_enclosure`] certifies the same underlying
/// condition without that failure mode; the certifiers accept either.
pub fn cond3(p: &RadiusProblem, r: f64, big_r: f64, rho: f64) -> Result<bool> {
    Ok(cond3_lhs(p, r, big_r)? <= 1.0 / rho)
}

/// The left-hand side of condition 3.
pub fn cond3_lhs(p: &RadiusProblem, r: f64, big_r: f64) -> Result<f64> {
    let s = p.s_interval();
    let e = p.epsilon0();
    if !(big_r >= 0.0) || big_r >= s.s1 + 1.0 {
        return Err(Error::argument(format!(
            "need 0 <= R < S1 + 1, got R = {big_r}"
        )));
    }
    if !(r >= 0.0) || r >= e.min(1.0 - e) {
        return Err(Error::argument(format!(
            "need 0 <= r < min(eps0, 1 - eps0), got r = {r}"
        )));
    }
    let pi = p.pi();
    let hi = 1.0 - e + r;
    let lo = e + r;
    let denom = s.s1 - big_r + 1.0;
    let first = ((hi * pi[0][0] + lo * pi[0][1]) * (s.s2 + big_r)
        + (hi * pi[1][0] + lo * pi[1][1]))
        / denom;
    let second = ((lo * pi[0][0] + hi * pi[0][1]) * (s.s2 + big_r)
        + (lo * pi[1][0] + hi * pi[1][1]))
        / denom;
    Ok(first + second)
}

/// Condition 3, enclosure form: a tighter sound bound on
/// `sup |r_0^eps(x)| + |r_1^eps(x)|` over `x` in the `R`-neighborhood of
/// `S` and `|eps - eps0| <= r`.
///
/// Since `r_0 + r_1 = 1` identically, `|r_0| + |r_1| <= 1 + 2 d` with `d`
/// the distance from `r_0^eps(x)` to the segment `[0, 1]`, and `d` is at
/// most the displacement of `r_0` from its value at the nearest real point
/// of `S` at the center channel parameter (a genuine probability). Both
/// displacement pieces have closed-form suprema:
///
/// ```text
/// |r_0^eps(x) - r_0^eps0(x)| <= r (|pi01 - pi00| (S2+R) + |pi11 - pi10|) / (S1+1-R)
/// |r_0^eps0(x) - r_0^eps0(s)| <= R |A - B| / ((S1+1-R)(S1+1))
/// ```
///
/// with `A = (1-eps0) pi00 + eps0 pi01`, `B = (1-eps0) pi10 + eps0 pi11`.
/// The condition is `1 + 2 (r C_eps + R C_x) <= 1/rho`; it tends to
/// `1 <= 1/rho` as `r, R -> 0`, so small certificates exist for every
/// admissible chain.
pub fn cond3_enclosure(p: &RadiusProblem, r: f64, big_r: f64, rho: f64) -> Result<bool> {
    Ok(cond3_enclosure_lhs(p, r, big_r)? <= 1.0 / rho)
}

/// The left-hand side of the enclosure form of condition 3.
pub fn cond3_enclosure_lhs(p: &RadiusProblem, r: f64, big_r: f64) -> Result<f64> {
    let s = p.s_interval();
    let e = p.epsilon0();
    if !(big_r >= 0.0) || big_r >= s.s1 + 1.0 {
        return Err(Error::argument(format!(
            "need 0 <= R < S1 + 1, got R = {big_r}"
        )));
    }
    if !(r >= 0.0) || r >= e.min(1.0 - e) {
        return Err(Error::argument(format!(
            "need 0 <= r < min(eps0, 1 - eps0), got r = {r}"
        )));
    }
    let pi = p.pi();
    let denom = s.s1 + 1.0 - big_r;
    let c_eps =
        ((pi[0][1] - pi[0][0]).abs() * (s.s2 + big_r) + (pi[1][1] - pi[1][0]).abs()) / denom;
    let a = (1.0 - e) * pi[0][0] + e * pi[0][1];
    let b = (1.0 - e) * pi[1][0] + e * pi[1][1];
    let c_x = (a - b).abs() / (denom * (s.s1 + 1.0));
    Ok(1.0 + 2.0 * (r * c_eps + big_r * c_x))
}

/// Full re-check of a tuple: domain constraints, conditions 1 and 2, and
/// either certificate for condition 3.
pub fn verify_tuple(p: &RadiusProblem, t: &FeasibleTuple) -> bool {
    let s = p.s_interval();
    let e = p.epsilon0();
    if !(t.r > 0.0 && t.r < e && t.r < 1.0 - e) {
        return false;
    }
    if !(t.big_r > 0.0 && t.big_r < s.s1) {
        return false;
    }
    if !(t.rho > 0.0 && t.rho < 1.0) {
        return false;
    }
    let c1 = matches!(cond1(p, t.big_r, t.rho), Ok(true));
    let c2 = matches!(cond2(e, t.r, t.big_r, t.rho, s.s2), Ok(true));
    let c3 = matches!(cond3(p, t.r, t.big_r, t.rho), Ok(true))
        || matches!(cond3_enclosure(p, t.r, t.big_r, t.rho), Ok(true));
    c1 && c2 && c3
}

/// Outcome of [`max_radius_search`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Largest certified radius found; 0 when no feasible tuple was seen
    /// (a valid, degenerate bound — not an error).
    pub r_max: f64,
    /// The certified tuple attaining `r_max`, if any.
    pub best: Option<FeasibleTuple>,
    pub samples_tried: u64,
    pub feasible_found: u64,
    pub seed: u64,
}

/// Smallest sampled neighborhood radius, relative to `S1`.
const BIG_R_FLOOR: f64 = 1e-6;
/// Smallest sampled channel radius.
const SMALL_R_FLOOR: f64 = 1e-9;
/// Bisection iterations refining `r`; enough to pin the boundary to full
/// precision from any bracket.
const REFINE_ITERS: u32 = 80;

/// Randomized search for the largest certifiable radius.
///
/// Each trial draws `R` log-uniform in `(1e-6 S1, 0.99 S1)`, `rho` uniform
/// above the condition-1 lower bound, and `r` log-uniform below
/// `min(eps0, 1 - eps0)`; feasible draws are immediately improved by
/// bisecting `r` against conditions 2 and 3 (both monotone in `r`) at fixed
/// `(R, rho)`. The best refined tuple wins, with ties broken by trial
/// index, so the result is deterministic for a seed, independent of worker
/// count, and non-decreasing in the budget (trial `k` always uses seed
/// stream `k`).
pub fn max_radius_search(p: &RadiusProblem, budget: u64, seed: u64) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::argument("budget must be >= 1"));
    }
    let s = p.s_interval();
    let e = p.epsilon0();
    let r_cap = e.min(1.0 - e);

    let candidates: Vec<Option<(u64, FeasibleTuple)>> = (0..budget)
        .into_par_iter()
        .map(|k| {
            let mut rng = task_rng(seed, k);
            let log_uniform = |rng: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64| -> f64 {
                (rng.random_range(lo.ln()..hi.ln())).exp()
            };
            let big_r = log_uniform(&mut rng, BIG_R_FLOOR * s.s1, 0.99 * s.s1);
            let rho_min = cond1_lhs(p, big_r).ok()?;
            if !(rho_min < 1.0) {
                return None;
            }
            let rho = rng.random_range(rho_min.max(0.0)..1.0);
            // Keep the sampling window nonempty even for extreme channel
            // parameters where the cap undercuts the usual floor.
            let r_hi = 0.99 * r_cap;
            let r_lo = SMALL_R_FLOOR.min(0.5 * r_hi);
            let r = log_uniform(&mut rng, r_lo, r_hi);
            let tuple = FeasibleTuple { r, big_r, rho };
            if !verify_tuple(p, &tuple) {
                return None;
            }
            let refined = refine_radius(p, &tuple);
            Some((k, refined))
        })
        .collect();

    let mut outcome = SearchOutcome {
        r_max: 0.0,
        best: None,
        samples_tried: budget,
        feasible_found: 0,
        seed,
    };
    for candidate in candidates.into_iter().flatten() {
        outcome.feasible_found += 1;
        let (_, tuple) = candidate;
        if tuple.r > outcome.r_max {
            outcome.r_max = tuple.r;
            outcome.best = Some(tuple);
        }
    }
    if let Some(best) = &outcome.best {
        debug_assert!(verify_tuple(p, best));
    }
    Ok(outcome)
}

/// Largest `r` for the tuple's `(R, rho)`: conditions 2 and 3 are monotone
/// increasing in `r`, so the feasible set in `r` is an interval from 0 up
/// to a boundary found by bisection. Returns a tuple that still passes
/// [`verify_tuple`].
fn refine_radius(p: &RadiusProblem, t: &FeasibleTuple) -> FeasibleTuple {
    let e = p.epsilon0();
    let s = p.s_interval();
    // Both certificates' left sides grow with r, so the feasible set in r
    // is an interval from 0 and bisection applies.
    let feasible_r = |r: f64| -> bool {
        matches!(cond2(e, r, t.big_r, t.rho, s.s2), Ok(true))
            && (matches!(cond3(p, r, t.big_r, t.rho), Ok(true))
                || matches!(cond3_enclosure(p, r, t.big_r, t.rho), Ok(true)))
    };
    let cap = e.min(1.0 - e);
    let mut lo = t.r;
    let mut hi = cap * (1.0 - 1e-12);
    if feasible_r(hi) {
        return FeasibleTuple { r: hi, ..*t };
    }
    for _ in 0..REFINE_ITERS {
        let mid = 0.5 * (lo + hi);
        if feasible_r(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    FeasibleTuple { r: lo, ..*t }
}

/// One row of a parameter sweep over symmetric chains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub r_max: f64,
    pub big_r: f64,
    pub rho: f64,
    pub samples_tried: u64,
}

/// Per-`p` radius search over the symmetric family
/// `pi00 = pi11 = p`, `pi01 = pi10 = 1 - p`.
///
/// Rows appear in input order. A `p` that violates the standing assumptions
/// (such as `p = 1/2`, where `det = 0`) or yields no feasible tuple is
/// recorded as a degenerate `r_max = 0` row rather than an error. Each
/// point derives its seed streams from `(seed, point index)`, so the table
/// is byte-stable for a seed.
pub fn sweep(p_values: &[f64], epsilon0: f64, budget: u64, seed: u64) -> Result<Vec<SweepRow>> {
    if budget == 0 {
        return Err(Error::argument("budget must be >= 1"));
    }
    let rows: Vec<SweepRow> = p_values
        .par_iter()
        .enumerate()
        .map(|(idx, &p)| {
            let degenerate = SweepRow {
                p,
                r_max: 0.0,
                big_r: 0.0,
                rho: 0.0,
                samples_tried: 0,
            };
            let Ok(problem) = RadiusProblem::symmetric(p, epsilon0) else {
                return degenerate;
            };
            // Stream space is partitioned per sweep point.
            let point_seed = seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            match max_radius_search(&problem, budget, point_seed) {
                Ok(outcome) => match outcome.best {
                    Some(best) => SweepRow {
                        p,
                        r_max: best.r,
                        big_r: best.big_r,
                        rho: best.rho,
                        samples_tried: outcome.samples_tried,
                    },
                    None => SweepRow {
                        p,
                        samples_tried: outcome.samples_tried,
                        ..degenerate
                    },
                },
                Err(_) => degenerate,
            }
        })
        .collect();
    Ok(rows)
}

/// Worst margins observed when sampling the un-relaxed conditions for a
/// certified tuple. All three margins are `bound - observed`, so violations
/// are negative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledConditionsReport {
    pub samples: u64,
    /// Contraction: `rho - |log f_z(x) - log f_z(y)| / |log x - log y|`.
    pub contraction_margin: f64,
    pub contraction_violations: u64,
    /// Displacement: `(R/K)(1 - rho) - |log f_z^eps(x) - log f_z^eps0(x)|`
    /// with `K = S2 + R`.
    pub displacement_margin: f64,
    pub displacement_violations: u64,
    /// Conditional sum: `1/rho - (|r_0^eps(x)| + |r_1^eps(x)|)`.
    pub conditional_margin: f64,
    pub conditional_violations: u64,
    /// Samples skipped because a log or map was undefined there.
    pub skipped: u64,
}

impl SampledConditionsReport {
    pub fn total_violations(&self) -> u64 {
        self.contraction_violations + self.displacement_violations + self.conditional_violations
    }
}

/// Monte Carlo cross-check of the sampled conditions a certified tuple must
/// dominate: contraction ratios over pairs in the `R`-neighborhood of `S`,
/// channel displacement on `S` for `|eps - eps0| <= r`, and conditional
/// sums on the neighborhood. Violations indicate the closed-form relaxation
/// failed to be conservative, which should never happen for a tuple passing
/// [`verify_tuple`].
pub fn verify_conditions_sampled(
    p: &RadiusProblem,
    t: &FeasibleTuple,
    samples: u64,
    seed: u64,
) -> Result<SampledConditionsReport> {
    if samples == 0 {
        return Err(Error::argument("samples must be >= 1"));
    }
    let s = p.s_interval();
    let e0 = Complex64::new(p.epsilon0(), 0.0);
    let pi = *p.pi();
    let k_const = s.s2 + t.big_r;
    let displacement_bound = (t.big_r / k_const) * (1.0 - t.rho);
    let conditional_bound = 1.0 / t.rho;

    let sample_omega = |rng: &mut rand_chacha::ChaCha8Rng| -> Complex64 {
        let base = rng.random_range(s.s1..=s.s2);
        Complex64::new(base, 0.0) + sample_unit_disk(rng) * t.big_r
    };

    #[derive(Clone, Copy, Default)]
    struct Margins {
        contraction: f64,
        contraction_bad: u64,
        displacement: f64,
        displacement_bad: u64,
        conditional: f64,
        conditional_bad: u64,
        skipped: u64,
    }

    let per_sample: Vec<Margins> = (0..samples)
        .into_par_iter()
        .map(|idx| {
            let mut rng = task_rng(seed, idx);
            let mut m = Margins {
                contraction: f64::INFINITY,
                displacement: f64::INFINITY,
                conditional: f64::INFINITY,
                ..Default::default()
            };

            // Un-relaxed condition 1: contraction ratio for a sampled pair
            // in Omega(R). The channel prefactor cancels in the ratio.
            let x = sample_omega(&mut rng);
            let y = sample_omega(&mut rng);
            for z in [0u8, 1] {
                let ratio = (|| -> Option<f64> {
                    let fx = bsc_step_complex(&pi, e0, z, x).ok()?;
                    let fy = bsc_step_complex(&pi, e0, z, y).ok()?;
                    let num = (fx.ln() - fy.ln()).norm();
                    let den = (x.ln() - y.ln()).norm();
                    if den == 0.0 {
                        return None;
                    }
                    Some(num / den)
                })();
                match ratio {
                    Some(ratio) => {
                        let margin = t.rho - ratio;
                        m.contraction = m.contraction.min(margin);
                        if margin < 0.0 {
                            m.contraction_bad += 1;
                        }
                    }
                    None => m.skipped += 1,
                }
            }

            // Un-relaxed condition 2: displacement on the real interval S
            // for a channel parameter in the r-ball.
            let xs = Complex64::new(rng.random_range(s.s1..=s.s2), 0.0);
            let eps = e0 + sample_unit_disk(&mut rng) * t.r;
            for z in [0u8, 1] {
                let displacement = (|| -> Option<f64> {
                    let a = bsc_step_complex(&pi, eps, z, xs).ok()?;
                    let b = bsc_step_complex(&pi, e0, z, xs).ok()?;
                    Some((a.ln() - b.ln()).norm())
                })();
                match displacement {
                    Some(d) => {
                        let margin = displacement_bound - d;
                        m.displacement = m.displacement.min(margin);
                        if margin < 0.0 {
                            m.displacement_bad += 1;
                        }
                    }
                    None => m.skipped += 1,
                }
            }

            // Un-relaxed condition 3: conditional modulus sum on Omega(R).
            let xo = sample_omega(&mut rng);
            match bsc_conditionals_complex(&pi, eps, xo) {
                Ok((r0, r1)) => {
                    let margin = conditional_bound - (r0.norm() + r1.norm());
                    m.conditional = margin;
                    if margin < 0.0 {
                        m.conditional_bad += 1;
                    }
                }
                Err(_) => m.skipped += 1,
            }
            m
        })
        .collect();

    let mut report = SampledConditionsReport {
        samples,
        contraction_margin: f64::INFINITY,
        contraction_violations: 0,
        displacement_margin: f64::INFINITY,
        displacement_violations: 0,
        conditional_margin: f64::INFINITY,
        conditional_violations: 0,
        skipped: 0,
    };
    for m in per_sample {
        report.contraction_margin = report.contraction_margin.min(m.contraction);
        report.contraction_violations += m.contraction_bad;
        report.displacement_margin = report.displacement_margin.min(m.displacement);
        report.displacement_violations += m.displacement_bad;
        report.conditional_margin = report.conditional_margin.min(m.conditional);
        report.conditional_violations += m.conditional_bad;
        report.skipped += m.skipped;
    }
    Ok(report)
}
