//! Binary Markov chains observed through a binary symmetric channel.
//!
//! The hidden chain has a 2x2 strictly positive transition matrix `pi` with
//! positive determinant; the channel flips each emitted bit independently
//! with probability `epsilon`. The observation filter reduces to a scalar
//! dynamical system in the likelihood ratio `x = p(state 0) / p(state 1)`:
//!
//! ```text
//! x' = f_z(x) = (e(zbar) / e(z)) * (pi00 x + pi10) / (pi01 x + pi11)
//! ```
//!
//! with `e(0) = epsilon`, `e(1) = 1 - epsilon`, started at the stationary
//! ratio `x0 = pi10 / pi01`. The next-bit conditionals share the same
//! Möbius structure and stay consistent with the filter:
//! `p(z' = 0 | past) = r_0(x)` and `p(z' = 1 | past) = r_1(x)` with
//! `r_0 + r_1 = 1` identically.
//!
//! Entropy-rate routines accept any `epsilon` in (0, 1) (the channel at
//! `epsilon = 1/2` erases everything and gives exactly `log 2`); the
//! analyticity machinery in [`crate::radius`] additionally requires the
//! standing assumption `epsilon < 1/2`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hmm::HmmModel;
use crate::seeding::task_rng;

/// Words enumerated exactly are capped at 2^24, as in [`crate::hmm`].
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// A binary Markov chain behind a binary symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BscHmm {
    pi: [[f64; 2]; 2],
    epsilon: f64,
}

fn validate_pi(pi: &[[f64; 2]; 2]) -> Result<()> {
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
    if det <= 0.0 {
        return Err(Error::model(format!("det(pi) = {det} must be positive")));
    }
    Ok(())
}

impl BscHmm {
    /// Standing-assumption constructor: `0 < epsilon < 1/2`.
    pub fn new(pi: [[f64; 2]; 2], epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::model(format!(
                "epsilon must lie in (0, 1/2), got {epsilon}"
            )));
        }
        validate_pi(&pi)?;
        Ok(BscHmm { pi, epsilon })
    }

    /// Relaxed constructor for entropy computations: `0 < epsilon < 1`.
    /// Everything except the analyticity-radius machinery is well defined on
    /// the full open interval, and `epsilon = 1/2` is the exact-`log 2`
    /// sanity point.
    pub fn new_relaxed(pi: [[f64; 2]; 2], epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::model(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        validate_pi(&pi)?;
        Ok(BscHmm { pi, epsilon })
    }

    /// Symmetric chain `pi00 = pi11 = p`, `pi01 = pi10 = 1 - p`.
    pub fn symmetric(p: f64, epsilon: f64) -> Result<Self> {
        Self::new([[p, 1.0 - p], [1.0 - p, p]], epsilon)
    }

    pub fn pi(&self) -> &[[f64; 2]; 2] {
        &self.pi
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn determinant(&self) -> f64 {
        self.pi[0][0] * self.pi[1][1] - self.pi[0][1] * self.pi[1][0]
    }

    /// Stationary likelihood ratio `x0 = pi10 / pi01`, the filter's initial
    /// condition.
    pub fn initial_ratio(&self) -> f64 {
        self.pi[1][0] / self.pi[0][1]
    }
}

/// Channel emission probability of bit `z` given a clean bit 0:
/// `e(0) = 1 - epsilon`, `e(1) = epsilon` for crossover `epsilon`.
#[inline]
fn emission(epsilon: Complex64, z: u8, clean: u8) -> Complex64 {
    if z == clean {
        Complex64::ONE - epsilon
    } else {
        epsilon
    }
}

/// One scalar filter step on observing bit `z`, for complex `x` and channel
/// parameter (analytic continuation in `epsilon`).
pub fn bsc_step_complex(
    pi: &[[f64; 2]; 2],
    epsilon: Complex64,
    z: u8,
    x: Complex64,
) -> Result<Complex64> {
    if z > 1 {
        return Err(Error::argument("observed bit must be 0 or 1"));
    }
    let denom = pi[0][1] * x + pi[1][1];
    if denom.norm() == 0.0 {
        return Err(Error::singularity("pole of the filter map"));
    }
    let e0 = emission(epsilon, z, 0);
    let e1 = emission(epsilon, z, 1);
    if e1.norm() == 0.0 {
        return Err(Error::singularity("channel emission vanished"));
    }
    Ok(e0 / e1 * (pi[0][0] * x + pi[1][0]) / denom)
}

/// One scalar filter step for real state and model.
pub fn bsc_step(m: &BscHmm, z: u8, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "filter state must be positive, got {x}"
        )));
    }
    let value = bsc_step_complex(
        &m.pi,
        Complex64::new(m.epsilon, 0.0),
        z,
        Complex64::new(x, 0.0),
    )?;
    Ok(value.re)
}

/// Next-bit conditionals `(r_0(x), r_1(x))` for complex state and channel
/// parameter. They sum to 1 identically.
pub fn bsc_conditionals_complex(
    pi: &[[f64; 2]; 2],
    epsilon: Complex64,
    x: Complex64,
) -> Result<(Complex64, Complex64)> {
    let denom = x + Complex64::ONE;
    if denom.norm() == 0.0 {
        return Err(Error::singularity("x = -1: conditionals undefined"));
    }
    let one = Complex64::ONE;
    let r0 = (((one - epsilon) * pi[0][0] + epsilon * pi[0][1]) * x
        + ((one - epsilon) * pi[1][0] + epsilon * pi[1][1]))
        / denom;
    let r1 = ((epsilon * pi[0][0] + (one - epsilon) * pi[0][1]) * x
        + (epsilon * pi[1][0] + (one - epsilon) * pi[1][1]))
        / denom;
    Ok((r0, r1))
}

/// Next-bit conditionals for a real model state.
pub fn bsc_conditionals(m: &BscHmm, x: f64) -> Result<(f64, f64)> {
    if !(x > -1.0) {
        return Err(Error::domain(format!("conditionals need x > -1, got {x}")));
    }
    let (r0, r1) = bsc_conditionals_complex(
        &m.pi,
        Complex64::new(m.epsilon, 0.0),
        Complex64::new(x, 0.0),
    )?;
    Ok((r0.re, r1.re))
}

/// Conditional next-bit entropy after an `n`-bit observed past, in nats.
///
/// Exact enumeration over the prefix tree of observation words, sharing the
/// scalar filter state between words with a common prefix. Non-increasing
/// in `horizon` and an upper approximant of the entropy rate.
pub fn entropy_rate_exact(m: &BscHmm, horizon: u32) -> Result<f64> {
    if horizon == 0 {
        return Err(Error::argument("horizon must be >= 1"));
    }
    match 2u64.checked_pow(horizon) {
        Some(w) if w <= MAX_ENUMERATION => {}
        _ => {
            return Err(Error::Resource(format!(
                "2^{horizon} exceeds the enumeration guard 2^24"
            )))
        }
    }
    // Conditioning prefix of length `horizon`; the final level's entropy is
    // taken analytically from the conditionals.
    scalar_subtree_entropy(m, m.initial_ratio(), horizon, 0)
}

/// Prefix-tree depth below which subtrees run sequentially.
const PARALLEL_DEPTH: u32 = 3;

fn scalar_subtree_entropy(m: &BscHmm, x: f64, remaining: u32, depth: u32) -> Result<f64> {
    let (r0, r1) = bsc_conditionals(m, x)?;
    if remaining == 0 {
        let mut h = 0.0;
        if r0 > 0.0 {
            h -= r0 * r0.ln();
        }
        if r1 > 0.0 {
            h -= r1 * r1.ln();
        }
        return Ok(h);
    }
    let (h0, h1) = if depth < PARALLEL_DEPTH && remaining > 8 {
        // Subtrees are independent; the combination below is in fixed
        // order, so the result is identical for any worker count.
        rayon::join(
            || scalar_subtree_entropy(m, bsc_step(m, 0, x)?, remaining - 1, depth + 1),
            || scalar_subtree_entropy(m, bsc_step(m, 1, x)?, remaining - 1, depth + 1),
        )
    } else {
        (
            scalar_subtree_entropy(m, bsc_step(m, 0, x)?, remaining - 1, depth + 1),
            scalar_subtree_entropy(m, bsc_step(m, 1, x)?, remaining - 1, depth + 1),
        )
    };
    Ok(r0 * h0? + r1 * h1?)
}

/// A Monte Carlo estimate with its batch-means standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub path_length: u64,
}

/// Number of batches used for the batch-means standard error.
const MC_BATCHES: u64 = 32;

/// Entropy-rate estimate from one simulated stationary path:
/// `-(1/L) sum_i log p(z_i | z_1..z_{i-1})`.
pub fn entropy_rate_mc(m: &BscHmm, path_length: u64, seed: u64) -> Result<McEstimate> {
    if path_length < 1000 {
        return Err(Error::argument("path length must be >= 1000"));
    }
    let mut rng = task_rng(seed, 0);
    let mu0 = m.pi[1][0] / (m.pi[1][0] + m.pi[0][1]);
    let mut y: u8 = if rng.random::<f64>() < mu0 { 0 } else { 1 };
    let mut x = m.initial_ratio();

    let mut total = 0.0;
    let batch_size = path_length / MC_BATCHES;
    let mut batch_means = Vec::with_capacity(MC_BATCHES as usize);
    let mut batch_acc = 0.0;

    for i in 0..path_length {
        // Advance the hidden chain, then emit through the channel.
        y = if rng.random::<f64>() < m.pi[y as usize][0] {
            0
        } else {
            1
        };
        let z = if rng.random::<f64>() < m.epsilon {
            1 - y
        } else {
            y
        };
        let (r0, r1) = bsc_conditionals(m, x)?;
        let p = if z == 0 { r0 } else { r1 };
        let term = -p.ln();
        total += term;
        batch_acc += term;
        if batch_size > 0 && (i + 1) % batch_size == 0 && batch_means.len() < MC_BATCHES as usize {
            batch_means.push(batch_acc / batch_size as f64);
            batch_acc = 0.0;
        }
        x = bsc_step(m, z, x)?;
    }

    let k = batch_means.len() as f64;
    let mean = batch_means.iter().sum::<f64>() / k;
    let var = batch_means.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (k - 1.0);
    Ok(McEstimate {
        estimate: total / path_length as f64,
        stderr: (var / k).sqrt(),
        path_length,
    })
}

/// A model description as read from a JSON file: either a binary chain with
/// a channel parameter or a general chain with an output map. Unknown or
/// mixed fields are rejected rather than guessed at.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ModelFile {
    Bsc {
        pi: [[f64; 2]; 2],
        epsilon: f64,
    },
    General {
        delta: Vec<Vec<f64>>,
        phi: Vec<usize>,
    },
}

/// A validated model of either kind.
#[derive(Debug, Clone)]
pub enum Model {
    Bsc(BscHmm),
    General(HmmModel),
}

impl Model {
    /// Parse and validate a model file. BSC models accept the relaxed
    /// channel range (0, 1).
    pub fn from_json(text: &str) -> Result<Model> {
        let file: ModelFile = serde_json::from_str(text)
            .map_err(|e| Error::model(format!("cannot parse model JSON: {e}")))?;
        match file {
            ModelFile::Bsc { pi, epsilon } => Ok(Model::Bsc(BscHmm::new_relaxed(pi, epsilon)?)),
            ModelFile::General { delta, phi } => Ok(Model::General(HmmModel::new(delta, phi)?)),
        }
    }
}
