//! Hidden Markov processes over a strictly positive Markov chain, the
//! observation filter, and entropy-rate computation.
//!
//! A model is a row-stochastic strictly positive transition matrix `delta`
//! on states `0..B` together with a total output map `phi` from states to
//! symbols `0..A`. Observing symbol `a` zeroes out the columns of states
//! that do not emit `a`; the filter is the normalized action of those
//! matrices on the simplex, started at the stationary distribution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PositiveMatrix;
use crate::simplex::RealSimplexPoint;

/// Row-sum tolerance accepted by the model constructor.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// Residual at which stationary-distribution power iteration stops.
pub const STATIONARY_RESIDUAL: f64 = 1e-14;

/// Exact entropy enumeration refuses horizons with more than this many
/// words.
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// A hidden Markov process: strictly positive row-stochastic chain plus an
/// output map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HmmModel {
    delta: Vec<Vec<f64>>,
    phi: Vec<usize>,
    #[serde(skip)]
    n_symbols: usize,
}

impl HmmModel {
    /// Validate and build a model. `phi[i]` is the symbol emitted by state
    /// `i`; symbols must form a contiguous range `0..A` with every symbol
    /// emitted by at least one state.
    pub fn new(delta: Vec<Vec<f64>>, phi: Vec<usize>) -> Result<Self> {
        let b = delta.len();
        if b == 0 {
            return Err(Error::model("empty transition matrix"));
        }
        if delta.iter().any(|row| row.len() != b) {
            return Err(Error::model("transition matrix must be square"));
        }
        if phi.len() != b {
            return Err(Error::model(format!(
                "phi has {} entries for {b} states",
                phi.len()
            )));
        }
        for (i, row) in delta.iter().enumerate() {
            if row.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
                return Err(Error::model(format!(
                    "row {i} has a nonpositive entry; only strictly positive chains are supported"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOLERANCE {
                return Err(Error::model(format!("row {i} sums to {sum}, not 1")));
            }
        }
        let n_symbols = phi.iter().max().copied().unwrap_or(0) + 1;
        for a in 0..n_symbols {
            if !phi.contains(&a) {
                return Err(Error::model(format!("symbol {a} is never emitted")));
            }
        }
        Ok(HmmModel {
            delta,
            phi,
            n_symbols,
        })
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn delta(&self) -> &[Vec<f64>] {
        &self.delta
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// States emitting symbol `a`.
    pub fn states_of(&self, a: usize) -> Vec<usize> {
        (0..self.n_states()).filter(|&i| self.phi[i] == a).collect()
    }

    /// The transition matrix with all columns not emitting `a` zeroed out.
    pub fn delta_a(&self, a: usize) -> Result<PositiveMatrix> {
        if a >= self.n_symbols {
            return Err(Error::model(format!(
                "symbol {a} out of range (alphabet size {})",
                self.n_symbols
            )));
        }
        let keep = self.states_of(a);
        if keep.is_empty() {
            return Err(Error::model(format!("symbol {a} is never emitted")));
        }
        let b = self.n_states();
        let entries = (0..b)
            .map(|i| {
                (0..b)
                    .map(|j| {
                        if self.phi[j] == a {
                            self.delta[i][j]
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        PositiveMatrix::new(entries)
    }

    /// `r_a(w) = w Delta_a 1`, the probability of observing `a` next given
    /// state distribution `w`.
    pub fn r_a(&self, a: usize, w: &RealSimplexPoint) -> Result<f64> {
        if w.dim() != self.n_states() {
            return Err(Error::domain("dimension mismatch"));
        }
        if a >= self.n_symbols {
            return Err(Error::model(format!("symbol {a} out of range")));
        }
        let mut total = 0.0;
        for j in 0..self.n_states() {
            if self.phi[j] != a {
                continue;
            }
            let col: f64 = (0..self.n_states())
                .map(|i| w.coords()[i] * self.delta[i][j])
                .sum();
            total += col;
        }
        Ok(total)
    }

    /// `f_a(w) = w Delta_a / r_a(w)`: the filter update on observing `a`.
    pub fn f_a(&self, a: usize, w: &RealSimplexPoint) -> Result<RealSimplexPoint> {
        if w.dim() != self.n_states() {
            return Err(Error::domain("dimension mismatch"));
        }
        if a >= self.n_symbols {
            return Err(Error::model(format!("symbol {a} out of range")));
        }
        let b = self.n_states();
        let mut image = vec![0.0; b];
        for j in 0..b {
            if self.phi[j] != a {
                continue;
            }
            image[j] = (0..b).map(|i| w.coords()[i] * self.delta[i][j]).sum();
        }
        let norm: f64 = image.iter().sum();
        if norm <= 0.0 {
            return Err(Error::singularity(format!(
                "r_{a}(w) = 0: filter update undefined"
            )));
        }
        for x in &mut image {
            *x /= norm;
        }
        RealSimplexPoint::new(image)
    }

    /// Stationary distribution of the chain by power iteration to residual
    /// [`STATIONARY_RESIDUAL`].
    pub fn stationary(&self) -> Result<RealSimplexPoint> {
        stationary_distribution(&self.delta)
    }
}

/// One step of an observation filter run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilterStep {
    /// Symbol consumed at this step.
    pub symbol: usize,
    /// `p(symbol | past observations)`, evaluated at the pre-update state.
    pub conditional: f64,
    /// Posterior state distribution after consuming the symbol.
    pub state: RealSimplexPoint,
}

/// Run the filter over an observation sequence from the stationary start,
/// emitting each next-symbol conditional alongside the updated state.
pub fn filter_run(model: &HmmModel, observations: &[usize]) -> Result<Vec<FilterStep>> {
    if observations.is_empty() {
        return Err(Error::argument("observation sequence is empty"));
    }
    let mut state = model.stationary()?;
    let mut steps = Vec::with_capacity(observations.len());
    for &a in observations {
        let conditional = model.r_a(a, &state)?;
        state = model.f_a(a, &state)?;
        steps.push(FilterStep {
            symbol: a,
            conditional,
            state: state.clone(),
        });
    }
    Ok(steps)
}

/// Left fixed vector of a strictly positive row-stochastic matrix, by
/// power iteration.
pub fn stationary_distribution(delta: &[Vec<f64>]) -> Result<RealSimplexPoint> {
    let b = delta.len();
    if b == 0 || delta.iter().any(|row| row.len() != b) {
        return Err(Error::model("matrix must be square and nonempty"));
    }
    if delta.iter().flatten().any(|&p| !(p > 0.0)) {
        return Err(Error::model("matrix must be strictly positive"));
    }
    let mut w = vec![1.0 / b as f64; b];
    for _ in 0..200_000 {
        let mut next = vec![0.0; b];
        for j in 0..b {
            next[j] = (0..b).map(|i| w[i] * delta[i][j]).sum();
        }
        let norm: f64 = next.iter().sum();
        for x in &mut next {
            *x /= norm;
        }
        let residual = w
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        w = next;
        if residual <= STATIONARY_RESIDUAL {
            return RealSimplexPoint::interior(w);
        }
    }
    Err(Error::Numerical(
        "stationary distribution power iteration did not converge".into(),
    ))
}

/// Conditional entropy of the next symbol given an `n`-step observed past,
/// in nats: `H_n = -sum over words of p(word) log p(last | prefix)`.
///
/// Enumerates the prefix tree of words of length `n`, sharing filter states
/// between words with a common prefix. An upper approximant of the entropy
/// rate, non-increasing in `n`. Horizons with more than 2^24 words are
/// refused.
pub fn entropy_rate_exact(model: &HmmModel, horizon: u32) -> Result<f64> {
    if horizon == 0 {
        return Err(Error::argument("horizon must be >= 1"));
    }
    let words = (model.n_symbols() as u64).checked_pow(horizon);
    match words {
        Some(w) if w <= MAX_ENUMERATION => {}
        _ => {
            return Err(Error::Resource(format!(
                "A^n = {}^{horizon} exceeds the enumeration guard 2^24",
                model.n_symbols()
            )))
        }
    }
    let start = model.stationary()?;
    // The conditioning prefix has length `horizon`; the level below it
    // contributes the conditional entropy of the next symbol analytically.
    subtree_entropy(model, &start, horizon, 0)
}

/// Depth of the prefix tree below which subtrees are evaluated
/// sequentially.
const PARALLEL_DEPTH: u32 = 2;

fn subtree_entropy(
    model: &HmmModel,
    state: &RealSimplexPoint,
    remaining: u32,
    depth: u32,
) -> Result<f64> {
    if remaining == 0 {
        let mut h = 0.0;
        for a in 0..model.n_symbols() {
            let p = model.r_a(a, state)?;
            if p > 0.0 {
                h -= p * p.ln();
            }
        }
        return Ok(h);
    }
    let evaluate = |a: usize| -> Result<f64> {
        let p = model.r_a(a, state)?;
        if p == 0.0 {
            return Ok(0.0);
        }
        let next = model.f_a(a, state)?;
        Ok(p * subtree_entropy(model, &next, remaining - 1, depth + 1)?)
    };
    if depth < PARALLEL_DEPTH {
        // Parallel over subtrees; summation stays in symbol order so the
        // result is identical for any worker count.
        let parts: Vec<Result<f64>> = (0..model.n_symbols())
            .into_par_iter()
            .map(evaluate)
            .collect();
        let mut total = 0.0;
        for part in parts {
            total += part?;
        }
        Ok(total)
    } else {
        let mut total = 0.0;
        for a in 0..model.n_symbols() {
            total += evaluate(a)?;
        }
        Ok(total)
    }
}
