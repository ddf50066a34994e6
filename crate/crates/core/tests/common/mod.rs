//! Shared oracle helpers for the integration suites. Everything here is an
//! independent route to a quantity the library computes some other way.
//!
//! Each test binary compiles this module separately, so not every helper is
//! used from every binary.
#![allow(dead_code)]

use blackwell::hmm::HmmModel;
use blackwell::matrix::{induced_map, PositiveMatrix};
use blackwell::metrics::hilbert_real;
use blackwell::simplex::RealSimplexPoint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Contraction ratio `d_H(f_T v, f_T w) / d_H(v, w)` for an infinitesimal
/// multiplicative perturbation `w = v (1 + h u)` (renormalized).
pub fn ratio_at(t: &PositiveMatrix, v: &RealSimplexPoint, direction: &[f64], h: f64) -> f64 {
    let coords: Vec<f64> = v
        .coords()
        .iter()
        .zip(direction)
        .map(|(&vi, &ui)| vi * (1.0 + h * ui))
        .collect();
    let sum: f64 = coords.iter().sum();
    let w = RealSimplexPoint::new(coords.iter().map(|c| c / sum).collect())
        .expect("perturbed point stays interior for small h");
    let before = hilbert_real(v, &w).expect("interior");
    if before == 0.0 {
        return 0.0;
    }
    let after = hilbert_real(
        &induced_map(t, v).expect("image"),
        &induced_map(t, &w).expect("image"),
    )
    .expect("interior image");
    after / before
}

/// Near-extremal contraction ratio for `T` under the real Hilbert metric.
///
/// The supremum is attained in the infinitesimal limit around a point
/// supported on the index pair `(i*, j*)` of an extremal quadruple of the
/// projectivity constant, perturbed along `e_{i*} - e_{j*}`. This builds
/// that family, optimizes the support ratio by coarse scan plus
/// golden-section, and returns the best observed ratio (a lower bound on
/// the true supremum `tau(T)`).
pub fn optimized_contraction_ratio(t: &PositiveMatrix) -> f64 {
    let dim = t.dim();
    // Extremal quadruple of phi(T).
    let mut best = (f64::INFINITY, 0usize, 0usize);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let ratio = t.get(i, k) * t.get(j, l) / (t.get(j, k) * t.get(i, l));
                    if ratio < best.0 {
                        best = (ratio, i, j);
                    }
                }
            }
        }
    }
    let (_, i_star, j_star) = best;
    if i_star == j_star {
        return 0.0; // tau = 0: nothing to attain
    }

    let eta = 1e-7;
    let h = 1e-6;
    let mut direction = vec![0.0; dim];
    direction[i_star] = 1.0;
    direction[j_star] = -1.0;

    let point = |log_z: f64| -> RealSimplexPoint {
        let z = log_z.exp();
        let mut coords = vec![if dim > 2 { eta / (dim - 2) as f64 } else { 0.0 }; dim];
        coords[i_star] = (1.0 - if dim > 2 { eta } else { 0.0 }) * z / (1.0 + z);
        coords[j_star] = (1.0 - if dim > 2 { eta } else { 0.0 }) / (1.0 + z);
        RealSimplexPoint::new(coords).expect("family point is a simplex point")
    };
    let g = |log_z: f64| ratio_at(t, &point(log_z), &direction, h);

    // Coarse scan, then golden-section around the best cell.
    let (mut lo, mut hi) = (-20.0f64, 20.0f64);
    let mut best_scan = (f64::NEG_INFINITY, 0.0f64);
    const SCAN: usize = 160;
    for k in 0..=SCAN {
        let x = lo + (hi - lo) * k as f64 / SCAN as f64;
        let v = g(x);
        if v > best_scan.0 {
            best_scan = (v, x);
        }
    }
    let cell = (hi - lo) / SCAN as f64;
    lo = best_scan.1 - cell;
    hi = best_scan.1 + cell;
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut m1 = hi - phi * (hi - lo);
    let mut m2 = lo + phi * (hi - lo);
    let mut f1 = g(m1);
    let mut f2 = g(m2);
    for _ in 0..60 {
        if f1 < f2 {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + phi * (hi - lo);
            f2 = g(m2);
        } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - phi * (hi - lo);
            f1 = g(m1);
        }
    }
    best_scan.0.max(f1).max(f2)
}

/// Joint probability of an observation word by brute-force forward
/// recursion over hidden-state distributions (no filter normalization).
pub fn forward_joint(model: &HmmModel, word: &[usize]) -> f64 {
    let b = model.n_states();
    let stationary = model.stationary().expect("stationary exists");
    let mut weights: Vec<f64> = stationary.coords().to_vec();
    for &symbol in word {
        let mut next = vec![0.0; b];
        for j in 0..b {
            if model.phi()[j] != symbol {
                continue;
            }
            next[j] = (0..b).map(|i| weights[i] * model.delta()[i][j]).sum();
        }
        weights = next;
    }
    weights.iter().sum()
}

/// The four-state lift of a binary chain through a binary symmetric
/// channel: states `(y, n)` with `y` the chain state and `n` the noise
/// indicator (flip probability `epsilon`), output `y XOR n`.
pub fn lift_bsc(pi: &[[f64; 2]; 2], epsilon: f64) -> HmmModel {
    let mut delta = vec![vec![0.0; 4]; 4];
    let noise = [1.0 - epsilon, epsilon];
    for y in 0..2 {
        for n in 0..2 {
            for y2 in 0..2 {
                for n2 in 0..2 {
                    delta[2 * y + n][2 * y2 + n2] = pi[y][y2] * noise[n2];
                }
            }
        }
    }
    let phi = vec![0, 1, 1, 0]; // (y, n) -> y xor n
    HmmModel::new(delta, phi).expect("lift is a valid model")
}

/// Reduce a lifted 4-state filter distribution to the scalar likelihood
/// ratio `p(y = 0) / p(y = 1)`.
pub fn lift_ratio(state: &RealSimplexPoint) -> f64 {
    let c = state.coords();
    (c[0] + c[1]) / (c[2] + c[3])
}

/// Random interior pair at a given dimension.
pub fn random_pair(dim: usize, rng: &mut ChaCha8Rng) -> (RealSimplexPoint, RealSimplexPoint) {
    (
        RealSimplexPoint::sample_interior(dim, rng),
        RealSimplexPoint::sample_interior(dim, rng),
    )
}

/// Random point of `W_C^+` with moderate imaginary parts (arguments stay
/// far from the branch cut so log-route oracles are valid).
pub fn random_positive_half_point(
    dim: usize,
    imag_scale: f64,
    rng: &mut ChaCha8Rng,
) -> blackwell::ComplexSimplexPoint {
    use num_complex::Complex64;
    loop {
        let base = RealSimplexPoint::sample_interior(dim, rng);
        let coords: Vec<Complex64> = base
            .coords()
            .iter()
            .map(|&ui| Complex64::new(ui, ui * rng.random_range(-imag_scale..imag_scale)))
            .collect();
        let sum: Complex64 = coords.iter().sum();
        let coords: Vec<Complex64> = coords.iter().map(|c| c / sum).collect();
        if coords.iter().all(|c| c.re > 0.0) {
            if let Ok(point) = blackwell::ComplexSimplexPoint::new(coords) {
                return point;
            }
        }
    }
}
