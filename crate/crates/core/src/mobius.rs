//! Möbius maps of the right half-plane and their contraction coefficients.
//!
//! A 2x2 matrix acts projectively on the ratio coordinate of the simplex; in
//! that coordinate the action is the fractional linear map
//! `f(z) = (a z + b) / (c z + d)`. Two matrix-to-coefficient conventions are
//! in circulation; this crate freezes
//!
//! ```text
//! [[m11, m12], [m21, m22]]  ->  f(z) = (m11 z + m12) / (m21 z + m22)
//! ```
//!
//! via [`MobiusMap::from_matrix`], the reading pinned down by the reference
//! contraction coefficients 0.664396 / 0.664599 of the perturbed example
//! matrix (see `tests/acceptance.rs`). The row-vector simplex action
//! `w -> wT/(wT·1)` corresponds to the transposed entries and is exposed as
//! [`MobiusMap::from_row_action`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::simplex::HalfPlanePoint;

/// Fractional linear map `f(z) = (a z + b) / (c z + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// Which infinitesimal coefficient a supremum search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    /// `|z f'(z) / f(z)|` — the complex Hilbert metric coefficient.
    Hilbert,
    /// `|Re(z) f'(z) / Re(f(z))|` — the Poincaré metric coefficient.
    Poincare,
}

impl MobiusMap {
    /// Build a map. `ad - bc = 0` is allowed (the map degenerates to a
    /// constant, which several coefficient identities rely on); only a
    /// denominator that vanishes identically is rejected.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if c.norm() == 0.0 && d.norm() == 0.0 {
            return Err(Error::argument("denominator cz + d vanishes identically"));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    /// Frozen entry assignment: `f(z) = (m11 z + m12) / (m21 z + m22)`.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::argument("Möbius reduction needs a 2x2 matrix"));
        }
        MobiusMap::new(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1))
    }

    /// Entry assignment conjugate to the row-vector simplex action: with
    /// `z = w_1/w_2`, the ratio of `wT/(wT·1)` equals this map applied
    /// to `z`.
    pub fn from_row_action(m: &ComplexMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::argument("Möbius reduction needs a 2x2 matrix"));
        }
        MobiusMap::new(m.get(0, 0), m.get(1, 0), m.get(0, 1), m.get(1, 1))
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        MobiusMap::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// True if all four coefficients are real and strictly positive.
    pub fn has_positive_entries(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|e| e.im == 0.0 && e.re > 0.0)
    }

    /// Evaluate the map. Fails on the pole `c z + d = 0`.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let denom = self.c * z + self.d;
        if denom.norm() == 0.0 {
            return Err(Error::singularity(format!(
                "pole of the Möbius map at z = {z}"
            )));
        }
        Ok((self.a * z + self.b) / denom)
    }

    /// Derivative `f'(z) = (ad - bc) / (cz + d)^2`.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let denom = self.c * z + self.d;
        if denom.norm() == 0.0 {
            return Err(Error::singularity(format!(
                "pole of the Möbius map at z = {z}"
            )));
        }
        Ok(self.determinant() / (denom * denom))
    }
}

/// Closed-form contraction coefficient on the whole right half-plane for a
/// map with strictly positive real coefficients:
/// `(1 - bc/ad) / (1 + bc/ad)` when `ad >= bc`, else with the ratio
/// inverted.
pub fn halfplane_tau_closed_form(m: &MobiusMap) -> Result<f64> {
    if !m.has_positive_entries() {
        return Err(Error::argument(
            "closed-form coefficient requires strictly positive real entries",
        ));
    }
    let ad = m.a.re * m.d.re;
    let bc = m.b.re * m.c.re;
    let q = if ad >= bc { bc / ad } else { ad / bc };
    Ok((1.0 - q) / (1.0 + q))
}

/// Infinitesimal coefficient of the complex Hilbert metric at `z`:
/// `|z f'(z) / f(z)|`.
///
/// For positive real coefficients this equals
/// `|(ad - bc) / (a c z + (ad + bc) + b d / z)|`.
pub fn infinitesimal_dh_coeff(m: &MobiusMap, z: HalfPlanePoint) -> Result<f64> {
    let z = z.value();
    let fz = m.apply(z)?;
    if fz.norm() == 0.0 {
        return Err(Error::singularity(
            "f(z) = 0: Hilbert coefficient undefined",
        ));
    }
    let fpz = m.derivative(z)?;
    Ok((z * fpz / fz).norm())
}

/// Infinitesimal coefficient of the half-plane Poincaré metric at `z`:
/// `|Re(z) f'(z) / Re(f(z))|`.
pub fn infinitesimal_dp_coeff(m: &MobiusMap, z: HalfPlanePoint) -> Result<f64> {
    let z = z.value();
    let fz = m.apply(z)?;
    if fz.re == 0.0 {
        return Err(Error::singularity(
            "Re f(z) = 0: Poincare coefficient undefined",
        ));
    }
    let fpz = m.derivative(z)?;
    Ok((z.re * fpz).norm() / fz.re.abs())
}

/// Result of a numerical supremum search over the half-plane.
#[derive(Debug, Clone, Copy)]
pub struct SupEstimate {
    /// Largest coefficient found.
    pub value: f64,
    /// Argmax in the half-plane.
    pub z: Complex64,
    /// Argmax in log-polar coordinates: `z = exp(s + i theta)`.
    pub s: f64,
    pub theta: f64,
    /// Coefficient evaluations spent.
    pub evaluations: u64,
}

/// Log-polar search domain: `s` in `[-S_MAX, S_MAX]`.
const S_MAX: f64 = 12.0;
/// Default grid resolution per axis.
const GRID: usize = 512;
/// Keep refinement iterates strictly inside the open half-plane.
const THETA_MARGIN: f64 = 1e-9;

/// Numerical estimate of the supremum over the right half-plane of an
/// infinitesimal coefficient.
///
/// The half-plane is parameterized log-polar, `z = exp(s + i theta)` with
/// `s` in `[-12, 12]` and `theta` in `(-pi/2, pi/2)`; the coefficient is
/// evaluated on a grid biased toward the imaginary-axis boundary (where the
/// supremum of the Hilbert coefficient lives for positive maps) and the best
/// cell is polished by Nelder–Mead. `budget` caps the total number of
/// coefficient evaluations; at least a coarse grid is always spent.
///
/// Before searching, the map is checked on a sample of the domain: a pole or
/// an image outside the half-plane aborts the search, since the coefficient
/// sup is meaningless for maps that do not preserve `H`.
pub fn sup_coeff_numerical(m: &MobiusMap, which: CoeffKind, budget: u64) -> Result<SupEstimate> {
    preservation_check(m)?;

    let eval = |s: f64, theta: f64| -> Option<f64> {
        let z = Complex64::from_polar(s.exp(), theta);
        let p = HalfPlanePoint::new(z).ok()?;
        match which {
            CoeffKind::Hilbert => infinitesimal_dh_coeff(m, p).ok(),
            CoeffKind::Poincare => infinitesimal_dp_coeff(m, p).ok(),
        }
    };

    let mut evaluations = 0u64;

    // Square grid sized to the budget, capped at the default resolution.
    let n = ((budget as f64).sqrt() as usize).clamp(16, GRID);
    let mut best = (f64::NEG_INFINITY, 0.0f64, 0.0f64);
    for i in 0..n {
        let s = -S_MAX + 2.0 * S_MAX * (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            // Half-cell offset keeps theta strictly inside (-pi/2, pi/2)
            // while placing the outermost samples near the boundary.
            let theta =
                -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            evaluations += 1;
            if let Some(v) = eval(s, theta) {
                if v > best.0 {
                    best = (v, s, theta);
                }
            }
        }
    }
    if best.0 == f64::NEG_INFINITY {
        return Err(Error::domain(
            "coefficient undefined on the whole search grid",
        ));
    }

    // Nelder–Mead polish in (s, theta), clamped to the open domain.
    let clamp = |s: f64, theta: f64| -> (f64, f64) {
        (
            s.clamp(-S_MAX, S_MAX),
            theta.clamp(
                -std::f64::consts::FRAC_PI_2 + THETA_MARGIN,
                std::f64::consts::FRAC_PI_2 - THETA_MARGIN,
            ),
        )
    };
    let score = |p: (f64, f64), evals: &mut u64| -> f64 {
        *evals += 1;
        eval(p.0, p.1).unwrap_or(f64::NEG_INFINITY)
    };

    let step_s = 2.0 * S_MAX / n as f64;
    let step_t = std::f64::consts::PI / n as f64;
    let mut simplex = [
        (best.1, best.2),
        clamp(best.1 + step_s, best.2),
        clamp(best.1, best.2 + step_t),
    ];
    let mut values = [
        best.0,
        score(simplex[1], &mut evaluations),
        score(simplex[2], &mut evaluations),
    ];

    let refine_iters = budget.saturating_sub(evaluations).min(400);
    for _ in 0..refine_iters {
        // Order: values[order[0]] is best (largest).
        let mut order = [0usize, 1, 2];
        order.sort_by(|&x, &y| values[y].total_cmp(&values[x]));
        let (hi, mid, lo) = (order[0], order[1], order[2]);
        if (values[hi] - values[lo]).abs() < 1e-15 * values[hi].abs().max(1e-300) {
            break;
        }
        let centroid = (
            (simplex[hi].0 + simplex[mid].0) / 2.0,
            (simplex[hi].1 + simplex[mid].1) / 2.0,
        );
        let reflect = clamp(
            centroid.0 + (centroid.0 - simplex[lo].0),
            centroid.1 + (centroid.1 - simplex[lo].1),
        );
        let fr = score(reflect, &mut evaluations);
        if fr > values[hi] {
            let expand = clamp(
                centroid.0 + 2.0 * (centroid.0 - simplex[lo].0),
                centroid.1 + 2.0 * (centroid.1 - simplex[lo].1),
            );
            let fe = score(expand, &mut evaluations);
            if fe > fr {
                simplex[lo] = expand;
                values[lo] = fe;
            } else {
                simplex[lo] = reflect;
                values[lo] = fr;
            }
        } else if fr > values[lo] {
            simplex[lo] = reflect;
            values[lo] = fr;
        } else {
            let contract = clamp(
                centroid.0 + 0.5 * (simplex[lo].0 - centroid.0),
                centroid.1 + 0.5 * (simplex[lo].1 - centroid.1),
            );
            let fc = score(contract, &mut evaluations);
            if fc > values[lo] {
                simplex[lo] = contract;
                values[lo] = fc;
            } else {
                // Shrink toward the best vertex.
                for k in 0..3 {
                    if k == hi {
                        continue;
                    }
                    simplex[k] = clamp(
                        simplex[hi].0 + 0.5 * (simplex[k].0 - simplex[hi].0),
                        simplex[hi].1 + 0.5 * (simplex[k].1 - simplex[hi].1),
                    );
                    values[k] = score(simplex[k], &mut evaluations);
                }
            }
        }
    }

    let mut arg = 0usize;
    for k in 1..3 {
        if values[k] > values[arg] {
            arg = k;
        }
    }
    let (mut best_s, mut best_theta) = simplex[arg];
    let mut best_value = values[arg];

    // Boundary polish: for positive maps the Hilbert supremum sits on the
    // imaginary axis, which grids and simplex steps only approach slowly.
    // A golden-section pass along s hugging each theta boundary costs
    // little and nails the ridge; for maps whose supremum is interior the
    // polished candidates simply lose.
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for sign in [-1.0, 1.0] {
        let theta_b = sign * (std::f64::consts::FRAC_PI_2 - THETA_MARGIN);
        // Coarse scan along the boundary to bracket the ridge maximum.
        let mut scan_best = (f64::NEG_INFINITY, best_s);
        for i in 0..n {
            let s = -S_MAX + 2.0 * S_MAX * (i as f64 + 0.5) / n as f64;
            let v = score((s, theta_b), &mut evaluations);
            if v > scan_best.0 {
                scan_best = (v, s);
            }
        }
        let cell = 2.0 * S_MAX / n as f64;
        let (mut lo, mut hi) = (
            (scan_best.1 - cell).max(-S_MAX),
            (scan_best.1 + cell).min(S_MAX),
        );
        let mut m1 = hi - phi * (hi - lo);
        let mut m2 = lo + phi * (hi - lo);
        let mut f1 = score((m1, theta_b), &mut evaluations);
        let mut f2 = score((m2, theta_b), &mut evaluations);
        for _ in 0..90 {
            if f1 < f2 {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + phi * (hi - lo);
                f2 = score((m2, theta_b), &mut evaluations);
            } else {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - phi * (hi - lo);
                f1 = score((m1, theta_b), &mut evaluations);
            }
        }
        let (s_cand, f_cand) = if f1 >= f2 { (m1, f1) } else { (m2, f2) };
        if f_cand > best_value {
            best_value = f_cand;
            best_s = s_cand;
            best_theta = theta_b;
        }
    }

    Ok(SupEstimate {
        value: best_value,
        z: Complex64::from_polar(best_s.exp(), best_theta),
        s: best_s,
        theta: best_theta,
        evaluations,
    })
}

/// Sampled check that the map sends the half-plane into itself (no pole, no
/// image with nonpositive real part on a coarse log-polar net).
fn preservation_check(m: &MobiusMap) -> Result<()> {
    const CHECK: usize = 48;
    for i in 0..CHECK {
        let s = -S_MAX + 2.0 * S_MAX * (i as f64 + 0.5) / CHECK as f64;
        for j in 0..CHECK {
            let theta = -std::f64::consts::FRAC_PI_2
                + std::f64::consts::PI * (j as f64 + 0.5) / CHECK as f64;
            let z = Complex64::from_polar(s.exp(), theta);
            let denom = m.c * z + m.d;
            if denom.norm() == 0.0 {
                return Err(Error::domain(format!(
                    "map does not preserve the half-plane: pole at z = {z}"
                )));
            }
            let fz = (m.a * z + m.b) / denom;
            if !(fz.re > 0.0) {
                return Err(Error::domain(format!(
                    "map does not preserve the half-plane: f({z}) = {fz}"
                )));
            }
        }
    }
    Ok(())
}
