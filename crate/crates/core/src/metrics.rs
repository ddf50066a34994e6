//! Projective metrics on simplex domains.
//!
//! Four distances are provided:
//!
//! * [`hilbert_real`] — the classical Hilbert projective metric on the
//!   interior of the real simplex,
//! * [`hilbert_complex`] — its extension to complex simplex points with
//!   positive real parts, using the principal branch of the logarithm,
//! * [`poincare_dp`] — an alternative complex metric built from the Poincaré
//!   metric of the right half-plane,
//! * [`halfplane_hilbert`] / [`halfplane_poincare`] — the closed forms both
//!   metrics take in the two-dimensional case under the ratio coordinate.
//!
//! [`delta_witness`] decides (sufficiently, not necessarily) membership in
//! the relative delta-neighborhood of the real interior inside the complex
//! simplex, and is the building block of the invariance certifier.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::simplex::{ComplexSimplexPoint, HalfPlanePoint, RealSimplexPoint};

/// Principal log of `z`, rejecting the branch cut.
///
/// `Arg` is taken in (-pi, pi]; arguments exactly on the negative real axis
/// (or zero) are refused rather than assigned `Arg = pi`, since the metric
/// domains exclude them and silently accepting them produces branch
/// discontinuities.
fn principal_log(z: Complex64, what: &str) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("{what}: nonfinite ratio {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain(format!(
            "{what}: ratio {z} lies on the branch cut of the principal logarithm"
        )));
    }
    Ok(Complex64::new(z.norm().ln(), z.im.atan2(z.re)))
}

/// Real Hilbert metric `max_{i,j} log((w_i/w_j) / (v_i/v_j))` between
/// interior simplex points.
///
/// Shares the pairwise evaluation with [`hilbert_complex`], so the complex
/// metric restricted to real points equals this one bit for bit (the pair
/// expression `(w_i v_j)/(w_j v_i)` is also literally invariant under
/// swapping the arguments, which makes both metrics exactly symmetric).
pub fn hilbert_real(v: &RealSimplexPoint, w: &RealSimplexPoint) -> Result<f64> {
    if v.dim() != w.dim() {
        return Err(Error::domain("dimension mismatch"));
    }
    v.require_interior()?;
    w.require_interior()?;
    hilbert_complex(&v.to_complex(), &w.to_complex())
}

/// Complex Hilbert metric `max_{i,j} |Log((w_i/w_j) / (v_i/v_j))|` on
/// `W_C^+`, with `Log` the principal branch.
pub fn hilbert_complex(v: &ComplexSimplexPoint, w: &ComplexSimplexPoint) -> Result<f64> {
    if v.dim() != w.dim() {
        return Err(Error::domain("dimension mismatch"));
    }
    v.require_positive_half("v")?;
    w.require_positive_half("w")?;
    let wc = w.coords();
    let vc = v.coords();
    let mut best = 0.0f64;
    for i in 0..wc.len() {
        for j in 0..wc.len() {
            if i == j {
                continue;
            }
            // (w_i/w_j) / (v_i/v_j) without intermediate overflow concerns:
            // coordinates are O(1) on the simplex.
            let ratio = (wc[i] * vc[j]) / (wc[j] * vc[i]);
            let log = principal_log(ratio, "complex Hilbert metric")?;
            best = best.max(log.norm());
        }
    }
    Ok(best)
}

/// The Poincaré-based complex metric `d_P` on `W_C^+`.
///
/// For each ordered pair `(i, j)` the quantity
/// `(|conj(w_i) v_j + conj(w_j) v_i| ± |w_i v_j - w_j v_i|) / (2 Re(conj(w_i) w_j))`
/// is formed; the metric is the log of the ratio of the pair maximum (with
/// `+`) to the pair minimum (with `-`).
pub fn poincare_dp(v: &ComplexSimplexPoint, w: &ComplexSimplexPoint) -> Result<f64> {
    if v.dim() != w.dim() {
        return Err(Error::domain("dimension mismatch"));
    }
    v.require_positive_half("v")?;
    w.require_positive_half("w")?;
    let wc = w.coords();
    let vc = v.coords();
    let mut max_term = f64::NEG_INFINITY;
    let mut min_term = f64::INFINITY;
    let mut min_pair = (0, 0);
    for i in 0..wc.len() {
        for j in 0..wc.len() {
            let denom = 2.0 * (wc[i].conj() * wc[j]).re;
            if denom <= 0.0 {
                return Err(Error::domain(format!(
                    "d_P undefined: 2 Re(conj(w_{i}) w_{j}) = {denom} <= 0"
                )));
            }
            let sym = (wc[i].conj() * vc[j] + wc[j].conj() * vc[i]).norm();
            let anti = (wc[i] * vc[j] - wc[j] * vc[i]).norm();
            max_term = max_term.max((sym + anti) / denom);
            let lower = (sym - anti) / denom;
            if lower < min_term {
                min_term = lower;
                min_pair = (i, j);
            }
        }
    }
    if min_term <= 0.0 {
        return Err(Error::domain(format!(
            "d_P undefined: pair minimum {min_term} <= 0 at (i, j) = {min_pair:?}"
        )));
    }
    Ok((max_term / min_term).ln())
}

/// Two-dimensional complex Hilbert metric in the ratio coordinate:
/// `|Log(z1/z2)|`.
pub fn halfplane_hilbert(z1: HalfPlanePoint, z2: HalfPlanePoint) -> Result<f64> {
    let log = principal_log(z1.value() / z2.value(), "half-plane Hilbert metric")?;
    Ok(log.norm())
}

/// Poincaré metric of the open right half-plane:
/// `log((|z1 + conj(z2)| + |z1 - z2|) / (|z1 + conj(z2)| - |z1 - z2|))`.
pub fn halfplane_poincare(z1: HalfPlanePoint, z2: HalfPlanePoint) -> Result<f64> {
    let a = (z1.value() + z2.value().conj()).norm();
    let b = (z1.value() - z2.value()).norm();
    let denom = a - b;
    if denom <= 0.0 {
        return Err(Error::domain(format!(
            "half-plane Poincare metric undefined: |z1 + conj z2| - |z1 - z2| = {denom} <= 0"
        )));
    }
    Ok(((a + b) / denom).ln())
}

/// Relative tolerance slack used when checking the witness inequality, so a
/// point constructed exactly on the boundary is not rejected for one ulp.
const WITNESS_SLACK: f64 = 1e-12;

/// Sufficient check for membership of `v` in the relative delta-neighborhood
/// of the real simplex interior.
///
/// The candidate witness is the normalized vector of real parts
/// `u_i = Re(v_i) / sum_k Re(v_k)`; if `|v_i - u_i| <= delta * u_i` for every
/// coordinate, `u` proves membership and is returned. `None` means the
/// heuristic found no witness — which does not prove non-membership; the
/// check is sufficient, not necessary.
///
/// `delta` must lie in (0, 1): the neighborhood only stays inside `W_C^+`
/// (where the complex Hilbert metric is defined) for `delta < 1`.
pub fn delta_witness(v: &ComplexSimplexPoint, delta: f64) -> Result<Option<RealSimplexPoint>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::argument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let re_sum: f64 = v.coords().iter().map(|c| c.re).sum();
    if re_sum <= 0.0 {
        return Ok(None);
    }
    let u: Vec<f64> = v.coords().iter().map(|c| c.re / re_sum).collect();
    if u.iter().any(|&ui| ui <= 0.0) {
        return Ok(None);
    }
    let ok = v.coords().iter().zip(&u).all(|(&vi, &ui)| {
        (vi - Complex64::new(ui, 0.0)).norm() <= delta * ui * (1.0 + WITNESS_SLACK)
    });
    if !ok {
        return Ok(None);
    }
    Ok(Some(RealSimplexPoint::interior(u)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rsp(coords: &[f64]) -> RealSimplexPoint {
        RealSimplexPoint::new(coords.to_vec()).unwrap()
    }

    fn csp(coords: &[(f64, f64)]) -> ComplexSimplexPoint {
        ComplexSimplexPoint::new(
            coords
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap()
    }

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn hilbert_real_identity() {
        let v = rsp(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(hilbert_real(&v, &v).unwrap(), 0.0);
    }

    #[test]
    fn hilbert_real_hand_value() {
        // max ratio (3/1)/(1/1) = 3.
        let v = rsp(&[0.5, 0.5]);
        let w = rsp(&[0.25, 0.75]);
        let d = hilbert_real(&v, &w).unwrap();
        assert!((d - 3.0f64.ln()).abs() < 1e-12, "got {d}");
    }

    #[test]
    fn hilbert_real_matches_pair_enumeration() {
        let v = rsp(&[0.2, 0.3, 0.5]);
        let w = rsp(&[0.5, 0.3, 0.2]);
        let d = hilbert_real(&v, &w).unwrap();
        let mut brute = f64::NEG_INFINITY;
        for i in 0..3 {
            for j in 0..3 {
                let r = ((w.coords()[i] / w.coords()[j]) / (v.coords()[i] / v.coords()[j])).ln();
                brute = brute.max(r);
            }
        }
        assert!((d - brute).abs() < 1e-12);
    }

    #[test]
    fn hilbert_real_rejects_boundary() {
        let v = RealSimplexPoint::new(vec![1.0, 0.0]).unwrap();
        let w = rsp(&[0.5, 0.5]);
        assert!(hilbert_real(&v, &w).is_err());
    }

    #[test]
    fn hilbert_complex_identity_and_real_reduction() {
        let v = csp(&[(0.4, 0.05), (0.6, -0.05)]);
        assert_eq!(hilbert_complex(&v, &v).unwrap(), 0.0);

        let a = rsp(&[0.2, 0.3, 0.5]);
        let b = rsp(&[0.1, 0.6, 0.3]);
        let dc = hilbert_complex(&a.to_complex(), &b.to_complex()).unwrap();
        let dr = hilbert_real(&a, &b).unwrap();
        assert_eq!(dc, dr);
    }

    #[test]
    fn hilbert_complex_rejects_nonpositive_real_part() {
        let v = csp(&[(-0.1, 0.3), (1.1, -0.3)]);
        let w = csp(&[(0.5, 0.0), (0.5, 0.0)]);
        assert!(hilbert_complex(&v, &w).is_err());
    }

    #[test]
    fn hilbert_complex_rejects_branch_cut() {
        // Both points lie in W_C^+ but the pair ratio
        // (w_0 v_1)/(w_1 v_0) = (0.5+0.5i)^2/(0.5-0.5i)^2 = -1 lands
        // exactly on the cut of the principal logarithm.
        let v = csp(&[(0.5, -0.5), (0.5, 0.5)]);
        let w = csp(&[(0.5, 0.5), (0.5, -0.5)]);
        assert!(v.in_positive_half() && w.in_positive_half());
        match hilbert_complex(&v, &w) {
            Err(Error::Domain(msg)) => assert!(msg.contains("branch cut"), "{msg}"),
            other => panic!("expected a branch-cut domain error, got {other:?}"),
        }
    }

    #[test]
    fn halfplane_hilbert_values() {
        assert_eq!(halfplane_hilbert(hp(1.0, 0.0), hp(1.0, 0.0)).unwrap(), 0.0);
        let d = halfplane_hilbert(hp(std::f64::consts::E, 0.0), hp(1.0, 0.0)).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        // |Log(1+i)| = sqrt(log(sqrt 2)^2 + (pi/4)^2)
        let d = halfplane_hilbert(hp(1.0, 1.0), hp(1.0, 0.0)).unwrap();
        let expect = ((2.0f64.sqrt().ln()).powi(2) + (std::f64::consts::FRAC_PI_4).powi(2)).sqrt();
        assert!((d - expect).abs() < 1e-12);
    }

    #[test]
    fn halfplane_poincare_values() {
        assert_eq!(halfplane_poincare(hp(2.0, 1.0), hp(2.0, 1.0)).unwrap(), 0.0);
        // z1 = 2, z2 = 1: log((3+1)/(3-1)) = log 2.
        let d = halfplane_poincare(hp(2.0, 0.0), hp(1.0, 0.0)).unwrap();
        assert!((d - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn halfplane_poincare_blows_up_near_imaginary_axis() {
        let z2 = hp(1.0, 0.0);
        let mut last = 0.0;
        for k in 1..=12 {
            let d = halfplane_poincare(hp(10f64.powi(-k), 1.0), z2).unwrap();
            assert!(d > last, "not increasing at k={k}: {d} <= {last}");
            last = d;
        }
        assert!(last > 10.0);
    }

    #[test]
    fn delta_witness_real_point_is_its_own_witness() {
        let v = rsp(&[0.2, 0.3, 0.5]).to_complex();
        let w = delta_witness(&v, 0.05).unwrap().unwrap();
        assert_eq!(w.coords(), &[0.2, 0.3, 0.5]);
    }

    #[test]
    fn delta_witness_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = RealSimplexPoint::sample_interior(3, &mut rng);
            let delta = 0.2;
            // Multiplicative perturbation of relative size delta/2.
            let coords: Vec<Complex64> = u
                .coords()
                .iter()
                .map(|&ui| {
                    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::new(ui, 0.0)
                        * (Complex64::ONE + Complex64::from_polar(delta / 2.0, phase))
                })
                .collect();
            let sum: Complex64 = coords.iter().sum();
            let v = ComplexSimplexPoint::new(coords.iter().map(|c| c / sum).collect());
            let Ok(v) = v else { continue };
            // Renormalization may push the point outside the delta-ball of
            // the original u; the heuristic must still find *some* witness
            // for most draws. Tolerate rare misses only by checking the
            // found witness certifies membership.
            if let Some(w) = delta_witness(&v, delta).unwrap() {
                for (vi, wi) in v.coords().iter().zip(w.coords()) {
                    assert!((vi - Complex64::new(*wi, 0.0)).norm() <= delta * wi * (1.0 + 1e-9));
                }
            } else {
                panic!("witness not found for a delta/2 perturbation");
            }
        }
    }

    #[test]
    fn delta_witness_rejects_bad_delta() {
        let v = rsp(&[0.5, 0.5]).to_complex();
        assert!(delta_witness(&v, 1.0).is_err());
        assert!(delta_witness(&v, 0.0).is_err());
    }

    #[test]
    fn delta_witness_fails_nonpositive_real_part() {
        let v = csp(&[(-0.05, 0.2), (1.05, -0.2)]);
        assert!(delta_witness(&v, 0.1).unwrap().is_none());
    }

    #[test]
    fn dp_identity() {
        let w = csp(&[(0.4, 0.03), (0.35, -0.01), (0.25, -0.02)]);
        let d = poincare_dp(&w, &w).unwrap();
        assert!(d.abs() < 1e-12);
    }
}
