//! Small numeric building blocks shared across modules.
//!
//! These are deliberately minimal: a sign-change bisection, a golden-section
//! minimizer, adaptive Simpson quadrature, and a central difference. Module
//! code composes them instead of reimplementing loops inline.

use crate::{Error, Result};

/// Refines a sign change of `f` inside `[lo, hi]` down to interval width
/// `tol` and returns the midpoint.
///
/// The caller must supply a genuine bracket (`f(lo)` and `f(hi)` with
/// opposite signs); zero values are treated as belonging to either side.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_lo > 0.0) == (f_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// Shrinks the bracket until its width is below `xatol` and returns the best
/// abscissa/value pair seen. On non-unimodal input it still converges to a
/// local minimum inside the bracket.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xatol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > xatol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximization wrapper around [`golden_min`].
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xatol: f64) -> (f64, f64) {
    let (x, neg) = golden_min(|t| -f(t), lo, hi, xatol);
    (x, -neg)
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]` with absolute target
/// accuracy `tol`.
///
/// Subdivision follows the classic |S(a,m)+S(m,b)−S(a,b)|/15 estimate; an
/// interval that still disagrees at the maximum recursion depth aborts the
/// whole integral with [`Error::QuadratureFailure`] rather than returning a
/// silently degraded value.
pub(crate) fn adaptive_simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureFailure { tol, lo: a, hi: b });
        }
        let half = 0.5 * tol;
        Ok(recurse(f, a, m, fa, flm, fm, left, half, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, half, depth - 1)?)
    }

    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::invalid(format!(
            "quadrature interval must be finite and increasing, got [{lo}, {hi}]"
        )));
    }
    let m = 0.5 * (lo + hi);
    let (fa, fm, fb) = (f(lo), f(m), f(hi));
    let whole = simpson(lo, hi, fa, fm, fb);
    recurse(&f, lo, hi, fa, fm, fb, whole, tol, 48)
}
