//! Internal one-dimensional solvers. The equilibrium equation is smooth and
//! monotone on the bracket we hand it, so robustness beats speed: bisection
//! with a secant step whenever the secant stays strictly inside the bracket.

use crate::error::{Error, Result};

pub(crate) const ROOT_MAX_ITER: usize = 200;

/// Finds `x` in `[lo, hi]` with `|g(x)| <= tol`, given `g(lo) <= 0 <= g(hi)`
/// and a `g` that crosses zero once on the bracket.
pub(crate) fn bracketed_root(
    g: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut g_lo = g(lo);
    let mut g_hi = g(hi);
    debug_assert!(g_lo <= 0.0 && g_hi >= 0.0);
    if g_lo.abs() <= tol {
        return Ok(lo);
    }
    if g_hi.abs() <= tol {
        return Ok(hi);
    }

    for iter in 0..ROOT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        // Secant candidate on even iterations, kept only if it falls strictly
        // inside; forced bisection on odd ones so the bracket provably
        // shrinks (plain false position can pin one endpoint).
        let mut x = mid;
        if iter % 2 == 0 {
            let secant = lo - g_lo * (hi - lo) / (g_hi - g_lo);
            if secant > lo && secant < hi {
                x = secant;
            }
        }
        let g_x = g(x);
        if g_x.abs() <= tol {
            return Ok(x);
        }
        if g_x < 0.0 {
            lo = x;
            g_lo = g_x;
        } else {
            hi = x;
            g_hi = g_x;
        }
        // Bracket exhausted to rounding: return the better endpoint.
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            let best = if g_lo.abs() <= g_hi.abs() { lo } else { hi };
            if g(best).abs() <= tol {
                return Ok(best);
            }
            break;
        }
    }
    Err(Error::NoConvergence {
        what: "equilibrium root search",
        iterations: ROOT_MAX_ITER,
    })
}

/// Doubles `hi` from `start` until `f(hi) >= target`. Fails when the bracket
/// leaves the representable range first, which happens for targets whose
/// root overflows f64 (e.g. a barely-insensitive response at a large target).
pub(crate) fn expand_until_at_least(
    f: impl Fn(f64) -> f64,
    target: f64,
    start: f64,
) -> Result<f64> {
    let mut hi = start;
    for _ in 0..1100 {
        if f(hi) >= target {
            return Ok(hi);
        }
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence {
        what: "bracket expansion",
        iterations: 1100,
    })
}

/// Golden-section minimization of `f` on `[a, b]`. Returns `(x_min, f_min)`.
pub(crate) fn golden_section_min(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    max_evals: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;

    while evals < max_evals && (b - a).abs() > f64::EPSILON * b.abs().max(1.0) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_cubic() {
        let r = bracketed_root(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2.0f64.cbrt()).abs() < 1e-9);
    }

    #[test]
    fn root_accepts_endpoint_solution() {
        let r = bracketed_root(|x| x - 1.0, 0.0, 1.0, 1e-14).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn expansion_reaches_target() {
        let hi = expand_until_at_least(|x| x, 37.0, 1.0).unwrap();
        assert!(hi >= 37.0);
    }

    #[test]
    fn golden_section_finds_parabola_min() {
        let (x, _) = golden_section_min(|x| (x - 1.3) * (x - 1.3), 0.0, 4.0, 200);
        assert!((x - 1.3).abs() < 1e-7);
    }
}
