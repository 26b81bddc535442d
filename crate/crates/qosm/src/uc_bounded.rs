//! Bounded-quality variant of the UC regime: demand is capped at a quality
//! `q_max`, with `f(q) = q` below the cap, `s = 2/3`, and `h(p) = 1/(1+p^3)`.
//!
//! With those choices the service provided, if any, is of quality `q_max` and
//! its price solves
//!
//! ```text
//! p / (1 + p^3)^(1/3) = 2^(1/3) * c * q_max^(2/3) * (q_max^2 - 1)^(-1/3)
//! ```
//!
//! whose left side rises strictly toward the supremum 1. Service exists
//! exactly when the right side is below 1, i.e. for `c` strictly below
//! [`uc_threshold`]. A generalized variant accepts any `(s, h)` and
//! re-derives the best quality under the cap numerically.

use crate::demand::{check_scale_exponent, PriceResponse, QualityDistribution};
use crate::equilibrium::{self, SolveOutcome};
use crate::error::{Error, Result};
use crate::numeric;

/// A bounded-quality market: cap `q_max` and technology constant `c`.
/// The scale exponent and price response are fixed by the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedUcConfig {
    pub q_max: f64,
    pub c: f64,
}

impl BoundedUcConfig {
    pub fn new(q_max: f64, c: f64) -> Result<Self> {
        check_q_max(q_max)?;
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                constraint: "c > 0",
            });
        }
        Ok(Self { q_max, c })
    }
}

/// Equilibrium of the bounded market. The single offered class always has
/// quality `q_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UcEquilibrium {
    pub quality: f64,
    pub price: f64,
    /// Signed equation residual at `price`.
    pub residual: f64,
    pub demand: f64,
    pub weighted_traffic: f64,
    pub revenue: f64,
}

/// Outcome of a bounded-UC solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UcOutcome {
    Offered(UcEquilibrium),
    NoProfit,
}

impl UcOutcome {
    pub fn offered(&self) -> Option<&UcEquilibrium> {
        match self {
            Self::Offered(eq) => Some(eq),
            Self::NoProfit => None,
        }
    }
}

fn check_q_max(q_max: f64) -> Result<()> {
    if !(q_max > 1.0) || !q_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "q_max",
            value: q_max,
            constraint: "q_max > 1",
        });
    }
    Ok(())
}

/// The no-service threshold `c* = 2^(-1/3) q_max^(-2/3) (q_max^2 - 1)^(1/3)`:
/// service exists iff `c < c*`. The threshold is the `c` at which the right
/// side of the equilibrium equation reaches the left side's supremum of 1,
/// which is never attained, so `c = c*` itself yields no service.
pub fn uc_threshold(q_max: f64) -> Result<f64> {
    check_q_max(q_max)?;
    Ok(2.0f64.powf(-1.0 / 3.0) * q_max.powf(-2.0 / 3.0) * (q_max * q_max - 1.0).powf(1.0 / 3.0))
}

/// Solves the bounded-UC equilibrium: price, demand, weighted traffic, and
/// revenue of the single class of quality `q_max`, or `NoProfit` when
/// `c >= c*`. The residual of a returned price is at most `1e-12`.
pub fn uc_equilibrium(cfg: &BoundedUcConfig) -> Result<UcOutcome> {
    let q_max = cfg.q_max;
    let target =
        2.0f64.powf(1.0 / 3.0) * cfg.c * q_max.powf(2.0 / 3.0) * (q_max * q_max - 1.0).powf(-1.0 / 3.0);
    if target >= 1.0 {
        return Ok(UcOutcome::NoProfit);
    }
    let lhs = |p: f64| p / (1.0 + p * p * p).powf(1.0 / 3.0);
    let tol = 1e-12 * target.max(1.0);
    let hi = numeric::expand_until_at_least(lhs, target, 1.0)?;
    let price = numeric::bracketed_root(|p| lhs(p) - target, 0.0, hi, tol)?;

    let h = 1.0 / (1.0 + price * price * price);
    let demand = h * (q_max * q_max - 1.0) / 2.0;
    Ok(UcOutcome::Offered(UcEquilibrium {
        quality: q_max,
        price,
        residual: lhs(price) - target,
        demand,
        weighted_traffic: q_max * demand,
        revenue: price * demand,
    }))
}

/// Generalized bounded-quality model: any scale exponent and price response,
/// with demand `f(q) = q` truncated at `q_max`.
///
/// The best quality is not assumed to be the cap: the right-hand side is
/// minimized over `b` in `(1, q_max]` on a log grid refined by golden-section
/// search, and the equilibrium is solved at the minimizer. Returns the chosen
/// quality and the outcome.
pub fn uc_equilibrium_general(
    q_max: f64,
    s: f64,
    h: &PriceResponse,
    c: f64,
) -> Result<(f64, UcOutcome)> {
    check_q_max(q_max)?;
    check_scale_exponent(s)?;
    let f = QualityDistribution::truncated_linear(q_max)?;
    let rhs_at = |b: f64| equilibrium::rhs(&f, s, c, 1.0, b).unwrap_or(f64::INFINITY);

    // Coarse log grid over (1, q_max], then a local refine. The shape is
    // smooth with at most one interior minimum.
    const GRID: usize = 512;
    let lo = 1.0 + (q_max - 1.0) * 1e-9;
    let ratio = q_max / lo;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..=GRID {
        let b = lo * ratio.powf(i as f64 / GRID as f64);
        let v = rhs_at(b);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let bracket_lo = lo * ratio.powf(best_i.saturating_sub(1) as f64 / GRID as f64);
    let bracket_hi = lo * ratio.powf((best_i + 1).min(GRID) as f64 / GRID as f64);
    let (b_star, _) = numeric::golden_section_min(rhs_at, bracket_lo, bracket_hi, 200);

    let target = equilibrium::rhs(&f, s, c, 1.0, b_star)?;
    let outcome = match equilibrium::solve_price(h, s, target)? {
        SolveOutcome::Solved(sol) => {
            let demand = h.eval(sol.price)? * f.cumulative(1.0, b_star)?;
            UcOutcome::Offered(UcEquilibrium {
                quality: b_star,
                price: sol.price,
                residual: sol.residual,
                demand,
                weighted_traffic: b_star * demand,
                revenue: sol.price * demand,
            })
        }
        SolveOutcome::NoProfit => UcOutcome::NoProfit,
    };
    Ok((b_star, outcome))
}
