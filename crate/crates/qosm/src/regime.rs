//! Market regime classification: universal class (UC) versus differentiated
//! classes (DC), with the DC sub-regimes BDC (bounded, finitely many classes)
//! and UDC (unbounded, infinitely many).
//!
//! The deciding object is the right-hand-side shape function
//! `w(b) = b^s A(1,b)^-(1-s)`. If `w` decreases for all `b` the market is UC:
//! one class of ever-higher quality undercuts everything. If `w` has an
//! interior minimum `q0`, classes of finite quality emerge; demand price
//! sensitivity then splits DC into BDC and UDC.

use crate::demand::{check_scale_exponent, MarketConfig, PriceResponse, QualityDistribution};
use crate::demand::LOG_BRANCH_EPS;
use crate::equilibrium::{self, LhsKind, SolveOutcome};
use crate::error::{Error, Result};

/// Market regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Universal class: a single class serves requests of arbitrary quality.
    Uc,
    /// Bounded differentiated classes: finitely many classes at any `c`.
    Bdc,
    /// Unbounded differentiated classes: infinitely many classes at any `c`.
    Udc,
}

impl Regime {
    pub fn is_dc(&self) -> bool {
        matches!(self, Regime::Bdc | Regime::Udc)
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Uc => "UC",
            Regime::Bdc => "BDC",
            Regime::Udc => "UDC",
        })
    }
}

/// Classification result together with the quantities that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeVerdict {
    pub regime: Regime,
    /// Quality of the lowest class, present iff the regime is DC.
    pub q0: Option<f64>,
    /// Signed `s - (alpha+1)/(alpha+2)` for `alpha > -1`; `+inf` for
    /// `alpha <= -1`, where the market is DC regardless of `s`.
    pub boundary_margin: f64,
    /// Shape of the equilibrium equation's left-hand side.
    pub sensitivity: LhsKind,
}

/// Shape function `w(b) = b^s A(1,b)^-(1-s)` of the equilibrium equation's
/// right side, for power-law demand. Tends to `+inf` as `b -> 1+`.
pub fn w_shape(f: &QualityDistribution, s: f64, b: f64) -> Result<f64> {
    let _ = f.power_law_alpha()?;
    check_scale_exponent(s)?;
    if !(b > 1.0) || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            constraint: "1 < b < inf",
        });
    }
    Ok(b.powf(s) * f.cumulative(1.0, b)?.powf(-(1.0 - s)))
}

/// Classifies the market: UC iff `alpha > -1` and `s <= (alpha+1)/(alpha+2)`
/// (points exactly on the boundary count as UC), DC otherwise. A DC market is
/// BDC when the left-hand side peaks (sensitive or borderline demand) and UDC
/// when it grows without bound.
pub fn classify_regime(
    f: &QualityDistribution,
    h: &PriceResponse,
    s: f64,
) -> Result<RegimeVerdict> {
    let alpha = f.power_law_alpha()?;
    check_scale_exponent(s)?;
    let sensitivity = equilibrium::classify_lhs(h, s)?.kind();

    let boundary_margin = if alpha > -1.0 {
        s - (alpha + 1.0) / (alpha + 2.0)
    } else {
        f64::INFINITY
    };
    let is_uc = alpha > -1.0 && boundary_margin <= 0.0;

    if is_uc {
        Ok(RegimeVerdict {
            regime: Regime::Uc,
            q0: None,
            boundary_margin,
            sensitivity,
        })
    } else {
        let regime = match sensitivity {
            LhsKind::Sensitive | LhsKind::Borderline => Regime::Bdc,
            LhsKind::Insensitive => Regime::Udc,
        };
        Ok(RegimeVerdict {
            regime,
            q0: Some(optimal_quality(f, s)?),
            boundary_margin,
            sensitivity,
        })
    }
}

/// The quality `q0 > 1` minimizing [`w_shape`] — the quality of the lowest
/// class of service, independent of `c` and of the price response:
///
/// ```text
/// q0 = (s / ((2+alpha) s - alpha - 1))^(1/(alpha+1)),   alpha != -1
/// q0 = e^((1-s)/s),                                     alpha  = -1
/// ```
///
/// Errors in the UC regime, where `w` has no interior minimum.
pub fn optimal_quality(f: &QualityDistribution, s: f64) -> Result<f64> {
    let alpha = f.power_law_alpha()?;
    check_scale_exponent(s)?;
    if alpha > -1.0 && s <= (alpha + 1.0) / (alpha + 2.0) {
        return Err(Error::RequiresDcRegime { regime: Regime::Uc });
    }
    let eps = alpha + 1.0;
    if eps.abs() < LOG_BRANCH_EPS {
        Ok(((1.0 - s) / s).exp())
    } else {
        let delta = (alpha + 2.0) * s - (alpha + 1.0);
        Ok((s / delta).powf(1.0 / eps))
    }
}

/// One row of a quality scan: the equilibrium outcome of offering quality
/// `quality` in isolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityPoint {
    pub quality: f64,
    pub price: f64,
    pub demand: f64,
    pub weighted_traffic: f64,
    pub revenue: f64,
}

/// Price, traffic, and revenue across a grid of candidate qualities, plus the
/// two distinguished points: the price minimizer (what competition selects)
/// and the revenue maximizer (what a monopolist would prefer).
#[derive(Debug, Clone, PartialEq)]
pub struct QualityScan {
    /// Profitable grid points, in grid order. Unprofitable qualities are
    /// omitted.
    pub points: Vec<QualityPoint>,
    pub min_price_quality: Option<f64>,
    pub max_revenue_quality: Option<f64>,
}

/// Solves the equilibrium at every quality on `grid` and reports where the
/// price is minimal and where the revenue is maximal. Ties resolve to the
/// lowest quality, so results are deterministic in grid order.
pub fn competitive_vs_monopoly(cfg: &MarketConfig, grid: &[f64]) -> Result<QualityScan> {
    let mut points = Vec::new();
    for &b in grid {
        if !(b > 1.0) || !b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "quality grid point",
                value: b,
                constraint: "1 < b < inf",
            });
        }
        let target = equilibrium::rhs(&cfg.f, cfg.s, cfg.c, 1.0, b)?;
        if let SolveOutcome::Solved(sol) = equilibrium::solve_price(&cfg.h, cfg.s, target)? {
            let demand = cfg.h.eval(sol.price)? * cfg.f.cumulative(1.0, b)?;
            points.push(QualityPoint {
                quality: b,
                price: sol.price,
                demand,
                weighted_traffic: b * demand,
                revenue: sol.price * demand,
            });
        }
    }
    let min_price_quality = points
        .iter()
        .fold(None::<&QualityPoint>, |best, p| match best {
            Some(b) if b.price <= p.price => Some(b),
            _ => Some(p),
        })
        .map(|p| p.quality);
    let max_revenue_quality = points
        .iter()
        .fold(None::<&QualityPoint>, |best, p| match best {
            Some(b) if b.revenue >= p.revenue => Some(b),
            _ => Some(p),
        })
        .map(|p| p.quality);
    Ok(QualityScan {
        points,
        min_price_quality,
        max_revenue_quality,
    })
}
