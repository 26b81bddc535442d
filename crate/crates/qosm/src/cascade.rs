//! Dynamics of the DC regime: the cascade of service classes that appears as
//! the technology constant `c` falls.
//!
//! Class boundaries are powers of the optimal quality: class `k` (k >= 0)
//! serves requests in `(q0^k, q0^(k+1)]` and is itself of quality `q0^(k+1)`.
//! Rescaling demand onto a class interval turns its equilibrium equation into
//! the lowest class's equation with an inflated technology constant,
//!
//! ```text
//! p_k(c) = p_0(c * q0^(k * delta)),    delta = (alpha+2) s - (alpha+1) > 0,
//! ```
//!
//! so the whole cascade reduces to repeated solves of one scalar equation.
//! Class `k` first becomes profitable at `c_k = c_0 * q0^(-k * delta)`.

use crate::demand::{MarketConfig, PriceResponse, QualityDistribution};
use crate::demand::LOG_BRANCH_EPS;
use crate::equilibrium::{self, LhsProfile, SolveOutcome};
use crate::error::{Error, Result};
use crate::regime::{self, Regime, RegimeVerdict};

/// Default enumeration cap for the UDC regime, whose class list is infinite.
pub const DEFAULT_MAX_CLASSES: usize = 32;

/// Relative slack for recognizing a tangency solve at a class's appearance
/// threshold, where rounding may push the target a hair past the peak.
const TANGENCY_SLACK: f64 = 1e-9;

/// One offered class of service at a given technology constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassOutcome {
    /// Class index `k >= 0`; class 0 is the first to appear.
    pub index: usize,
    /// Quality of the service provided, `q0^(k+1)`.
    pub quality: f64,
    /// Lower edge of the served interval, `q0^k`.
    pub lower_boundary: f64,
    /// Largest `c` at which this class is profitable (`+inf` in UDC, where
    /// every class exists at every `c`).
    pub appearance_threshold: f64,
    /// Smallest root of the class's equilibrium equation.
    pub price: f64,
    /// Number of services sold, `h(p) A(q0^k, q0^(k+1))`.
    pub demand: f64,
    /// Demand weighted by quality: equivalent unit-quality services.
    pub weighted_traffic: f64,
    /// `price * demand`.
    pub revenue: f64,
}

/// The set of classes offered at one technology constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeSnapshot {
    pub c: f64,
    pub regime: RegimeVerdict,
    /// Classes in increasing index order. Complete in BDC; a prefix of the
    /// infinite sequence in UDC.
    pub classes: Vec<ClassOutcome>,
    /// True when the list was cut at the enumeration cap (UDC only).
    pub truncated: bool,
}

/// The largest technology constant at which any service is offered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FirstThreshold {
    /// BDC: service first appears when `c` falls below this value.
    Bounded(f64),
    /// UDC: some service is profitable at every `c`.
    Unbounded,
}

/// Precomputed cascade invariants: everything except `c` itself.
struct CascadeModel {
    h: PriceResponse,
    s: f64,
    verdict: RegimeVerdict,
    profile: LhsProfile,
    q0: f64,
    delta: f64,
    w_q0: f64,
    /// Supremum of the left-hand side (peak or borderline limit); `None` when
    /// insensitive.
    ceiling: Option<f64>,
}

impl CascadeModel {
    fn new(f: &QualityDistribution, h: &PriceResponse, s: f64) -> Result<Self> {
        let verdict = regime::classify_regime(f, h, s)?;
        if verdict.regime == Regime::Uc {
            return Err(Error::RequiresDcRegime { regime: Regime::Uc });
        }
        let q0 = verdict.q0.expect("DC verdict carries q0");
        let delta = f.scaling_exponent(s)?;
        let w_q0 = regime::w_shape(f, s, q0)?;
        let profile = equilibrium::classify_lhs(h, s)?;
        let ceiling = match profile {
            LhsProfile::Sensitive { peak_value, .. } => Some(peak_value),
            LhsProfile::Borderline { limit_value } => Some(limit_value),
            LhsProfile::Insensitive => None,
        };
        Ok(Self {
            h: *h,
            s,
            verdict,
            profile,
            q0,
            delta,
            w_q0,
            ceiling,
        })
    }

    fn first_threshold(&self) -> FirstThreshold {
        match self.ceiling {
            Some(ceiling) => FirstThreshold::Bounded(ceiling / self.w_q0),
            None => FirstThreshold::Unbounded,
        }
    }

    /// Number of classes offered at `c`. In the sensitive case the threshold
    /// is closed (class `k` is offered at `c = c_k` exactly); in the
    /// borderline case the supremum is never attained, so it is open.
    fn class_count(&self, c: f64, max_classes: usize) -> usize {
        match self.first_threshold() {
            FirstThreshold::Unbounded => max_classes,
            FirstThreshold::Bounded(c0) => {
                let x = (c0 / c).ln() / (self.delta * self.q0.ln());
                let count = match self.profile {
                    LhsProfile::Borderline { .. } => x.ceil(),
                    _ => x.floor() + 1.0,
                };
                if count <= 0.0 {
                    0
                } else {
                    count as usize
                }
            }
        }
    }

    /// Price of class `k` at technology constant `c`, via the self-similar
    /// reduction to the lowest class.
    fn class_price(&self, k: usize, c: f64) -> Result<SolveOutcome> {
        let c_eff = c * self.q0.powf(k as f64 * self.delta);
        let target = c_eff * self.w_q0;
        let outcome = equilibrium::solve_price_with_profile(&self.h, self.s, &self.profile, target)?;
        if let (SolveOutcome::NoProfit, LhsProfile::Sensitive { peak_price, peak_value }) =
            (&outcome, &self.profile)
        {
            // Tangency at the appearance threshold: the enumeration said the
            // class is offered but rounding pushed the target past the peak.
            if target <= peak_value * (1.0 + TANGENCY_SLACK) {
                return Ok(SolveOutcome::Solved(equilibrium::EquilibriumSolution {
                    price: *peak_price,
                    residual: peak_value - target,
                    multiplicity: equilibrium::Multiplicity::UniqueRoot,
                }));
            }
        }
        Ok(outcome)
    }
}

/// The largest `c` at which the lowest class is profitable: in BDC this is
/// `c_0 = sup(lhs) / w(q0)`, in UDC a class exists for every `c`. Errors in
/// the UC regime.
pub fn first_threshold(
    f: &QualityDistribution,
    h: &PriceResponse,
    s: f64,
) -> Result<FirstThreshold> {
    Ok(CascadeModel::new(f, h, s)?.first_threshold())
}

/// Enumerates every class offered at `cfg.c` (BDC), or the first
/// `max_classes` of the infinite sequence (UDC). Errors in the UC regime.
pub fn snapshot(cfg: &MarketConfig, max_classes: usize) -> Result<CascadeSnapshot> {
    let model = CascadeModel::new(&cfg.f, &cfg.h, cfg.s)?;
    snapshot_with_model(&model, &cfg.f, cfg.c, max_classes)
}

fn snapshot_with_model(
    model: &CascadeModel,
    f: &QualityDistribution,
    c: f64,
    max_classes: usize,
) -> Result<CascadeSnapshot> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
            constraint: "c > 0",
        });
    }
    if max_classes == 0 {
        return Err(Error::InvalidParameter {
            name: "max_classes",
            value: 0.0,
            constraint: "max_classes >= 1",
        });
    }
    let truncated = matches!(model.first_threshold(), FirstThreshold::Unbounded);
    let count = model.class_count(c, max_classes);

    // Near the UC boundary the count formula can reach absurd sizes; let the
    // vector grow instead of reserving it all up front.
    let mut classes = Vec::with_capacity(count.min(1024));
    for k in 0..count {
        let sol = match model.class_price(k, c)? {
            SolveOutcome::Solved(sol) => sol,
            // The enumeration already established profitability; a NoProfit
            // here could only be borderline float dust at the threshold.
            SolveOutcome::NoProfit => break,
        };
        let lower_boundary = model.q0.powf(k as f64);
        let quality = model.q0.powf(k as f64 + 1.0);
        let demand = model.h.eval(sol.price)? * f.cumulative(lower_boundary, quality)?;
        let appearance_threshold = match model.first_threshold() {
            FirstThreshold::Bounded(c0) => c0 * model.q0.powf(-(k as f64) * model.delta),
            FirstThreshold::Unbounded => f64::INFINITY,
        };
        classes.push(ClassOutcome {
            index: k,
            quality,
            lower_boundary,
            appearance_threshold,
            price: sol.price,
            demand,
            weighted_traffic: quality * demand,
            revenue: sol.price * demand,
        });
    }
    Ok(CascadeSnapshot {
        c,
        regime: model.verdict,
        classes,
        truncated,
    })
}

/// One snapshot per grid point. The grid must be strictly decreasing, mirroring
/// the fall of equipment prices over time.
pub fn sweep_c(
    f: &QualityDistribution,
    h: &PriceResponse,
    s: f64,
    c_grid: &[f64],
    max_classes: usize,
) -> Result<Vec<CascadeSnapshot>> {
    for pair in c_grid.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::InvalidParameter {
                name: "c_grid",
                value: pair[1],
                constraint: "strictly decreasing values",
            });
        }
    }
    let model = CascadeModel::new(f, h, s)?;
    c_grid
        .iter()
        .map(|&c| snapshot_with_model(&model, f, c, max_classes))
        .collect()
}

/// Limit of the price ratio `p_(k+1)(c) / p_k(c)` between neighboring classes
/// as `c -> 0`:
///
/// ```text
/// (s / ((2+alpha) s - alpha - 1)) ^ (((2+alpha) s - alpha - 1) / (alpha+1))
/// ```
///
/// which equals `q0^delta`. Always above 1 in the DC regime.
pub fn price_ratio_limit(f: &QualityDistribution, s: f64) -> Result<f64> {
    let alpha = f.power_law_alpha()?;
    let delta = f.scaling_exponent(s)?;
    require_dc(f, s)?;
    let eps = alpha + 1.0;
    if eps.abs() < LOG_BRANCH_EPS {
        Ok((delta * (1.0 - s) / s).exp())
    } else {
        Ok((s / delta).powf(delta / eps))
    }
}

/// Limit of the weighted-traffic ratio between neighboring classes as
/// `c -> 0`. Prices vanish, `h -> 1`, and the ratio collapses to the
/// geometry of the class intervals:
///
/// ```text
/// (q_(k+1) / q_k) * (A(q_k, q_(k+1)) / A(q_(k-1), q_k)) = q0 * q0^(alpha+1)
/// ```
///
/// i.e. `q0^(alpha+2)`; the unweighted demand ratio tends to `q0^(alpha+1)`.
pub fn traffic_ratio_limit(f: &QualityDistribution, s: f64) -> Result<f64> {
    let alpha = f.power_law_alpha()?;
    require_dc(f, s)?;
    let q0 = regime::optimal_quality(f, s)?;
    Ok(q0.powf(alpha + 2.0))
}

fn require_dc(f: &QualityDistribution, s: f64) -> Result<()> {
    let alpha = f.power_law_alpha()?;
    if alpha > -1.0 && s <= (alpha + 1.0) / (alpha + 2.0) {
        return Err(Error::RequiresDcRegime { regime: Regime::Uc });
    }
    Ok(())
}
