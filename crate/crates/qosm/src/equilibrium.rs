//! The competitive equilibrium equation and its smallest-root pricing.
//!
//! Both sides of `p h(p)^(1-s) = c b^s A(low,b)^-(1-s)` are exposed
//! separately: the left side depends only on the price response and the
//! economies of scale, the right side only on the demand distribution and the
//! class boundaries. [`solve_price`] intersects them.

use crate::demand::{check_scale_exponent, PriceResponse, QualityDistribution};
use crate::error::{Error, Result};
use crate::numeric;

/// Relative tolerance on the equation residual at a returned price.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Relative slack used to recognize the borderline family `beta (1-s) = 1`
/// under floating-point evaluation of the product.
const BORDERLINE_EPS: f64 = 8.0 * f64::EPSILON;

/// Shape of the left-hand side `p h(p)^(1-s)` as a function of price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LhsProfile {
    /// Rises to a single interior maximum, then decays to zero. High prices
    /// choke demand faster than they raise revenue per service.
    Sensitive { peak_price: f64, peak_value: f64 },
    /// Strictly increasing and unbounded: demand is incompressible.
    Insensitive,
    /// Strictly increasing toward a finite limit (only `beta (1-s) = 1`).
    Borderline { limit_value: f64 },
}

/// The shape tag of an [`LhsProfile`] without its numeric payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhsKind {
    Sensitive,
    Insensitive,
    Borderline,
}

impl LhsProfile {
    pub fn kind(&self) -> LhsKind {
        match self {
            Self::Sensitive { .. } => LhsKind::Sensitive,
            Self::Insensitive => LhsKind::Insensitive,
            Self::Borderline { .. } => LhsKind::Borderline,
        }
    }
}

impl std::fmt::Display for LhsKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Sensitive => "sensitive",
            Self::Insensitive => "insensitive",
            Self::Borderline => "borderline",
        })
    }
}

/// Whether the returned root was the only intersection or the smallest of
/// several (competition discards the larger ones).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    UniqueRoot,
    SmallestOfSeveral,
}

/// A solved equilibrium price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumSolution {
    /// Smallest positive price solving the equation.
    pub price: f64,
    /// Signed `lhs(price) - target` left by the solver.
    pub residual: f64,
    pub multiplicity: Multiplicity,
}

/// Outcome of a price solve; an unprofitable class is a normal result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveOutcome {
    Solved(EquilibriumSolution),
    NoProfit,
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&EquilibriumSolution> {
        match self {
            Self::Solved(sol) => Some(sol),
            Self::NoProfit => None,
        }
    }
}

/// Left-hand side `p * h(p)^(1-s)`; zero at `p = 0`.
///
/// Evaluated as `exp(ln p + (1-s) ln h(p))`: near the insensitive/borderline
/// boundary the root can sit at prices where `(a p)^beta` overflows even
/// though the product itself is moderate.
pub fn lhs(h: &PriceResponse, s: f64, p: f64) -> Result<f64> {
    check_scale_exponent(s)?;
    if !(p >= 0.0) {
        return Err(Error::NegativePrice { p });
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((p.ln() + (1.0 - s) * h.ln_eval(p)).exp())
}

/// Classifies the left-hand side and, when it peaks, locates the peak in
/// closed form:
///
/// * rational: `(a p*)^beta = 1 / ((1-s) beta - 1)`,
/// * exponential: `p* = 1 / (1-s)`,
/// * gaussian: `p* = 1 / sqrt(2 (1-s))`.
///
/// A rational response is sensitive iff `beta > 1/(1-s)`, insensitive iff
/// `beta < 1/(1-s)`; the exponential and gaussian families are sensitive for
/// every `s`.
pub fn classify_lhs(h: &PriceResponse, s: f64) -> Result<LhsProfile> {
    check_scale_exponent(s)?;
    let one_minus_s = 1.0 - s;
    match *h {
        PriceResponse::Rational { beta, a } => {
            let product = beta * one_minus_s;
            if (product - 1.0).abs() <= BORDERLINE_EPS * product.max(1.0) {
                // lhs -> (1/a) (a p) / (1 + (a p)^beta)^(1/beta) -> 1/a.
                Ok(LhsProfile::Borderline { limit_value: 1.0 / a })
            } else if product > 1.0 {
                let peak_price = (1.0 / (product - 1.0)).powf(1.0 / beta) / a;
                let peak_value = lhs(h, s, peak_price)?;
                Ok(LhsProfile::Sensitive {
                    peak_price,
                    peak_value,
                })
            } else {
                Ok(LhsProfile::Insensitive)
            }
        }
        PriceResponse::Exponential => {
            let peak_price = 1.0 / one_minus_s;
            let peak_value = lhs(h, s, peak_price)?;
            Ok(LhsProfile::Sensitive {
                peak_price,
                peak_value,
            })
        }
        PriceResponse::Gaussian => {
            let peak_price = 1.0 / (2.0 * one_minus_s).sqrt();
            let peak_value = lhs(h, s, peak_price)?;
            Ok(LhsProfile::Sensitive {
                peak_price,
                peak_value,
            })
        }
    }
}

/// Right-hand side `c * b^s * A(low,b)^-(1-s)` of the equilibrium equation.
///
/// `low` is 1 for the lowest class and the previous class boundary for the
/// classes above it.
pub fn rhs(f: &QualityDistribution, s: f64, c: f64, low: f64, b: f64) -> Result<f64> {
    check_scale_exponent(s)?;
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
            constraint: "c > 0",
        });
    }
    if !(low >= 1.0) || !(b > low) || b.is_infinite() {
        return Err(Error::InvalidInterval { a: low, b });
    }
    let demand = f.cumulative(low, b)?;
    if demand <= 0.0 {
        return Err(Error::EmptyDemand { low, b });
    }
    Ok(c * b.powf(s) * demand.powf(-(1.0 - s)))
}

/// Finds the smallest positive `p` with `lhs(p) = target`, or reports that no
/// profitable price exists.
///
/// The residual of any returned price satisfies
/// `|lhs(p) - target| <= ROOT_TOLERANCE * max(1, target)`.
pub fn solve_price(h: &PriceResponse, s: f64, target: f64) -> Result<SolveOutcome> {
    let profile = classify_lhs(h, s)?;
    solve_price_with_profile(h, s, &profile, target)
}

/// As [`solve_price`] but reusing an already computed profile; cascade
/// enumeration calls this once per class.
pub fn solve_price_with_profile(
    h: &PriceResponse,
    s: f64,
    profile: &LhsProfile,
    target: f64,
) -> Result<SolveOutcome> {
    check_scale_exponent(s)?;
    if !(target > 0.0) || !target.is_finite() {
        return Err(Error::InvalidParameter {
            name: "target",
            value: target,
            constraint: "a finite value > 0",
        });
    }
    let tol = ROOT_TOLERANCE * target.max(1.0);
    let g = |p: f64| lhs(h, s, p).expect("lhs is defined for p >= 0") - target;

    match *profile {
        LhsProfile::Sensitive {
            peak_price,
            peak_value,
        } => {
            if peak_value < target {
                return Ok(SolveOutcome::NoProfit);
            }
            let price = numeric::bracketed_root(g, 0.0, peak_price, tol)?;
            let multiplicity = if target < peak_value {
                Multiplicity::SmallestOfSeveral
            } else {
                Multiplicity::UniqueRoot
            };
            Ok(SolveOutcome::Solved(EquilibriumSolution {
                price,
                residual: g(price),
                multiplicity,
            }))
        }
        LhsProfile::Insensitive => {
            let hi = numeric::expand_until_at_least(|p| g(p) + target, target, 1.0)?;
            let price = numeric::bracketed_root(g, 0.0, hi, tol)?;
            Ok(SolveOutcome::Solved(EquilibriumSolution {
                price,
                residual: g(price),
                multiplicity: Multiplicity::UniqueRoot,
            }))
        }
        LhsProfile::Borderline { limit_value } => {
            if target >= limit_value {
                return Ok(SolveOutcome::NoProfit);
            }
            let hi = numeric::expand_until_at_least(|p| g(p) + target, target, 1.0)?;
            let price = numeric::bracketed_root(g, 0.0, hi, tol)?;
            Ok(SolveOutcome::Solved(EquilibriumSolution {
                price,
                residual: g(price),
                multiplicity: Multiplicity::UniqueRoot,
            }))
        }
    }
}
