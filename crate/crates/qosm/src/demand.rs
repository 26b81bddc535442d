//! Demand-side primitives: the quality distribution `f`, the price response
//! `h`, and the cumulative demand `A(a,b)` with exact closed-form integrals.

use crate::error::{Error, Result};

/// Exponents within this distance of `alpha = -1` use the logarithmic /
/// exponential closed forms for the optimal quality and the ratio limits,
/// where the power form loses one digit of accuracy per digit of `1/(alpha+1)`.
pub(crate) const LOG_BRANCH_EPS: f64 = 1e-9;

/// Distribution of demand over service qualities, `f(q)` for `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QualityDistribution {
    /// `f(q) = q^alpha`. No assumption on the sign of `alpha`.
    PowerLaw { alpha: f64 },
    /// `f(q) = q` up to the cap `q_max`, zero above it.
    TruncatedLinear { q_max: f64 },
}

impl QualityDistribution {
    pub fn power_law(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "a finite real",
            });
        }
        Ok(Self::PowerLaw { alpha })
    }

    pub fn truncated_linear(q_max: f64) -> Result<Self> {
        if !(q_max > 1.0) || !q_max.is_finite() {
            return Err(Error::InvalidParameter {
                name: "q_max",
                value: q_max,
                constraint: "q_max > 1",
            });
        }
        Ok(Self::TruncatedLinear { q_max })
    }

    /// Evaluates `f(q)`.
    pub fn eval(&self, q: f64) -> Result<f64> {
        if !(q >= 1.0) {
            return Err(Error::QualityOutOfRange { q });
        }
        Ok(match *self {
            Self::PowerLaw { alpha } => q.powf(alpha),
            Self::TruncatedLinear { q_max } => {
                if q <= q_max {
                    q
                } else {
                    0.0
                }
            }
        })
    }

    /// Cumulative demand `A(a,b) = integral of f over [a,b]`, in closed form.
    ///
    /// `b` may be `f64::INFINITY`; the integral then converges only for
    /// power laws with `alpha < -1` (the truncated distribution vanishes
    /// above its cap, so an infinite bound reduces to `A(a, q_max)`).
    pub fn cumulative(&self, a: f64, b: f64) -> Result<f64> {
        if !(a >= 1.0) || !(b >= a) || a.is_infinite() {
            return Err(Error::InvalidInterval { a, b });
        }
        match *self {
            Self::PowerLaw { alpha } => {
                let eps = alpha + 1.0;
                if b.is_infinite() {
                    let value = -a.powf(eps) / eps;
                    if eps < 0.0 && value.is_finite() {
                        // -a^(alpha+1) / (alpha+1)
                        Ok(value)
                    } else {
                        Err(Error::DivergentIntegral { a, alpha })
                    }
                } else if eps == 0.0 {
                    // alpha = -1: the integral of 1/q.
                    Ok((b / a).ln())
                } else {
                    // a^eps * expm1(eps * ln(b/a)) / eps is the power-law
                    // integral rewritten without cancellation near eps = 0.
                    Ok(a.powf(eps) * (eps * (b / a).ln()).exp_m1() / eps)
                }
            }
            Self::TruncatedLinear { q_max } => {
                let hi = b.min(q_max);
                let lo = a.min(q_max);
                Ok((hi * hi - lo * lo) / 2.0)
            }
        }
    }

    /// The exponent `delta = (alpha+2) s - (alpha+1)` that rescales the
    /// technology constant between successive classes of service.
    ///
    /// `delta > 0` exactly when the market is in the DC regime.
    pub fn scaling_exponent(&self, s: f64) -> Result<f64> {
        let alpha = self.power_law_alpha()?;
        check_scale_exponent(s)?;
        Ok((alpha + 2.0) * s - (alpha + 1.0))
    }

    /// Returns `alpha`, or an error for non-power-law distributions.
    pub(crate) fn power_law_alpha(&self) -> Result<f64> {
        match *self {
            Self::PowerLaw { alpha } => Ok(alpha),
            Self::TruncatedLinear { .. } => Err(Error::UnsupportedDistribution),
        }
    }
}

/// Price response `h(p)`, normalized so that `h(0) = 1`, strictly decreasing,
/// vanishing as `p -> inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriceResponse {
    /// `h(p) = 1 / (1 + (a p)^beta)` with `beta > 0`, `a > 0`.
    Rational { beta: f64, a: f64 },
    /// `h(p) = e^-p`.
    Exponential,
    /// `h(p) = e^(-p^2)`.
    Gaussian,
}

impl PriceResponse {
    pub fn rational(beta: f64, a: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                constraint: "beta > 0",
            });
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                constraint: "a > 0",
            });
        }
        Ok(Self::Rational { beta, a })
    }

    /// Evaluates `h(p)`; `eval(0)` is exactly 1 for every variant.
    pub fn eval(&self, p: f64) -> Result<f64> {
        if !(p >= 0.0) {
            return Err(Error::NegativePrice { p });
        }
        Ok(match *self {
            Self::Rational { beta, a } => 1.0 / (1.0 + (a * p).powf(beta)),
            Self::Exponential => (-p).exp(),
            Self::Gaussian => (-p * p).exp(),
        })
    }

    /// `ln h(p)` for `p > 0`, computed without overflow at prices where the
    /// direct form saturates (large `(a p)^beta` or underflowing tails).
    pub(crate) fn ln_eval(&self, p: f64) -> f64 {
        match *self {
            Self::Rational { beta, a } => {
                // -ln(1 + e^t) with t = beta ln(a p).
                let t = beta * (a.ln() + p.ln());
                if t > 33.0 {
                    -t - (-t).exp().ln_1p()
                } else {
                    -t.exp().ln_1p()
                }
            }
            Self::Exponential => -p,
            Self::Gaussian => -p * p,
        }
    }
}

/// A fully specified market instance: demand sides `f` and `h`, economies of
/// scale `s`, technology constant `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketConfig {
    pub f: QualityDistribution,
    pub h: PriceResponse,
    pub s: f64,
    pub c: f64,
}

impl MarketConfig {
    pub fn new(f: QualityDistribution, h: PriceResponse, s: f64, c: f64) -> Result<Self> {
        check_scale_exponent(s)?;
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                constraint: "c > 0",
            });
        }
        Ok(Self { f, h, s, c })
    }
}

pub(crate) fn check_scale_exponent(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            constraint: "0 < s < 1",
        });
    }
    Ok(())
}
