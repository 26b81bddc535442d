use thiserror::Error;

use crate::regime::Regime;

/// Errors produced by the market model.
///
/// `NoProfit` is deliberately *not* an error: operations for which an
/// unprofitable market is a routine outcome return it as a value (see
/// [`crate::SolveOutcome`] and [`crate::UcOutcome`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quality must be >= 1 (got {q})")]
    QualityOutOfRange { q: f64 },

    #[error("price must be >= 0 (got {p})")]
    NegativePrice { p: f64 },

    #[error("invalid parameter `{name}` = {value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("quality bounds must satisfy 1 <= {a} <= {b}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("cumulative demand diverges on [{a}, inf) for alpha = {alpha}")]
    DivergentIntegral { a: f64, alpha: f64 },

    #[error("operation is defined only for power-law quality distributions")]
    UnsupportedDistribution,

    #[error("cumulative demand over [{low}, {b}] is zero")]
    EmptyDemand { low: f64, b: f64 },

    #[error("operation requires the DC regime (market is {regime})")]
    RequiresDcRegime { regime: Regime },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
