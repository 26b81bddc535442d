//! Equilibrium analysis of quality-differentiated service markets under
//! economies of scale.
//!
//! A service of quality `q >= 1` costs as much to produce as `q` services of
//! quality one, and producing `w` unit-quality services costs `c * w^s` with
//! `0 < s < 1`. Demand decouples into a quality distribution `f(q)` and a
//! price response `h(p)`. Under perfect competition each offered class of
//! service is priced at the smallest root of
//!
//! ```text
//! p * h(p)^(1-s) = c * b^s * A(low, b)^-(1-s)
//! ```
//!
//! where `A` is the cumulative demand over the class's quality interval.
//!
//! The crate solves that equation, classifies markets into the universal-class
//! (UC) and differentiated-classes (BDC / UDC) regimes, enumerates the cascade
//! of service classes that appears as the technology constant `c` falls, and
//! computes the asymptotic price and traffic ratios between neighboring
//! classes. The `qosm` binary exposes all of it as CLI subcommands emitting
//! deterministic CSV/JSON.

pub mod cascade;
pub mod demand;
pub mod equilibrium;
mod error;
pub(crate) mod numeric;
pub mod regime;
pub mod uc_bounded;

pub use cascade::{
    first_threshold, price_ratio_limit, snapshot, sweep_c, traffic_ratio_limit, CascadeSnapshot,
    ClassOutcome, FirstThreshold, DEFAULT_MAX_CLASSES,
};
pub use demand::{MarketConfig, PriceResponse, QualityDistribution};
pub use equilibrium::{
    classify_lhs, lhs, rhs, solve_price, EquilibriumSolution, LhsKind, LhsProfile, Multiplicity,
    SolveOutcome,
};
pub use error::{Error, Result};
pub use regime::{
    classify_regime, competitive_vs_monopoly, optimal_quality, w_shape, QualityPoint, QualityScan,
    Regime, RegimeVerdict,
};
pub use uc_bounded::{
    uc_equilibrium, uc_equilibrium_general, uc_threshold, BoundedUcConfig, UcEquilibrium, UcOutcome,
};
