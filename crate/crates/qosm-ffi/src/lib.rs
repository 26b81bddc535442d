//! C ABI for the qosm market-equilibrium library.
//!
//! Markets and cascade snapshots are opaque handles created and destroyed
//! here; every other type crossing the boundary is a flat `repr(C)` struct.
//! All functions return a [`QosmStatus`]; `QOSM_STATUS_NO_PROFIT` is a normal
//! outcome (the market clears nothing at that technology constant), not an
//! error. The build script generates `include/qosm.h` with cbindgen.

use std::os::raw::c_char;

use qosm::{
    BoundedUcConfig, FirstThreshold, LhsKind, MarketConfig, PriceResponse, QualityDistribution,
    Regime, SolveOutcome, UcOutcome,
};

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QosmStatus {
    /// Success.
    Ok = 0,
    /// The market clears no service under these parameters; outputs are unset.
    NoProfit = 1,
    /// A parameter violated its documented domain.
    InvalidArgument = 2,
    /// The operation is only defined in the DC regime.
    WrongRegime = 3,
    /// The requested integral diverges.
    Divergent = 4,
    /// A required pointer was null.
    NullPointer = 5,
    /// Internal solver failure.
    Internal = 6,
}

/// Price-response family selector for market constructors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QosmPriceFamily {
    /// `h(p) = 1 / (1 + (a p)^beta)`; `beta` and `a` must be positive.
    Rational = 0,
    /// `h(p) = e^-p`; `beta` and `a` are ignored.
    Exponential = 1,
    /// `h(p) = e^(-p^2)`; `beta` and `a` are ignored.
    Gaussian = 2,
}

/// Market regime.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QosmRegime {
    Uc = 0,
    Bdc = 1,
    Udc = 2,
}

/// Shape of the equilibrium equation's left-hand side.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QosmSensitivity {
    Sensitive = 0,
    Insensitive = 1,
    Borderline = 2,
}

/// Regime classification result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QosmVerdict {
    pub regime: QosmRegime,
    pub sensitivity: QosmSensitivity,
    /// True when the market is DC and `q0` is meaningful.
    pub has_q0: bool,
    /// Quality of the lowest class (0 when `has_q0` is false).
    pub q0: f64,
    /// `s - (alpha+1)/(alpha+2)` for `alpha > -1`, `+inf` otherwise.
    pub boundary_margin: f64,
}

/// One solved equilibrium: a class of service and its market quantities.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QosmEquilibrium {
    pub quality: f64,
    pub price: f64,
    /// Signed equation residual left by the root solver.
    pub residual: f64,
    pub demand: f64,
    pub weighted_traffic: f64,
    pub revenue: f64,
}

/// One class of a cascade snapshot.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QosmClassOutcome {
    /// Class index (0 is the first class to appear).
    pub index: usize,
    /// Quality of the service provided, `q0^(index+1)`.
    pub quality: f64,
    /// Lower edge of the served quality interval, `q0^index`.
    pub lower_boundary: f64,
    /// Largest technology constant at which the class is profitable
    /// (`+inf` in the UDC regime).
    pub appearance_threshold: f64,
    pub price: f64,
    pub demand: f64,
    pub weighted_traffic: f64,
    pub revenue: f64,
}

/// Opaque market handle.
pub struct QosmMarket {
    inner: MarketConfig,
}

/// Opaque cascade snapshot handle.
pub struct QosmSnapshot {
    classes: Vec<QosmClassOutcome>,
    truncated: bool,
}

fn status_of(err: &qosm::Error) -> QosmStatus {
    match err {
        qosm::Error::RequiresDcRegime { .. } => QosmStatus::WrongRegime,
        qosm::Error::DivergentIntegral { .. } => QosmStatus::Divergent,
        qosm::Error::NoConvergence { .. } => QosmStatus::Internal,
        _ => QosmStatus::InvalidArgument,
    }
}

fn build_response(family: QosmPriceFamily, beta: f64, a: f64) -> Result<PriceResponse, QosmStatus> {
    match family {
        QosmPriceFamily::Rational => PriceResponse::rational(beta, a).map_err(|e| status_of(&e)),
        QosmPriceFamily::Exponential => Ok(PriceResponse::Exponential),
        QosmPriceFamily::Gaussian => Ok(PriceResponse::Gaussian),
    }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> QosmStatus {
    if out.is_null() {
        return QosmStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    QosmStatus::Ok
}

/// Creates a market with power-law demand `f(q) = q^alpha`.
///
/// `beta` and `a` are only read for the rational price family. On success
/// `*out` owns the market; release it with [`qosm_market_free`].
///
/// # Safety
/// `out` must be a valid pointer to a `QosmMarket*`.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_power_law(
    alpha: f64,
    s: f64,
    c: f64,
    family: QosmPriceFamily,
    beta: f64,
    a: f64,
    out: *mut *mut QosmMarket,
) -> QosmStatus {
    let f = match QualityDistribution::power_law(alpha) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    let h = match build_response(family, beta, a) {
        Ok(h) => h,
        Err(status) => return status,
    };
    match MarketConfig::new(f, h, s, c) {
        Ok(cfg) => write_handle(out, QosmMarket { inner: cfg }),
        Err(e) => status_of(&e),
    }
}

/// Creates a market with linear demand truncated at the cap `q_max`.
///
/// # Safety
/// `out` must be a valid pointer to a `QosmMarket*`.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_truncated_linear(
    q_max: f64,
    s: f64,
    c: f64,
    family: QosmPriceFamily,
    beta: f64,
    a: f64,
    out: *mut *mut QosmMarket,
) -> QosmStatus {
    let f = match QualityDistribution::truncated_linear(q_max) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    let h = match build_response(family, beta, a) {
        Ok(h) => h,
        Err(status) => return status,
    };
    match MarketConfig::new(f, h, s, c) {
        Ok(cfg) => write_handle(out, QosmMarket { inner: cfg }),
        Err(e) => status_of(&e),
    }
}

/// Releases a market handle. Null is a no-op.
///
/// # Safety
/// `market` must have been returned by a qosm constructor and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_free(market: *mut QosmMarket) {
    if !market.is_null() {
        drop(Box::from_raw(market));
    }
}

/// Classifies the market into UC / BDC / UDC.
///
/// # Safety
/// `market` must be a live handle; `out` must point to a `QosmVerdict`.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_classify(
    market: *const QosmMarket,
    out: *mut QosmVerdict,
) -> QosmStatus {
    if market.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::classify_regime(&cfg.f, &cfg.h, cfg.s) {
        Ok(verdict) => {
            *out = QosmVerdict {
                regime: match verdict.regime {
                    Regime::Uc => QosmRegime::Uc,
                    Regime::Bdc => QosmRegime::Bdc,
                    Regime::Udc => QosmRegime::Udc,
                },
                sensitivity: match verdict.sensitivity {
                    LhsKind::Sensitive => QosmSensitivity::Sensitive,
                    LhsKind::Insensitive => QosmSensitivity::Insensitive,
                    LhsKind::Borderline => QosmSensitivity::Borderline,
                },
                has_q0: verdict.q0.is_some(),
                q0: verdict.q0.unwrap_or(0.0),
                boundary_margin: verdict.boundary_margin,
            };
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The largest technology constant at which any service is offered. In the
/// UDC regime `*out_threshold` is set to `+inf` and `*out_unbounded` to true.
///
/// # Safety
/// `market` must be a live handle; both out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_first_threshold(
    market: *const QosmMarket,
    out_threshold: *mut f64,
    out_unbounded: *mut bool,
) -> QosmStatus {
    if market.is_null() || out_threshold.is_null() || out_unbounded.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::first_threshold(&cfg.f, &cfg.h, cfg.s) {
        Ok(FirstThreshold::Bounded(c0)) => {
            *out_threshold = c0;
            *out_unbounded = false;
            QosmStatus::Ok
        }
        Ok(FirstThreshold::Unbounded) => {
            *out_threshold = f64::INFINITY;
            *out_unbounded = true;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Quality of the lowest class of service, `q0` (DC regime only).
///
/// # Safety
/// `market` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_optimal_quality(
    market: *const QosmMarket,
    out: *mut f64,
) -> QosmStatus {
    if market.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::optimal_quality(&cfg.f, cfg.s) {
        Ok(q0) => {
            *out = q0;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Limit of the price ratio between neighboring classes as `c -> 0`.
///
/// # Safety
/// `market` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_price_ratio_limit(
    market: *const QosmMarket,
    out: *mut f64,
) -> QosmStatus {
    if market.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::price_ratio_limit(&cfg.f, cfg.s) {
        Ok(v) => {
            *out = v;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Limit of the weighted-traffic ratio between neighboring classes as
/// `c -> 0`.
///
/// # Safety
/// `market` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_traffic_ratio_limit(
    market: *const QosmMarket,
    out: *mut f64,
) -> QosmStatus {
    if market.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::traffic_ratio_limit(&cfg.f, cfg.s) {
        Ok(v) => {
            *out = v;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Solves the equilibrium for a single class of quality `quality` serving
/// all demand from quality 1 up. Returns `NoProfit` when the equation has no
/// root at this technology constant.
///
/// # Safety
/// `market` must be a live handle; `out` must point to a `QosmEquilibrium`.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_solve_at(
    market: *const QosmMarket,
    quality: f64,
    out: *mut QosmEquilibrium,
) -> QosmStatus {
    if market.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    let target = match qosm::rhs(&cfg.f, cfg.s, cfg.c, 1.0, quality) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    match qosm::solve_price(&cfg.h, cfg.s, target) {
        Ok(SolveOutcome::Solved(sol)) => {
            let demand = match (cfg.h.eval(sol.price), cfg.f.cumulative(1.0, quality)) {
                (Ok(h), Ok(a)) => h * a,
                _ => return QosmStatus::Internal,
            };
            *out = QosmEquilibrium {
                quality,
                price: sol.price,
                residual: sol.residual,
                demand,
                weighted_traffic: quality * demand,
                revenue: sol.price * demand,
            };
            QosmStatus::Ok
        }
        Ok(SolveOutcome::NoProfit) => QosmStatus::NoProfit,
        Err(e) => status_of(&e),
    }
}

/// Enumerates the cascade of classes offered at the market's technology
/// constant. On success `*out` owns the snapshot; release it with
/// [`qosm_snapshot_free`].
///
/// # Safety
/// `market` must be a live handle; `out` must be a valid pointer to a
/// `QosmSnapshot*`.
#[no_mangle]
pub unsafe extern "C" fn qosm_market_snapshot(
    market: *const QosmMarket,
    max_classes: usize,
    out: *mut *mut QosmSnapshot,
) -> QosmStatus {
    if market.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = &(*market).inner;
    match qosm::snapshot(cfg, max_classes) {
        Ok(snap) => {
            let classes = snap
                .classes
                .iter()
                .map(|c| QosmClassOutcome {
                    index: c.index,
                    quality: c.quality,
                    lower_boundary: c.lower_boundary,
                    appearance_threshold: c.appearance_threshold,
                    price: c.price,
                    demand: c.demand,
                    weighted_traffic: c.weighted_traffic,
                    revenue: c.revenue,
                })
                .collect();
            write_handle(
                out,
                QosmSnapshot {
                    classes,
                    truncated: snap.truncated,
                },
            )
        }
        Err(e) => status_of(&e),
    }
}

/// Number of classes in a snapshot; 0 for a null handle.
///
/// # Safety
/// `snapshot` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qosm_snapshot_class_count(snapshot: *const QosmSnapshot) -> usize {
    if snapshot.is_null() {
        0
    } else {
        (*snapshot).classes.len()
    }
}

/// Whether the class list was cut at the enumeration cap (UDC regime).
///
/// # Safety
/// `snapshot` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qosm_snapshot_is_truncated(snapshot: *const QosmSnapshot) -> bool {
    if snapshot.is_null() {
        false
    } else {
        (*snapshot).truncated
    }
}

/// Copies class `index` of the snapshot into `*out`.
///
/// # Safety
/// `snapshot` must be a live handle; `out` must point to `QosmClassOutcome`.
#[no_mangle]
pub unsafe extern "C" fn qosm_snapshot_class(
    snapshot: *const QosmSnapshot,
    index: usize,
    out: *mut QosmClassOutcome,
) -> QosmStatus {
    if snapshot.is_null() || out.is_null() {
        return QosmStatus::NullPointer;
    }
    match (&(*snapshot).classes).get(index) {
        Some(class) => {
            *out = *class;
            QosmStatus::Ok
        }
        None => QosmStatus::InvalidArgument,
    }
}

/// Releases a snapshot handle. Null is a no-op.
///
/// # Safety
/// `snapshot` must have been returned by [`qosm_market_snapshot`] and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn qosm_snapshot_free(snapshot: *mut QosmSnapshot) {
    if !snapshot.is_null() {
        drop(Box::from_raw(snapshot));
    }
}

/// Cumulative demand `A(a, b)` of a power-law distribution; `b` may be
/// `+inf`, in which case the integral must converge (`alpha < -1`).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_cumulative_demand_power_law(
    alpha: f64,
    a: f64,
    b: f64,
    out: *mut f64,
) -> QosmStatus {
    if out.is_null() {
        return QosmStatus::NullPointer;
    }
    let f = match QualityDistribution::power_law(alpha) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    match f.cumulative(a, b) {
        Ok(v) => {
            *out = v;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// No-service threshold `c*` of the bounded-quality UC model.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qosm_uc_threshold(q_max: f64, out: *mut f64) -> QosmStatus {
    if out.is_null() {
        return QosmStatus::NullPointer;
    }
    match qosm::uc_threshold(q_max) {
        Ok(v) => {
            *out = v;
            QosmStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Equilibrium of the bounded-quality UC model (quality cap `q_max`,
/// technology constant `c`). Returns `NoProfit` when `c >= c*`.
///
/// # Safety
/// `out` must point to a `QosmEquilibrium`.
#[no_mangle]
pub unsafe extern "C" fn qosm_uc_equilibrium(
    q_max: f64,
    c: f64,
    out: *mut QosmEquilibrium,
) -> QosmStatus {
    if out.is_null() {
        return QosmStatus::NullPointer;
    }
    let cfg = match BoundedUcConfig::new(q_max, c) {
        Ok(cfg) => cfg,
        Err(e) => return status_of(&e),
    };
    match qosm::uc_equilibrium(&cfg) {
        Ok(UcOutcome::Offered(eq)) => {
            *out = QosmEquilibrium {
                quality: eq.quality,
                price: eq.price,
                residual: eq.residual,
                demand: eq.demand,
                weighted_traffic: eq.weighted_traffic,
                revenue: eq.revenue,
            };
            QosmStatus::Ok
        }
        Ok(UcOutcome::NoProfit) => QosmStatus::NoProfit,
        Err(e) => status_of(&e),
    }
}

/// Static human-readable name of a status code; never needs freeing.
#[no_mangle]
pub extern "C" fn qosm_status_name(status: QosmStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        QosmStatus::Ok => b"ok\0",
        QosmStatus::NoProfit => b"no profit\0",
        QosmStatus::InvalidArgument => b"invalid argument\0",
        QosmStatus::WrongRegime => b"wrong regime\0",
        QosmStatus::Divergent => b"divergent integral\0",
        QosmStatus::NullPointer => b"null pointer\0",
        QosmStatus::Internal => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}
