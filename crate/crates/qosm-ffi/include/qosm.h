#ifndef QOSM_H
#define QOSM_H

/* Generated by cbindgen from the qosm-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every FFI call.
typedef enum {
  // Success.
  QOSM_STATUS_OK = 0,
  // The market clears no service under these parameters; outputs are unset.
  QOSM_STATUS_NO_PROFIT = 1,
  // A parameter violated its documented domain.
  QOSM_STATUS_INVALID_ARGUMENT = 2,
  // The operation is only defined in the DC regime.
  QOSM_STATUS_WRONG_REGIME = 3,
  // The requested integral diverges.
  QOSM_STATUS_DIVERGENT = 4,
  // A required pointer was null.
  QOSM_STATUS_NULL_POINTER = 5,
  // Internal solver failure.
  QOSM_STATUS_INTERNAL = 6,
} QosmStatus;

// Price-response family selector for market constructors.
typedef enum {
  // `h(p) = 1 / (1 + (a p)^beta)`; `beta` and `a` must be positive.
  QOSM_PRICE_FAMILY_RATIONAL = 0,
  // `h(p) = e^-p`; `beta` and `a` are ignored.
  QOSM_PRICE_FAMILY_EXPONENTIAL = 1,
  // `h(p) = e^(-p^2)`; `beta` and `a` are ignored.
  QOSM_PRICE_FAMILY_GAUSSIAN = 2,
} QosmPriceFamily;

// Market regime.
typedef enum {
  QOSM_REGIME_UC = 0,
  QOSM_REGIME_BDC = 1,
  QOSM_REGIME_UDC = 2,
} QosmRegime;

// Shape of the equilibrium equation's left-hand side.
typedef enum {
  QOSM_SENSITIVITY_SENSITIVE = 0,
  QOSM_SENSITIVITY_INSENSITIVE = 1,
  QOSM_SENSITIVITY_BORDERLINE = 2,
} QosmSensitivity;

// Opaque market handle.
typedef struct QosmMarket QosmMarket;

// Opaque cascade snapshot handle.
typedef struct QosmSnapshot QosmSnapshot;

// Regime classification result.
typedef struct {
  QosmRegime regime;
  QosmSensitivity sensitivity;
  // True when the market is DC and `q0` is meaningful.
  bool has_q0;
  // Quality of the lowest class (0 when `has_q0` is false).
  double q0;
  // `s - (alpha+1)/(alpha+2)` for `alpha > -1`, `+inf` otherwise.
  double boundary_margin;
} QosmVerdict;

// One solved equilibrium: a class of service and its market quantities.
typedef struct {
  double quality;
  double price;
  // Signed equation residual left by the root solver.
  double residual;
  double demand;
  double weighted_traffic;
  double revenue;
} QosmEquilibrium;

// One class of a cascade snapshot.
typedef struct {
  // Class index (0 is the first class to appear).
  uintptr_t index;
  // Quality of the service provided, `q0^(index+1)`.
  double quality;
  // Lower edge of the served quality interval, `q0^index`.
  double lower_boundary;
  // Largest technology constant at which the class is profitable
  // (`+inf` in the UDC regime).
  double appearance_threshold;
  double price;
  double demand;
  double weighted_traffic;
  double revenue;
} QosmClassOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a market with power-law demand `f(q) = q^alpha`.
//
// `beta` and `a` are only read for the rational price family. On success
// `*out` owns the market; release it with [`qosm_market_free`].
//
// # Safety
// `out` must be a valid pointer to a `QosmMarket*`.
QosmStatus qosm_market_power_law(double alpha,
                                 double s,
                                 double c,
                                 QosmPriceFamily family,
                                 double beta,
                                 double a,
                                 QosmMarket **out);

// Creates a market with linear demand truncated at the cap `q_max`.
//
// # Safety
// `out` must be a valid pointer to a `QosmMarket*`.
QosmStatus qosm_market_truncated_linear(double q_max,
                                        double s,
                                        double c,
                                        QosmPriceFamily family,
                                        double beta,
                                        double a,
                                        QosmMarket **out);

// Releases a market handle. Null is a no-op.
//
// # Safety
// `market` must have been returned by a qosm constructor and not yet freed.
void qosm_market_free(QosmMarket *market);

// Classifies the market into UC / BDC / UDC.
//
// # Safety
// `market` must be a live handle; `out` must point to a `QosmVerdict`.
QosmStatus qosm_market_classify(const QosmMarket *market, QosmVerdict *out);

// The largest technology constant at which any service is offered. In the
// UDC regime `*out_threshold` is set to `+inf` and `*out_unbounded` to true.
//
// # Safety
// `market` must be a live handle; both out-pointers must be valid.
QosmStatus qosm_market_first_threshold(const QosmMarket *market,
                                       double *out_threshold,
                                       bool *out_unbounded);

// Quality of the lowest class of service, `q0` (DC regime only).
//
// # Safety
// `market` must be a live handle; `out` must be valid.
QosmStatus qosm_market_optimal_quality(const QosmMarket *market, double *out);

// Limit of the price ratio between neighboring classes as `c -> 0`.
//
// # Safety
// `market` must be a live handle; `out` must be valid.
QosmStatus qosm_market_price_ratio_limit(const QosmMarket *market, double *out);

// Limit of the weighted-traffic ratio between neighboring classes as
// `c -> 0`.
//
// # Safety
// `market` must be a live handle; `out` must be valid.
QosmStatus qosm_market_traffic_ratio_limit(const QosmMarket *market, double *out);

// Solves the equilibrium for a single class of quality `quality` serving
// all demand from quality 1 up. Returns `NoProfit` when the equation has no
// root at this technology constant.
//
// # Safety
// `market` must be a live handle; `out` must point to a `QosmEquilibrium`.
QosmStatus qosm_market_solve_at(const QosmMarket *market, double quality, QosmEquilibrium *out);

// Enumerates the cascade of classes offered at the market's technology
// constant. On success `*out` owns the snapshot; release it with
// [`qosm_snapshot_free`].
//
// # Safety
// `market` must be a live handle; `out` must be a valid pointer to a
// `QosmSnapshot*`.
QosmStatus qosm_market_snapshot(const QosmMarket *market,
                                uintptr_t max_classes,
                                QosmSnapshot **out);

// Number of classes in a snapshot; 0 for a null handle.
//
// # Safety
// `snapshot` must be a live handle or null.
uintptr_t qosm_snapshot_class_count(const QosmSnapshot *snapshot);

// Whether the class list was cut at the enumeration cap (UDC regime).
//
// # Safety
// `snapshot` must be a live handle or null.
bool qosm_snapshot_is_truncated(const QosmSnapshot *snapshot);

// Copies class `index` of the snapshot into `*out`.
//
// # Safety
// `snapshot` must be a live handle; `out` must point to `QosmClassOutcome`.
QosmStatus qosm_snapshot_class(const QosmSnapshot *snapshot,
                               uintptr_t index,
                               QosmClassOutcome *out);

// Releases a snapshot handle. Null is a no-op.
//
// # Safety
// `snapshot` must have been returned by [`qosm_market_snapshot`] and not yet
// freed.
void qosm_snapshot_free(QosmSnapshot *snapshot);

// Cumulative demand `A(a, b)` of a power-law distribution; `b` may be
// `+inf`, in which case the integral must converge (`alpha < -1`).
//
// # Safety
// `out` must be valid.
QosmStatus qosm_cumulative_demand_power_law(double alpha, double a, double b, double *out);

// No-service threshold `c*` of the bounded-quality UC model.
//
// # Safety
// `out` must be valid.
QosmStatus qosm_uc_threshold(double q_max, double *out);

// Equilibrium of the bounded-quality UC model (quality cap `q_max`,
// technology constant `c`). Returns `NoProfit` when `c >= c*`.
//
// # Safety
// `out` must point to a `QosmEquilibrium`.
QosmStatus qosm_uc_equilibrium(double q_max, double c, QosmEquilibrium *out);

// Static human-readable name of a status code; never needs freeing.
const char *qosm_status_name(QosmStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QOSM_H */
