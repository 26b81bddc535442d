//! Property tests for the cascade dynamics: self-similarity of class prices,
//! appearance thresholds, and the asymptotic price and traffic ratios.

mod common;

use common::TestRng;
use qosm::{
    first_threshold, price_ratio_limit, rhs, snapshot, solve_price, sweep_c, traffic_ratio_limit,
    FirstThreshold, MarketConfig, PriceResponse, QualityDistribution, Regime, SolveOutcome,
};

fn power(alpha: f64) -> QualityDistribution {
    QualityDistribution::power_law(alpha).unwrap()
}

fn bdc_parts() -> (QualityDistribution, PriceResponse, f64) {
    (
        power(-2.5),
        PriceResponse::rational(6.0, 0.7).unwrap(),
        2.0 / 3.0,
    )
}

fn bounded_c0(f: &QualityDistribution, h: &PriceResponse, s: f64) -> f64 {
    match first_threshold(f, h, s).unwrap() {
        FirstThreshold::Bounded(c0) => c0,
        FirstThreshold::Unbounded => panic!("expected a bounded threshold"),
    }
}

/// Price of class k at constant c by direct root-solve of the class's own
/// equation, without the self-similar shortcut.
fn class_price_direct(
    f: &QualityDistribution,
    h: &PriceResponse,
    s: f64,
    q0: f64,
    k: usize,
    c: f64,
) -> Option<f64> {
    let low = q0.powf(k as f64);
    let b = q0.powf(k as f64 + 1.0);
    let target = rhs(f, s, c, low, b).unwrap();
    match solve_price(h, s, target).unwrap() {
        SolveOutcome::Solved(sol) => Some(sol.price),
        SolveOutcome::NoProfit => None,
    }
}

/// Samples a sensitive (BDC) configuration: rational response safely above
/// the borderline, or the always-sensitive exponential/gaussian families.
fn sample_bdc(rng: &mut TestRng) -> (QualityDistribution, PriceResponse, f64) {
    loop {
        let (alpha, s) = common::sample_dc_shape(rng);
        let h = match rng.next_u64() % 3 {
            0 => PriceResponse::Exponential,
            1 => PriceResponse::Gaussian,
            _ => {
                let floor = 1.0 / (1.0 - s);
                PriceResponse::rational(floor * rng.uniform(1.3, 3.0), rng.uniform(0.3, 3.0))
                    .unwrap()
            }
        };
        let f = power(alpha);
        if qosm::classify_regime(&f, &h, s).unwrap().regime == Regime::Bdc {
            return (f, h, s);
        }
    }
}

/// Self-similarity: snapshot prices (computed via the rescaling) equal direct
/// per-class root solves to 1e-9 relative, on seeded random BDC configs.
#[test]
fn snapshot_prices_match_direct_solves() {
    let mut rng = TestRng(0xca5cade);
    for _ in 0..25 {
        let (f, h, s) = sample_bdc(&mut rng);
        let q0 = qosm::optimal_quality(&f, s).unwrap();
        let c0 = bounded_c0(&f, &h, s);
        let c = c0 * rng.uniform(1e-4, 0.99);
        let cfg = MarketConfig::new(f, h, s, c).unwrap();
        let snap = snapshot(&cfg, 64).unwrap();
        assert!(!snap.classes.is_empty());
        for class in &snap.classes {
            let direct = class_price_direct(&f, &h, s, q0, class.index, c)
                .expect("enumerated class must be profitable");
            assert!(
                (class.price - direct).abs() <= 1e-9 * direct,
                "class {}: rescaled {} vs direct {} (c = {c})",
                class.index,
                class.price,
                direct
            );
        }
    }
}

/// The closed-form first threshold c_0 = sup(lhs)/w(q0) matches a bisection
/// on "does the lowest class solve", which never looks at the closed form.
#[test]
fn first_threshold_matches_solve_transition() {
    let (f, h, s) = bdc_parts();
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    let offered = |c: f64| class_price_direct(&f, &h, s, q0, 0, c).is_some();
    let (mut lo, mut hi) = (1e-9, 10.0);
    assert!(offered(lo) && !offered(hi));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if offered(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let transition = 0.5 * (lo + hi);
    let c0 = bounded_c0(&f, &h, s);
    assert!(
        (c0 - transition).abs() <= 1e-9,
        "closed-form c0 {c0} vs scanned transition {transition}"
    );
}

/// Appearance thresholds bracket profitability: at c_k (1+1e-6) class k is
/// not offered, at c_k (1-1e-6) it is.
#[test]
fn thresholds_bracket_profitability() {
    let (f, h, s) = bdc_parts();
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    let delta = f.scaling_exponent(s).unwrap();
    let c0 = bounded_c0(&f, &h, s);
    for k in 0..3 {
        let ck = c0 * q0.powf(-(k as f64) * delta);
        assert!(
            class_price_direct(&f, &h, s, q0, k, ck * (1.0 + 1e-6)).is_none(),
            "class {k} offered above its threshold"
        );
        assert!(
            class_price_direct(&f, &h, s, q0, k, ck * (1.0 - 1e-6)).is_some(),
            "class {k} missing below its threshold"
        );
    }
}

/// The neighboring-class price ratio exceeds 1, decreases as c falls, and
/// approaches the closed-form limit.
#[test]
fn price_ratio_decreases_toward_limit() {
    let (f, h, s) = bdc_parts();
    let delta = f.scaling_exponent(s).unwrap();
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    let c0 = bounded_c0(&f, &h, s);
    let limit = price_ratio_limit(&f, s).unwrap();

    let c1 = c0 * q0.powf(-delta);
    let mut prev_ratio = f64::INFINITY;
    for i in 0..=12 {
        // March c down from just below c_1 (both classes offered) over six
        // decades.
        let c = c1 * 0.999 * 10f64.powf(-6.0 * i as f64 / 12.0);
        let p0 = class_price_direct(&f, &h, s, q0, 0, c).unwrap();
        let p1 = class_price_direct(&f, &h, s, q0, 1, c).unwrap();
        let ratio = p1 / p0;
        assert!(ratio > 1.0);
        assert!(
            ratio < prev_ratio * (1.0 + 1e-12),
            "ratio {ratio} did not decrease at c = {c}"
        );
        prev_ratio = ratio;
    }
    assert!(
        (prev_ratio - limit).abs() <= 1e-3 * limit,
        "ratio {prev_ratio} vs limit {limit}"
    );
}

/// Translation invariance of the ratio curve: p1/p0 at c equals p2/p1 at
/// c q0^-delta, to 1e-9 relative.
#[test]
fn price_ratio_curve_translates_between_classes() {
    let (f, h, s) = bdc_parts();
    let delta = f.scaling_exponent(s).unwrap();
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    let c0 = bounded_c0(&f, &h, s);
    let c1 = c0 * q0.powf(-delta);
    let c2 = c0 * q0.powf(-2.0 * delta);

    for i in 1..=8 {
        // c in (c_2, c_1): classes 0 and 1 exist here, and classes 1 and 2
        // exist at the shifted constant.
        let c = c2 * (c1 / c2).powf(i as f64 / 9.0);
        let ratio01 = class_price_direct(&f, &h, s, q0, 1, c).unwrap()
            / class_price_direct(&f, &h, s, q0, 0, c).unwrap();
        let c_shift = c * q0.powf(-delta);
        let ratio12 = class_price_direct(&f, &h, s, q0, 2, c_shift).unwrap()
            / class_price_direct(&f, &h, s, q0, 1, c_shift).unwrap();
        assert!(
            (ratio01 - ratio12).abs() <= 1e-9 * ratio01,
            "ratio translation broken at c = {c}: {ratio01} vs {ratio12}"
        );
    }
}

/// Class boundaries are identical across every snapshot of a sweep: falling
/// equipment prices add classes but never move the existing boundaries.
#[test]
fn class_boundaries_independent_of_c() {
    let (f, h, s) = bdc_parts();
    let c0 = bounded_c0(&f, &h, s);
    let grid: Vec<f64> = (0..24)
        .map(|i| c0 * 0.999 * 10f64.powf(-3.0 * i as f64 / 23.0))
        .collect();
    let snaps = sweep_c(&f, &h, s, &grid, 64).unwrap();
    let deepest = snaps.last().unwrap();
    for snap in &snaps {
        for class in &snap.classes {
            let reference = &deepest.classes[class.index];
            assert_eq!(class.quality, reference.quality);
            assert_eq!(class.lower_boundary, reference.lower_boundary);
        }
    }
}

/// The closed-form price-ratio limit equals q0^delta on seeded random DC
/// configurations, to 1e-12 relative.
#[test]
fn price_ratio_limit_equals_q0_to_the_delta() {
    let mut rng = TestRng(0x11f0_11e7);
    for _ in 0..20 {
        let (alpha, s) = common::sample_dc_shape(&mut rng);
        let f = power(alpha);
        let q0 = qosm::optimal_quality(&f, s).unwrap();
        let delta = f.scaling_exponent(s).unwrap();
        let closed = price_ratio_limit(&f, s).unwrap();
        let via_q0 = q0.powf(delta);
        assert!(
            (closed - via_q0).abs() <= 1e-12 * via_q0,
            "alpha = {alpha}, s = {s}: {closed} vs {via_q0}"
        );
    }
}

/// Deep in the cascade (c = c0 * 1e-6) the simulated weighted-traffic ratio
/// of neighboring classes approaches q0^(alpha+2) and the unweighted demand
/// ratio approaches q0^(alpha+1).
#[test]
fn traffic_ratios_approach_interval_geometry() {
    let mut rng = TestRng(0x7aff1c);
    for _ in 0..10 {
        let (f, h, s) = sample_bdc(&mut rng);
        let alpha = match f {
            QualityDistribution::PowerLaw { alpha } => alpha,
            _ => unreachable!(),
        };
        let q0 = qosm::optimal_quality(&f, s).unwrap();
        let c0 = bounded_c0(&f, &h, s);
        let cfg = MarketConfig::new(f, h, s, c0 * 1e-6).unwrap();
        let snap = snapshot(&cfg, 64).unwrap();
        assert!(snap.classes.len() >= 2);
        let (c_lo, c_hi) = (&snap.classes[0], &snap.classes[1]);

        let weighted = c_hi.weighted_traffic / c_lo.weighted_traffic;
        let expected = traffic_ratio_limit(&f, s).unwrap();
        assert!(
            (weighted - expected).abs() <= 1e-3 * expected,
            "weighted ratio {weighted} vs q0^(alpha+2) = {expected}"
        );

        let unweighted = c_hi.demand / c_lo.demand;
        let expected_unweighted = q0.powf(alpha + 1.0);
        assert!(
            (unweighted - expected_unweighted).abs() <= 1e-3 * expected_unweighted,
            "demand ratio {unweighted} vs q0^(alpha+1) = {expected_unweighted}"
        );
    }
}

/// Along a decreasing sweep the lowest class's price is nondecreasing in c
/// and its revenue rises then falls (an interior maximum in c).
#[test]
fn sweep_price_monotone_and_revenue_single_peaked() {
    let (f, h, s) = bdc_parts();
    let c0 = bounded_c0(&f, &h, s);
    let grid: Vec<f64> = (0..400)
        .map(|i| c0 * 10f64.powf(-3.0 * i as f64 / 399.0))
        .collect();
    let snaps = sweep_c(&f, &h, s, &grid, 64).unwrap();

    let class0: Vec<_> = snaps.iter().map(|s| s.classes[0]).collect();
    for pair in class0.windows(2) {
        // Grid order is decreasing in c, so prices must not increase.
        assert!(pair[1].price <= pair[0].price * (1.0 + 1e-12));
    }
    let revenues: Vec<f64> = class0.iter().map(|c| c.revenue).collect();
    let peak = revenues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(peak > 0 && peak < revenues.len() - 1, "revenue max at edge {peak}");
    for i in peak..revenues.len() - 1 {
        assert!(revenues[i + 1] <= revenues[i] * (1.0 + 1e-12));
    }
}

/// Deep in the cascade the price and the revenue of a class fall linearly
/// with c: the lhs has unit slope at p = 0 (checked for responses with
/// beta > 1, where h'(0) = 0), so the root tracks the target.
#[test]
fn small_c_price_and_revenue_linear_in_c() {
    let (f, h, s) = bdc_parts();
    let c0 = bounded_c0(&f, &h, s);
    let eval = |c: f64| {
        let cfg = MarketConfig::new(f, h, s, c).unwrap();
        let class0 = snapshot(&cfg, 8).unwrap().classes[0];
        (class0.price, class0.revenue)
    };
    let (p_small, r_small) = eval(c0 * 1e-6);
    let (p_large, r_large) = eval(c0 * 1e-5);
    assert!(
        (p_large / (10.0 * p_small) - 1.0).abs() <= 1e-6,
        "price not linear in c: {p_large} vs 10 x {p_small}"
    );
    assert!(
        (r_large / (10.0 * r_small) - 1.0).abs() <= 1e-5,
        "revenue not linear in c: {r_large} vs 10 x {r_small}"
    );
}

/// BDC coverage grows without bound as c falls, yet at any fixed c the
/// highest offered quality is finite: every quality is eventually served,
/// while some qualities always go unserved.
#[test]
fn bdc_serves_any_quality_eventually_but_never_all_at_once() {
    let (f, h, s) = bdc_parts();
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    let delta = f.scaling_exponent(s).unwrap();
    let c0 = bounded_c0(&f, &h, s);
    for target_quality in [10.0f64, 100.0, 1000.0] {
        // Class k covers qualities up to q0^(k+1); pick the first k whose
        // coverage reaches the target and a c just below its threshold.
        let k = (target_quality.ln() / q0.ln() - 1.0).ceil().max(0.0);
        let c = c0 * q0.powf(-k * delta) * 0.99;
        let cfg = MarketConfig::new(f, h, s, c).unwrap();
        let snap = snapshot(&cfg, 8).unwrap();
        let top = snap.classes.last().unwrap();
        assert!(
            top.quality >= target_quality,
            "coverage {} below target {target_quality} at c = {c}",
            top.quality
        );
        // The class list is complete (not truncated) and finite, so every
        // request above the top class goes unserved at this c.
        assert!(!snap.truncated);
        assert!(top.quality.is_finite());
    }
}

/// The class count steps from zero to one exactly at the first threshold.
#[test]
fn class_count_steps_at_first_threshold() {
    let (f, h, s) = bdc_parts();
    let c0 = bounded_c0(&f, &h, s);
    let grid = [c0 * 1.0001, c0 * 0.9999];
    let snaps = sweep_c(&f, &h, s, &grid, 8).unwrap();
    assert_eq!(snaps[0].classes.len(), 0);
    assert_eq!(snaps[1].classes.len(), 1);
}

/// UDC snapshots truncate at the cap and every reported price passes an
/// independent direct solve at 1e-10 relative.
#[test]
fn udc_snapshot_prices_verified_directly() {
    let f = power(-2.5);
    let h = PriceResponse::rational(2.0, 1.0).unwrap();
    let s = 2.0 / 3.0;
    let q0 = qosm::optimal_quality(&f, s).unwrap();
    for c in [5.0, 1.0, 0.01] {
        let cfg = MarketConfig::new(f, h, s, c).unwrap();
        let snap = snapshot(&cfg, 5).unwrap();
        assert!(snap.truncated);
        assert_eq!(snap.classes.len(), 5);
        for class in &snap.classes {
            let direct = class_price_direct(&f, &h, s, q0, class.index, c).unwrap();
            assert!(
                (class.price - direct).abs() <= 1e-10 * direct,
                "UDC class {} price {} vs direct {}",
                class.index,
                class.price,
                direct
            );
        }
    }
}
