//! Hermite–Hadamard machinery for Sugeno integrals.
//!
//! The classical inequality bounds the average of a convex `f` between its
//! midpoint value and the endpoint mean; with the Lebesgue integral replaced
//! by a Sugeno integral both sides can fail, and [`classical_check`] exhibits
//! that. For log-convex integrands an upper bound does survive:
//!
//! ```text
//! (s)∫_a^b g dmu  <=  min{ alpha, b - a }
//! ```
//!
//! where `alpha` solves a transcendental case equation built from the
//! endpoint values of `g` — the fixed point of the distribution function of
//! the log-linear majorant of `g`. [`bound_unit`] covers `[0, 1]` with
//! dispatch on `g(0)` vs `g(1)`; [`bound_general`] covers arbitrary `[a, b]`.

use serde::Serialize;

use crate::analysis::{self, RealFunction};
use crate::integral::{self, Method, SugenoResult};
use crate::measure::{FuzzyMeasure, Interval};
use crate::rootfind::{self, RootConfig};
use crate::{Error, Result};

/// Relative tolerance deciding when the endpoint values count as equal.
pub const EQUAL_ENDPOINT_TOL: f64 = 1e-12;
/// Every case-equation residual must close to this tolerance.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Slack allowed when verifying an integral against its bound.
pub const VERIFY_SLACK: f64 = 1e-6;

// The case equations are cheap scalar formulas, so they are solved much
// tighter than the integral tolerances.
const CASE_EQ_CONFIG: RootConfig = RootConfig {
    abs_tol: 1e-14,
    max_iter: 200,
};
// Inset keeping the bracket clear of the singular endpoint ln(g_min).
const BRACKET_INSET: f64 = 1e-15;

/// Which theorem case produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    UnitIncreasing,
    UnitDecreasing,
    GeneralIncreasing,
    GeneralEqual,
    GeneralDecreasing,
}

/// An upper bound `min{alpha, b - a}` for the Sugeno integral of a
/// log-convex integrand.
///
/// `t = 1 - alpha` is reported for the unit-interval cases, where the case
/// equation has an equivalent product form in `t`. `sound` records whether
/// the sampled log-convexity check passed; when it did not, the bound is
/// still computed but carries no guarantee.
#[derive(Debug, Clone, Serialize)]
pub struct HHBound {
    pub case: BoundCase,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub bound: f64,
    pub residual: f64,
    pub sound: bool,
}

/// Verdict of the classical Hermite–Hadamard inequality against the Sugeno
/// integral: `left_holds` iff midpoint value <= integral, `right_holds` iff
/// integral <= logarithmic mean of the endpoint values.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalHHReport {
    pub midpoint_value: f64,
    pub mean_integral_bound: f64,
    pub sugeno_value: f64,
    pub method: Method,
    pub left_holds: bool,
    pub right_holds: bool,
}

/// Outcome of [`verify_bound`]: the bound, the integral by both methods, and
/// the remaining slack.
#[derive(Debug, Clone, Serialize)]
pub struct BoundVerification {
    pub bound: HHBound,
    pub integral: f64,
    pub integral_grid: f64,
    pub method: Method,
    pub slack: f64,
    pub holds: bool,
}

fn positive_endpoint(g: &RealFunction, x: f64) -> Result<f64> {
    let value = g.eval(x)?;
    if value <= 0.0 || !value.is_finite() {
        return Err(Error::NonPositiveEndpoint { x, value });
    }
    Ok(value)
}

fn endpoints_equal(ga: f64, gb: f64) -> bool {
    (ga - gb).abs() <= EQUAL_ENDPOINT_TOL * ga.max(gb)
}

fn check_residual(residual: f64) -> Result<()> {
    if residual.abs() > RESIDUAL_TOL {
        return Err(Error::ResidualCheck {
            residual: residual.abs(),
            tolerance: RESIDUAL_TOL,
        });
    }
    Ok(())
}

/// Upper bound on `[0, 1]`, dispatching on the endpoint values of `g`.
///
/// For `g(0) < g(1)` the bound level solves
/// `1 - (ln a - ln g(0))/(ln g(1) - ln g(0)) = a`; for `g(0) > g(1)` the
/// mirrored equation without the leading `1 -`; equal endpoints give
/// `min{g(0), 1}` outright. The root is additionally verified against the
/// equivalent product form `g(0)^a g(1)^(1-a) = a` (increasing) or
/// `g(0)^(1-a) g(1)^a = a` (decreasing) to `1e-8`.
pub fn bound_unit(g: &RealFunction) -> Result<HHBound> {
    let unit = Interval::unit();
    let gu = g.with_domain(unit);
    let g0 = positive_endpoint(&gu, 0.0)?;
    let g1 = positive_endpoint(&gu, 1.0)?;
    let shape = analysis::classify_default(&gu)?;
    let sound = shape.positive && shape.log_convex;

    if endpoints_equal(g0, g1) {
        let alpha = g0;
        return Ok(HHBound {
            case: BoundCase::GeneralEqual,
            alpha,
            t: Some(1.0 - alpha),
            bound: alpha.min(1.0),
            residual: 0.0,
            sound,
        });
    }

    let (log_g0, log_g1) = (g0.ln(), g1.ln());
    let denominator = log_g1 - log_g0;
    let (case, g_min, g_max): (BoundCase, f64, f64) = if g0 < g1 {
        (BoundCase::UnitIncreasing, g0, g1)
    } else {
        (BoundCase::UnitDecreasing, g1, g0)
    };

    // The majorant's distribution equals the full measure up to alpha =
    // g_min; if g_min already reaches b - a = 1 the sup-min saturates there
    // and no equation needs solving.
    if g_min >= 1.0 {
        return Ok(HHBound {
            case,
            alpha: 1.0,
            t: Some(0.0),
            bound: 1.0,
            residual: 0.0,
            sound,
        });
    }

    let root = match case {
        BoundCase::UnitIncreasing => rootfind::bisect(
            |alpha| Ok(1.0 - (alpha.ln() - log_g0) / denominator - alpha),
            g_min + BRACKET_INSET,
            g_max,
            &CASE_EQ_CONFIG,
        )?,
        _ => rootfind::bisect(
            |alpha| Ok((alpha.ln() - log_g0) / denominator - alpha),
            g_min + BRACKET_INSET,
            g_max,
            &CASE_EQ_CONFIG,
        )?,
    };
    let alpha = root.value;
    let t = 1.0 - alpha;

    // Product form of the same equation; in t it reads
    // g(0)^(1-t) g(1)^t + t - 1 = 0 (increasing) and
    // g(0)^t g(1)^(1-t) + t - 1 = 0 (decreasing).
    let product_residual = match case {
        BoundCase::UnitIncreasing => g0.powf(alpha) * g1.powf(1.0 - alpha) - alpha,
        _ => g0.powf(1.0 - alpha) * g1.powf(alpha) - alpha,
    };
    check_residual(root.residual)?;
    check_residual(product_residual)?;

    Ok(HHBound {
        case,
        alpha,
        t: Some(t),
        bound: alpha.min(1.0),
        residual: root.residual.abs().max(product_residual.abs()),
        sound,
    })
}

/// Upper bound on an arbitrary `[a, b]`, dispatching on `g(a)` vs `g(b)`.
///
/// Case equations, with `W = ln g(b) - ln g(a)`:
///
/// ```text
/// g(a) < g(b):  b - ((b-a) ln x - b ln g(a) + a ln g(b)) / W = x
/// g(a) = g(b):  bound = min{g(a), b-a} directly
/// g(a) > g(b):  ((b-a) ln x - b ln g(a) + a ln g(b)) / W - a = x
/// ```
///
/// The root bracket is `[g_min + 1e-15, g_max]`: the equation residual at
/// `g_min` is `(b-a) - g_min > 0` whenever `g_min < b - a`, and at `g_max` it
/// is `-g_max < 0`. If `g_min >= b - a` the sup-min saturates at the full
/// measure and the bound is `b - a` without root-finding.
pub fn bound_general(g: &RealFunction, a: f64, b: f64) -> Result<HHBound> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let set = Interval::new(a, b)?;
    let gu = g.with_domain(set);
    let ga = positive_endpoint(&gu, a)?;
    let gb = positive_endpoint(&gu, b)?;
    let shape = analysis::classify_default(&gu)?;
    let sound = shape.positive && shape.log_convex;
    let width = b - a;

    if endpoints_equal(ga, gb) {
        return Ok(HHBound {
            case: BoundCase::GeneralEqual,
            alpha: ga,
            t: None,
            bound: ga.min(width),
            residual: 0.0,
            sound,
        });
    }

    let (log_ga, log_gb) = (ga.ln(), gb.ln());
    let denominator = log_gb - log_ga;
    let (case, g_min, g_max) = if ga < gb {
        (BoundCase::GeneralIncreasing, ga, gb)
    } else {
        (BoundCase::GeneralDecreasing, gb, ga)
    };

    if g_min >= width {
        return Ok(HHBound {
            case,
            alpha: width,
            t: None,
            bound: width,
            residual: 0.0,
            sound,
        });
    }

    let root = match case {
        BoundCase::GeneralIncreasing => rootfind::bisect(
            |x| Ok(b - (width * x.ln() - b * log_ga + a * log_gb) / denominator - x),
            g_min + BRACKET_INSET,
            g_max,
            &CASE_EQ_CONFIG,
        )?,
        _ => rootfind::bisect(
            |x| Ok((width * x.ln() - b * log_ga + a * log_gb) / denominator - a - x),
            g_min + BRACKET_INSET,
            g_max,
            &CASE_EQ_CONFIG,
        )?,
    };
    check_residual(root.residual)?;

    Ok(HHBound {
        case,
        alpha: root.value,
        t: None,
        bound: root.value.min(width),
        residual: root.residual.abs(),
        sound,
    })
}

/// Compute the Sugeno integral of `g` by both methods and verify it stays
/// below the [`bound_general`] bound (up to [`VERIFY_SLACK`]).
pub fn verify_bound(g: &RealFunction, a: f64, b: f64) -> Result<BoundVerification> {
    let bound = bound_general(g, a, b)?;
    let set = Interval::new(a, b)?;
    let mu = FuzzyMeasure::lebesgue(set);
    let gu = g.with_domain(set);
    let primary = integral::integrate(&gu, set, &mu)?;
    let oracle = integral::integrate_grid(&gu, set, &mu, integral::DEFAULT_GRID_SIZE)?;
    let holds =
        primary.value <= bound.bound + VERIFY_SLACK && oracle.value <= bound.bound + VERIFY_SLACK;
    let slack = bound.bound - primary.value;
    Ok(BoundVerification {
        bound,
        integral: primary.value,
        integral_grid: oracle.value,
        method: primary.method,
        slack,
        holds,
    })
}

/// Check both sides of the classical Hermite–Hadamard inequality against the
/// Sugeno integral of a positive `f` on `[a, b]`.
pub fn classical_check(f: &RealFunction, a: f64, b: f64) -> Result<ClassicalHHReport> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let set = Interval::new(a, b)?;
    let mu = FuzzyMeasure::lebesgue(set);
    let fu = f.with_domain(set);
    let result: SugenoResult = integral::integrate(&fu, set, &mu)?;
    let midpoint_value = fu.eval(set.midpoint())?;
    let fa = positive_endpoint(&fu, a)?;
    let fb = positive_endpoint(&fu, b)?;
    let mean_integral_bound = analysis::logarithmic_mean(fa, fb)?;
    Ok(ClassicalHHReport {
        midpoint_value,
        mean_integral_bound,
        sugeno_value: result.value,
        method: result.method,
        left_holds: midpoint_value <= result.value,
        right_holds: result.value <= mean_integral_bound,
    })
}
