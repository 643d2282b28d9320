//! Numerical shape classification (positivity, monotonicity, log-convexity),
//! the log-linear majorant, and the logarithmic mean.
//!
//! Classification is sampling-based with an explicit tolerance, not symbolic:
//! inputs are arbitrary expressions, so an honest grid check beats a claimed
//! proof. Log-convexity is tested through the midpoint inequality
//! `log f((x+y)/2) <= (log f(x) + log f(y))/2` over grid pairs whose midpoint
//! is itself a grid point.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::expr::{self, EvalError, Expr};
use crate::measure::Interval;
use crate::{Error, Result};

/// Default classification grid (points) and relative tolerance.
pub const DEFAULT_SAMPLES: usize = 1025;
pub const DEFAULT_TOL: f64 = 1e-9;

// Midpoint pairs examined by `classify` are capped; beyond this the gap
// sequence is strided.
const PAIR_BUDGET: usize = 4_000_000;

#[derive(Clone)]
enum Evaluator {
    Expression(Expr),
    Native(Arc<dyn Fn(f64) -> Result<f64, EvalError> + Send + Sync>),
}

/// An evaluable real function on a closed working interval.
///
/// Either a parsed [`Expr`] or a native closure. Values are immutable and the
/// evaluator is shared behind an `Arc`, so clones are cheap and instances can
/// be used from concurrent contexts.
#[derive(Clone)]
pub struct RealFunction {
    evaluator: Evaluator,
    domain: Interval,
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.evaluator {
            Evaluator::Expression(e) => write!(
                f,
                "RealFunction({e} on [{}, {}])",
                self.domain.lo(),
                self.domain.hi()
            ),
            Evaluator::Native(_) => write!(
                f,
                "RealFunction(<native> on [{}, {}])",
                self.domain.lo(),
                self.domain.hi()
            ),
        }
    }
}

impl RealFunction {
    pub fn from_expr(expr: Expr, domain: Interval) -> Self {
        RealFunction {
            evaluator: Evaluator::Expression(expr),
            domain,
        }
    }

    /// Parse `text` and attach the working interval.
    pub fn parse(text: &str, domain: Interval) -> Result<Self> {
        Ok(Self::from_expr(expr::parse(text)?, domain))
    }

    /// Wrap a native closure. Non-finite outputs are reported as evaluation
    /// errors, matching the expression evaluator.
    pub fn native<F>(f: F, domain: Interval) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let wrapped = move |x: f64| {
            let v = f(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(EvalError::NonFinite)
            }
        };
        RealFunction {
            evaluator: Evaluator::Native(Arc::new(wrapped)),
            domain,
        }
    }

    pub fn constant(value: f64, domain: Interval) -> Self {
        Self::from_expr(Expr::Number(value), domain)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Same evaluator, different working interval.
    pub fn with_domain(&self, domain: Interval) -> Self {
        RealFunction {
            evaluator: self.evaluator.clone(),
            domain,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match &self.evaluator {
            Evaluator::Expression(e) => Ok(expr::evaluate(e, x)?),
            Evaluator::Native(f) => Ok(f(x)?),
        }
    }

    /// The underlying expression, when there is one.
    pub fn expression(&self) -> Option<&Expr> {
        match &self.evaluator {
            Evaluator::Expression(e) => Some(e),
            Evaluator::Native(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    None,
}

/// Outcome of [`classify`].
///
/// `log_convex` holds exactly when `worst_violation <= tolerance`, where
/// `tolerance` is the requested relative tolerance scaled by the magnitude of
/// `log f` on the grid. A non-positive sample makes the violation infinite.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub positive: bool,
    pub monotone: Monotonicity,
    pub log_convex: bool,
    pub samples_used: usize,
    pub worst_violation: f64,
    pub tolerance: f64,
}

/// Sample `f` on a uniform grid over its domain and report positivity,
/// monotonicity (adjacent comparisons) and log-convexity (midpoint test).
pub fn classify(f: &RealFunction, n_samples: usize, tol: f64) -> Result<ShapeReport> {
    if n_samples < 3 {
        return Err(Error::InvalidConfig {
            reason: format!("classification needs at least 3 samples, got {n_samples}"),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("classification tolerance must be positive, got {tol}"),
        });
    }

    let (a, b) = (f.domain().lo(), f.domain().hi());
    let step = (b - a) / (n_samples - 1) as f64;
    let mut values = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let x = if i + 1 == n_samples {
            b
        } else {
            a + step * i as f64
        };
        values.push(f.eval(x)?);
    }

    let positive = values.iter().all(|&v| v > 0.0);
    let value_scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let mono_tol = tol * value_scale;

    let mut non_decreasing = true;
    let mut non_increasing = true;
    for pair in values.windows(2) {
        let diff = pair[1] - pair[0];
        if diff < -mono_tol {
            non_decreasing = false;
        }
        if diff > mono_tol {
            non_increasing = false;
        }
    }
    let monotone = match (non_decreasing, non_increasing) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => Monotonicity::None,
    };

    let (worst_violation, tolerance) = if positive {
        let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        let log_scale = logs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        let tolerance = tol * log_scale;

        // Pairs (i, i+2g) have grid midpoint i+g. Total pair count is about
        // n^2/4; stride the gap when that would blow the budget.
        let max_gap = (n_samples - 1) / 2;
        let approx_pairs = n_samples * max_gap / 2;
        let gap_step = (approx_pairs / PAIR_BUDGET).max(1);
        let mut worst = 0.0f64;
        let mut gap = 1;
        while gap <= max_gap {
            for i in 0..(n_samples - 2 * gap) {
                let excess = logs[i + gap] - 0.5 * (logs[i] + logs[i + 2 * gap]);
                if excess > worst {
                    worst = excess;
                }
            }
            gap += gap_step;
        }
        (worst, tolerance)
    } else {
        (f64::INFINITY, tol)
    };

    Ok(ShapeReport {
        positive,
        monotone,
        log_convex: positive && worst_violation <= tolerance,
        samples_used: n_samples,
        worst_violation,
        tolerance,
    })
}

pub fn classify_default(f: &RealFunction) -> Result<ShapeReport> {
    classify(f, DEFAULT_SAMPLES, DEFAULT_TOL)
}

/// The log-linear interpolant of `g` between `a` and `b`:
///
/// ```text
/// h(x) = g(a)^((b-x)/(b-a)) * g(b)^((x-a)/(b-a))
/// ```
///
/// For log-convex `g` this majorizes `g` on `[a, b]`; it is the chord of
/// `log g` mapped back through `exp`.
pub fn log_majorant(g: &RealFunction, a: f64, b: f64) -> Result<RealFunction> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let ga = g.eval(a)?;
    if ga <= 0.0 {
        return Err(Error::NonPositiveEndpoint { x: a, value: ga });
    }
    let gb = g.eval(b)?;
    if gb <= 0.0 {
        return Err(Error::NonPositiveEndpoint { x: b, value: gb });
    }
    // Equal endpoints make h constant; returning g(a) directly avoids the
    // ulp-level jitter of exp(ln g(a) * 1.0) that would break downstream
    // exact-constant handling.
    if (ga - gb).abs() <= 1e-12 * ga.max(gb) {
        return Ok(RealFunction::constant(ga, Interval::new(a, b)?));
    }
    let (log_ga, log_gb, width) = (ga.ln(), gb.ln(), b - a);
    let h = move |x: f64| (((b - x) * log_ga + (x - a) * log_gb) / width).exp();
    Ok(RealFunction::native(h, Interval::new(a, b)?))
}

/// Logarithmic mean `L(p, q) = (p - q)/(ln p - ln q)` with `L(p, p) = p`.
///
/// Symmetric, and always between `min(p, q)` and `max(p, q)`. Near-equal
/// arguments switch to the midpoint to avoid catastrophic cancellation.
pub fn logarithmic_mean(p: f64, q: f64) -> Result<f64> {
    if p <= 0.0 || q <= 0.0 || !p.is_finite() || !q.is_finite() {
        return Err(Error::NonPositiveLogMean { p, q });
    }
    if p == q {
        return Ok(p);
    }
    let (log_p, log_q) = (p.ln(), q.ln());
    if (log_p - log_q).abs() < 1e-12 {
        return Ok(0.5 * (p + q));
    }
    Ok((p - q) / (log_p - log_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_unit(text: &str) -> RealFunction {
        RealFunction::parse(text, Interval::unit()).unwrap()
    }

    #[test]
    fn classifies_decaying_exponential() {
        let report = classify_default(&on_unit("exp(-x)")).unwrap();
        assert!(report.positive);
        assert_eq!(report.monotone, Monotonicity::Decreasing);
        assert!(report.log_convex);
        assert!(report.worst_violation <= report.tolerance);
        assert_eq!(report.samples_used, DEFAULT_SAMPLES);
    }

    #[test]
    fn classifies_shifted_sine_exponential() {
        let domain =
            Interval::new(std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2).unwrap();
        let f = RealFunction::parse("exp(-sin(2*x))", domain).unwrap();
        let report = classify_default(&f).unwrap();
        assert!(report.positive);
        assert_eq!(report.monotone, Monotonicity::Increasing);
        assert!(report.log_convex);
    }

    #[test]
    fn constant_functions_are_log_convex() {
        let report = classify_default(&on_unit("1")).unwrap();
        assert_eq!(report.monotone, Monotonicity::Constant);
        assert!(report.log_convex);
        assert_eq!(report.worst_violation, 0.0);
    }

    #[test]
    fn log_concave_input_is_rejected() {
        // log f = cos(x) - 1 is concave on [0, 1].
        let report = classify_default(&on_unit("exp(cos(x)-1)")).unwrap();
        assert!(report.positive);
        assert!(!report.log_convex);
        assert!(report.worst_violation > report.tolerance);
    }

    #[test]
    fn non_positive_samples_fail_positivity_and_log_convexity() {
        let report = classify_default(&on_unit("x-0.5")).unwrap();
        assert!(!report.positive);
        assert!(!report.log_convex);
        assert!(report.worst_violation.is_infinite());
        assert_eq!(report.monotone, Monotonicity::Increasing);
    }

    #[test]
    fn classify_validates_configuration() {
        assert!(classify(&on_unit("x"), 2, 1e-9).is_err());
        assert!(classify(&on_unit("x"), 100, 0.0).is_err());
    }

    #[test]
    fn majorant_of_equal_endpoints_is_constant() {
        // g(0) = g(1) = e^{-1/4} for exp(x^2-x).
        let g = on_unit("exp(x^2-x)");
        let h = log_majorant(&g, 0.0, 1.0).unwrap();
        let c = g.eval(0.0).unwrap();
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((h.eval(x).unwrap() - c).abs() < 1e-12);
        }
    }

    #[test]
    fn majorant_of_quadratic_exponential_is_linear_exponential() {
        // g = exp(x^2-1) has endpoints e^{-1} and 1, so h(x) = e^{x-1}.
        let g = on_unit("exp(x^2-1)");
        let h = log_majorant(&g, 0.0, 1.0).unwrap();
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let expected = (x - 1.0).exp();
            let got = h.eval(x).unwrap();
            assert!((got - expected).abs() < 1e-12 * expected.max(1.0));
            // Majorant dominance on a log-convex g.
            assert!(got >= g.eval(x).unwrap() - 1e-12);
        }
    }

    #[test]
    fn majorant_interpolates_the_endpoints() {
        for text in ["exp(-x)", "exp(x^2-1)", "2.5", "1/(x+1)"] {
            let g = on_unit(text);
            let h = log_majorant(&g, 0.0, 1.0).unwrap();
            let (ga, gb) = (g.eval(0.0).unwrap(), g.eval(1.0).unwrap());
            assert!((h.eval(0.0).unwrap() - ga).abs() <= 1e-12 * ga);
            assert!((h.eval(1.0).unwrap() - gb).abs() <= 1e-12 * gb);
        }
    }

    #[test]
    fn majorant_requires_positive_endpoints() {
        let g = on_unit("x-0.5");
        assert!(matches!(
            log_majorant(&g, 0.0, 1.0),
            Err(Error::NonPositiveEndpoint { .. })
        ));
        assert!(matches!(
            log_majorant(&on_unit("x"), 1.0, 0.0),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn log_mean_reference_values() {
        assert_eq!(logarithmic_mean(0.37, 0.37).unwrap(), 0.37);
        // L(e^-2, e^{-cos 1 - 1}) — the right-hand side of the second
        // counterexample.
        let p = (-2.0f64).exp();
        let q = (-(1.0f64.cos()) - 1.0).exp();
        let l = logarithmic_mean(p, q).unwrap();
        assert!((l - 0.1718107798421182).abs() < 1e-12);
        assert!((l - 0.1718).abs() < 1e-3);
    }

    #[test]
    fn log_mean_matches_quadrature() {
        // L(p, q) = ∫_0^1 p^t q^(1-t) dt; check L(1, e) = e - 1 against
        // composite Simpson quadrature of ∫_0^1 e^t dt.
        let l = logarithmic_mean(1.0, std::f64::consts::E).unwrap();
        let n = 200;
        let h = 1.0 / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let (t0, t1) = (i as f64 * h, (i as f64 + 1.0) * h);
            let tm = 0.5 * (t0 + t1);
            sum += (t0.exp() + 4.0 * tm.exp() + t1.exp()) * h / 6.0;
        }
        assert!((l - sum).abs() < 1e-10);
        assert!((l - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn log_mean_rejects_non_positive_arguments() {
        assert!(logarithmic_mean(0.0, 1.0).is_err());
        assert!(logarithmic_mean(1.0, -2.0).is_err());
        assert!(logarithmic_mean(f64::NAN, 1.0).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn log_mean_between_min_and_max(p in 1e-6f64..1e6, q in 1e-6f64..1e6) {
                let l = logarithmic_mean(p, q).unwrap();
                prop_assert!(p.min(q) <= l + 1e-12 * l.abs());
                prop_assert!(l <= p.max(q) * (1.0 + 1e-12));
            }

            #[test]
            fn log_mean_is_symmetric(p in 1e-6f64..1e6, q in 1e-6f64..1e6) {
                let a = logarithmic_mean(p, q).unwrap();
                let b = logarithmic_mean(q, p).unwrap();
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
            }

            #[test]
            fn log_mean_continuous_near_equal_arguments(p in 1e-3f64..1e3) {
                let l = logarithmic_mean(p, p * (1.0 + 1e-8)).unwrap();
                prop_assert!((l - p).abs() <= 1e-6 * p);
            }
        }
    }
}
