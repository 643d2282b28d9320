//! Superlevel sets, the distribution function `F(alpha) = mu(A ∩ {f >= alpha})`,
//! and two independent Sugeno integrators.
//!
//! The fixed-point integrator solves `F(alpha) = alpha` by bisection — valid
//! whenever `F` is continuous and strictly decreasing where it crosses the
//! diagonal. The grid integrator maximizes `min(alpha, F(alpha))` over a
//! dense uniform alpha grid, straight from the sup-min definition, and is the
//! oracle the fixed-point route is validated against. Cross-checking the two
//! is the core correctness strategy of this crate.
//!
//! When `F` jumps across the diagonal (plateaus of `f` with positive measure)
//! the fixed-point equation has no solution; the solver reports
//! [`Error::DegenerateCrossing`] and [`integrate`] falls back to the grid
//! method. Exactly constant integrands short-circuit to `k ∧ mu(A)`.

use serde::Serialize;

use crate::analysis::RealFunction;
use crate::measure::{FuzzyMeasure, Interval, IntervalUnion};
use crate::rootfind::{self, RootConfig};
use crate::{Error, Result};

/// Segments in the superlevel crossing scan.
pub const SUPERLEVEL_SCAN_SEGMENTS: usize = 4096;
/// x-resolution of the piecewise-linear model behind the grid integrator.
pub const GRID_X_SEGMENTS: usize = 8192;
/// Default number of alpha grid points for the grid integrator.
pub const DEFAULT_GRID_SIZE: usize = 100_001;

// Bisection tolerance when refining a superlevel boundary crossing.
const CROSSING_TOL: f64 = 1e-12;
// Relative inflation of the sampled supremum when bracketing the fixed point.
const SUP_INFLATION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FixedPoint,
    Grid,
}

/// A Sugeno integral value with method metadata.
///
/// `residual` is `|F(value) - value|` for the fixed-point method and the
/// diagonal gap at the maximizing grid alpha for the grid method.
/// `iterations_or_gridsize` counts bisection iterations or the alpha grid
/// size, depending on the method.
#[derive(Debug, Clone, Serialize)]
pub struct SugenoResult {
    pub value: f64,
    pub method: Method,
    pub residual: f64,
    pub iterations_or_gridsize: usize,
}

/// Superlevel set `{x in A : f(x) >= alpha}` as a finite interval union.
///
/// `f` is scanned on a uniform grid to locate sign changes of `f - alpha`;
/// each crossing is then refined by bisection to width 1e-12. A monotone `f`
/// produces a single crossing, hence a single interval from one bisection.
/// Features narrower than the scan spacing can be missed — the price of
/// sampling honestly instead of proving.
pub fn superlevel_set(f: &RealFunction, set: Interval, alpha: f64) -> Result<IntervalUnion> {
    if alpha < 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "superlevel threshold must be a nonnegative real, got {alpha}"
        )));
    }
    let (xs, values) = scan(f, set, SUPERLEVEL_SCAN_SEGMENTS)?;
    superlevel_from_samples(f, &xs, &values, alpha)
}

fn scan(f: &RealFunction, set: Interval, segments: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = (set.lo(), set.hi());
    let n = segments.max(1);
    let step = (b - a) / n as f64;
    let mut xs = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = if i == n { b } else { a + step * i as f64 };
        xs.push(x);
        values.push(f.eval(x)?);
    }
    Ok((xs, values))
}

fn refine_crossing(f: &RealFunction, left: f64, right: f64, alpha: f64) -> Result<f64> {
    if left == right {
        return Ok(left);
    }
    let cfg = RootConfig {
        abs_tol: CROSSING_TOL,
        max_iter: 120,
    };
    let root = rootfind::bisect(|x| Ok(f.eval(x)? - alpha), left, right, &cfg)?;
    Ok(root.value)
}

fn superlevel_from_samples(
    f: &RealFunction,
    xs: &[f64],
    values: &[f64],
    alpha: f64,
) -> Result<IntervalUnion> {
    let n = xs.len() - 1;
    let mut parts = Vec::new();
    let mut start = if values[0] >= alpha {
        Some(xs[0])
    } else {
        None
    };
    for i in 0..n {
        match (values[i] >= alpha, values[i + 1] >= alpha) {
            (true, true) | (false, false) => {}
            (true, false) => {
                let c = refine_crossing(f, xs[i], xs[i + 1], alpha)?;
                let s = start.take().expect("inside implies an open part");
                parts.push(Interval::new(s, c.max(s))?);
            }
            (false, true) => {
                start = Some(refine_crossing(f, xs[i], xs[i + 1], alpha)?);
            }
        }
    }
    if let Some(s) = start {
        parts.push(Interval::new(s, xs[n])?);
    }
    Ok(IntervalUnion::normalize(parts))
}

/// The distribution function `alpha -> mu(A ∩ {f >= alpha})`.
///
/// Non-increasing in alpha, with `F(0) = mu(A)` for nonnegative `f` and
/// `F(alpha) = 0` above the supremum. The scan of `f` is cached at
/// construction; each evaluation only re-evaluates `f` while refining the
/// superlevel boundary crossings.
#[derive(Debug, Clone)]
pub struct DistributionFunction {
    f: RealFunction,
    set: Interval,
    mu: FuzzyMeasure,
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl DistributionFunction {
    pub fn new(f: RealFunction, set: Interval, mu: FuzzyMeasure) -> Result<Self> {
        if !mu.domain().contains_interval(&set) {
            return Err(Error::OutsideDomain {
                lo: set.lo(),
                hi: set.hi(),
                domain_lo: mu.domain().lo(),
                domain_hi: mu.domain().hi(),
            });
        }
        let (xs, values) = scan(&f, set, SUPERLEVEL_SCAN_SEGMENTS)?;
        Ok(DistributionFunction {
            f,
            set,
            mu,
            xs,
            values,
        })
    }

    pub fn set(&self) -> Interval {
        self.set
    }

    pub fn measure(&self) -> &FuzzyMeasure {
        &self.mu
    }

    /// Minimum and maximum of `f` over the cached scan grid.
    pub fn value_range(&self) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in &self.values {
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }

    fn min_location(&self) -> (f64, f64) {
        let mut best = (self.xs[0], self.values[0]);
        for (&x, &v) in self.xs.iter().zip(&self.values) {
            if v < best.1 {
                best = (x, v);
            }
        }
        best
    }

    pub fn superlevel(&self, alpha: f64) -> Result<IntervalUnion> {
        if alpha < 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidInput(format!(
                "superlevel threshold must be a nonnegative real, got {alpha}"
            )));
        }
        superlevel_from_samples(&self.f, &self.xs, &self.values, alpha)
    }

    /// `F(alpha)`.
    pub fn eval(&self, alpha: f64) -> Result<f64> {
        self.mu.measure(&self.superlevel(alpha)?)
    }
}

/// Convenience constructor matching the functional style of the rest of the
/// crate.
pub fn distribution(
    f: &RealFunction,
    set: Interval,
    mu: &FuzzyMeasure,
) -> Result<DistributionFunction> {
    DistributionFunction::new(f.clone(), set, *mu)
}

/// Sugeno integral via the fixed point of the distribution function.
///
/// The bracket is `[0, min(sup f, mu(A))]` with the sampled supremum inflated
/// by 1e-9 relative. After bisection the value is post-validated against the
/// two sided implications `F(v + eps) <= v + eps` and `F(v - eps) >= v - eps`
/// with `eps = 10 * abs_tol`, which certify the value independently of how
/// the crossing was located. Exactly constant integrands return `k ∧ mu(A)`
/// directly (the fixed-point premise of a continuous strictly decreasing `F`
/// does not hold for them).
pub fn integrate_fixed_point(
    f: &RealFunction,
    set: Interval,
    mu: &FuzzyMeasure,
    cfg: &RootConfig,
) -> Result<SugenoResult> {
    let dist = DistributionFunction::new(f.clone(), set, *mu)?;
    let total = mu.measure(&IntervalUnion::single(set))?;
    let (vmin, vmax) = dist.value_range();
    if vmin < 0.0 {
        let (x, value) = dist.min_location();
        return Err(Error::NegativeFunction { x, value });
    }
    if vmax == vmin {
        return Ok(SugenoResult {
            value: vmax.min(total),
            method: Method::FixedPoint,
            residual: 0.0,
            iterations_or_gridsize: 0,
        });
    }
    let hi = (vmax * (1.0 + SUP_INFLATION)).min(total);
    if hi <= 0.0 {
        return Ok(SugenoResult {
            value: 0.0,
            method: Method::FixedPoint,
            residual: 0.0,
            iterations_or_gridsize: 0,
        });
    }

    let root = rootfind::solve_fixed_point(|alpha| dist.eval(alpha), 0.0, hi, cfg)?;

    // Post-checks: mu(A ∩ {f >= alpha}) >= alpha implies the integral is at
    // least alpha, and <= alpha implies at most alpha. Probing both sides of
    // the returned value pins the integral into [v - eps, v + eps].
    let eps = 10.0 * cfg.abs_tol;
    let slack = cfg.abs_tol;
    let above = dist.eval(root.value + eps)?;
    if above > root.value + eps + slack {
        return Err(Error::PostCheckFailed { value: root.value });
    }
    let below_probe = root.value - eps;
    if below_probe > 0.0 {
        let below = dist.eval(below_probe)?;
        if below < below_probe - slack {
            return Err(Error::PostCheckFailed { value: root.value });
        }
    }

    Ok(SugenoResult {
        value: root.value,
        method: Method::FixedPoint,
        residual: root.residual.abs(),
        iterations_or_gridsize: root.iterations,
    })
}

// One x-segment of the piecewise-linear sample model, classified by its value
// range [lo, hi].
struct Segment {
    lo: f64,
    hi: f64,
    flat: bool,
}

/// Sugeno integral via the sup-min definition on a uniform alpha grid.
///
/// `f` is sampled once on a fine x-grid; between samples it is modeled as
/// piecewise linear, which makes `F` computable in closed form per segment.
/// The sweep keeps running sums over segments as alpha rises, so the whole
/// grid costs `O((n_x + grid_size) log n_x)` instead of a superlevel scan per
/// alpha. The maximum is taken over `alpha` in `[0, min(sup f, mu(A))]`.
pub fn integrate_grid(
    f: &RealFunction,
    set: Interval,
    mu: &FuzzyMeasure,
    grid_size: usize,
) -> Result<SugenoResult> {
    let samples = scan(f, set, GRID_X_SEGMENTS)?;
    let total = mu.measure(&IntervalUnion::single(set))?;
    let vmax = samples.1.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let top = vmax.min(total);
    grid_sweep(&samples.1, set, total, grid_size, top)
}

/// Same as [`integrate_grid`] but with an explicit alpha-grid upper end.
///
/// Two integrands evaluated with the same `alpha_top` share the exact same
/// alpha grid, which makes monotonicity comparisons between them exact up to
/// rounding: pointwise `f <= g` forces every grid term of `f` below the
/// matching term of `g`.
pub fn integrate_grid_with_top(
    f: &RealFunction,
    set: Interval,
    mu: &FuzzyMeasure,
    grid_size: usize,
    alpha_top: f64,
) -> Result<SugenoResult> {
    let samples = scan(f, set, GRID_X_SEGMENTS)?;
    let total = mu.measure(&IntervalUnion::single(set))?;
    grid_sweep(&samples.1, set, total, grid_size, alpha_top.min(total))
}

fn grid_sweep(
    values: &[f64],
    set: Interval,
    total: f64,
    grid_size: usize,
    top: f64,
) -> Result<SugenoResult> {
    if grid_size < 2 {
        return Err(Error::InvalidConfig {
            reason: format!("grid size must be at least 2, got {grid_size}"),
        });
    }
    if top <= 0.0 || total <= 0.0 {
        return Ok(SugenoResult {
            value: 0.0,
            method: Method::Grid,
            residual: 0.0,
            iterations_or_gridsize: grid_size,
        });
    }

    let n = values.len() - 1;
    let h = set.length() / n as f64;
    let mut segments = Vec::with_capacity(n);
    for w in values.windows(2) {
        let (lo, hi) = if w[0] <= w[1] {
            (w[0], w[1])
        } else {
            (w[1], w[0])
        };
        let flat = hi - lo <= 1e-9 * hi.abs().max(1.0);
        segments.push(Segment { lo, hi, flat });
    }

    let mut by_lo: Vec<usize> = (0..n).collect();
    by_lo.sort_by(|&i, &j| segments[i].lo.partial_cmp(&segments[j].lo).expect("finite"));
    let mut by_hi: Vec<usize> = (0..n).collect();
    by_hi.sort_by(|&i, &j| segments[i].hi.partial_cmp(&segments[j].hi).expect("finite"));

    // State: segments start "full" (counted whole), move to "partial" once
    // alpha passes their low value, and drop out past their high value.
    // F(alpha) = n_full*h + sum_hi_frac - alpha*sum_frac.
    let mut n_full = n as f64;
    let mut sum_hi_frac = 0.0f64;
    let mut sum_frac = 0.0f64;
    let mut p_lo = 0;
    let mut p_hi = 0;

    let step = top / (grid_size - 1) as f64;
    let mut best_value = 0.0f64;
    let mut best_alpha = 0.0f64;
    let mut best_dist = total;
    for k in 0..grid_size {
        let alpha = if k + 1 == grid_size {
            top
        } else {
            step * k as f64
        };
        while p_lo < n && segments[by_lo[p_lo]].lo < alpha {
            let seg = &segments[by_lo[p_lo]];
            if !seg.flat {
                let inv_span = h / (seg.hi - seg.lo);
                n_full -= 1.0;
                sum_hi_frac += seg.hi * inv_span;
                sum_frac += inv_span;
            }
            p_lo += 1;
        }
        while p_hi < n && segments[by_hi[p_hi]].hi < alpha {
            let seg = &segments[by_hi[p_hi]];
            if seg.flat {
                n_full -= 1.0;
            } else {
                let inv_span = h / (seg.hi - seg.lo);
                sum_hi_frac -= seg.hi * inv_span;
                sum_frac -= inv_span;
            }
            p_hi += 1;
        }
        let dist = (n_full * h + sum_hi_frac - alpha * sum_frac)
            .max(0.0)
            .min(total);
        let term = alpha.min(dist);
        if term > best_value {
            best_value = term;
            best_alpha = alpha;
            best_dist = dist;
        }
    }

    Ok(SugenoResult {
        value: best_value,
        method: Method::Grid,
        residual: (best_dist - best_alpha).abs(),
        iterations_or_gridsize: grid_size,
    })
}

/// Fixed-point integration with automatic fallback to the grid oracle when
/// the fixed-point premise fails (diagonal jumps, plateaus, bracket trouble).
pub fn integrate(f: &RealFunction, set: Interval, mu: &FuzzyMeasure) -> Result<SugenoResult> {
    match integrate_fixed_point(f, set, mu, &RootConfig::default()) {
        Ok(result) => Ok(result),
        Err(
            Error::DegenerateCrossing { .. }
            | Error::NotNonIncreasing { .. }
            | Error::NoSignChange { .. }
            | Error::PostCheckFailed { .. }
            | Error::IterationLimit { .. }
            | Error::InvalidBracket { .. },
        ) => integrate_grid(f, set, mu, DEFAULT_GRID_SIZE),
        Err(other) => Err(other),
    }
}

/// Pass/fail record for the basic Sugeno integral laws, checked numerically
/// on a concrete pair `f <= g`.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub measure_total: f64,
    pub integral_f: f64,
    pub integral_g: f64,
    /// Integrals never exceed the measure of the set.
    pub bounded_by_measure: bool,
    /// Integral of a constant k is exactly `k ∧ mu(A)`.
    pub constant_rule_ok: bool,
    pub constant_rule_worst: f64,
    /// Sampled check that f <= g actually holds.
    pub order_verified: bool,
    /// Integral of f <= integral of g (shared alpha grid).
    pub monotone_ok: bool,
    pub pass: bool,
}

/// Check the basic integral laws: boundedness by `mu(A)`, the constant rule,
/// and monotonicity in the integrand for a sampled-verified pair `f <= g`.
///
/// The monotonicity comparison evaluates both integrands over one shared
/// alpha grid, so the inequality is exact up to rounding rather than limited
/// by the grid resolution.
pub fn check_properties(
    f: &RealFunction,
    g: &RealFunction,
    set: Interval,
    mu: &FuzzyMeasure,
) -> Result<PropertyReport> {
    let total = mu.measure(&IntervalUnion::single(set))?;

    // Sampled pointwise order and supremum for the shared grid.
    let order_samples = 1000;
    let step = set.length() / order_samples as f64;
    let mut order_verified = true;
    let mut max_g = f64::NEG_INFINITY;
    for i in 0..=order_samples {
        let x = if i == order_samples {
            set.hi()
        } else {
            set.lo() + step * i as f64
        };
        let fv = f.eval(x)?;
        let gv = g.eval(x)?;
        if fv > gv + 1e-12 * gv.abs().max(1.0) {
            order_verified = false;
        }
        max_g = max_g.max(gv.max(fv));
    }

    let int_f = integrate(f, set, mu)?;
    let int_g = integrate(g, set, mu)?;
    let bounded_by_measure = int_f.value <= total + 1e-12 && int_g.value <= total + 1e-12;

    // Constant rule on a spread of constants straddling mu(A).
    let constants: Vec<f64> = if total > 0.0 {
        vec![
            0.25 * total,
            0.5 * total,
            0.99 * total,
            total,
            1.01 * total,
            2.0 * total,
        ]
    } else {
        vec![0.0, 0.5, 1.0]
    };
    let mut constant_rule_worst = 0.0f64;
    for k in constants {
        let constant = RealFunction::constant(k, set);
        let expected = k.min(total);
        let fp = integrate_fixed_point(&constant, set, mu, &RootConfig::default())?;
        let gr = integrate_grid(&constant, set, mu, DEFAULT_GRID_SIZE)?;
        constant_rule_worst = constant_rule_worst
            .max((fp.value - expected).abs())
            .max((gr.value - expected).abs());
    }
    let constant_rule_ok = constant_rule_worst <= 1e-12;

    // Monotonicity over a shared alpha grid.
    let top = max_g.min(total);
    let monotone_ok = if top > 0.0 {
        let mf = integrate_grid_with_top(f, set, mu, DEFAULT_GRID_SIZE, top)?;
        let mg = integrate_grid_with_top(g, set, mu, DEFAULT_GRID_SIZE, top)?;
        mf.value <= mg.value + 1e-9
    } else {
        true
    };

    let pass = bounded_by_measure && constant_rule_ok && order_verified && monotone_ok;
    Ok(PropertyReport {
        measure_total: total,
        integral_f: int_f.value,
        integral_g: int_g.value,
        bounded_by_measure,
        constant_rule_ok,
        constant_rule_worst,
        order_verified,
        monotone_ok,
        pass,
    })
}
