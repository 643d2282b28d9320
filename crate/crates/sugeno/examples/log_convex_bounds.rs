//! Upper bounds min{alpha, b-a} for Sugeno integrals of log-convex
//! integrands, with verification against both integrators.
//!
//! Run with: cargo run --example log_convex_bounds

use sugeno::{bound_general, bound_unit, verify_bound, Interval, RealFunction};

fn main() -> Result<(), sugeno::Error> {
    let unit = Interval::unit();

    // Increasing endpoints g(0) < g(1): alpha solves
    // 1 - (ln a - ln g(0)) / (ln g(1) - ln g(0)) = a.
    let g = RealFunction::parse("exp(x^2-1)", unit)?;
    let bound = bound_unit(&g)?;
    println!(
        "exp(x^2-1) on [0,1]   case {:?}: alpha = {:.10}, bound = {:.10}, t = {:.10}",
        bound.case,
        bound.alpha,
        bound.bound,
        bound.t.unwrap_or(f64::NAN),
    );

    // Decreasing endpoints g(0) > g(1).
    let g = RealFunction::parse("exp(-sin(x))", unit)?;
    let bound = bound_unit(&g)?;
    println!(
        "exp(-sin(x)) on [0,1] case {:?}: alpha = {:.10}, bound = {:.10}",
        bound.case, bound.alpha, bound.bound
    );

    // General interval [pi/4, pi/2]; the bound clamps at min{alpha, b-a}.
    let (a, b) = (std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2);
    let g = RealFunction::parse("exp(-sin(2*x))", Interval::new(a, b)?)?;
    let bound = bound_general(&g, a, b)?;
    println!(
        "exp(-sin(2x)) on [pi/4,pi/2] case {:?}: alpha = {:.10}, bound = {:.10}",
        bound.case, bound.alpha, bound.bound
    );

    // verify_bound integrates by both methods and reports the slack.
    let verified = verify_bound(&g, a, b)?;
    println!(
        "  integral = {:.10} (grid {:.10}), slack below bound = {:.10}, holds: {}",
        verified.integral, verified.integral_grid, verified.slack, verified.holds
    );

    // Bounds are computed even when the log-convexity check fails, but they
    // are flagged as unsound.
    let not_log_convex = RealFunction::parse("exp(cos(x)-1)", unit)?;
    let bound = bound_unit(&not_log_convex)?;
    println!(
        "exp(cos(x)-1) on [0,1] sound: {} (bound {:.10} carries no guarantee)",
        bound.sound, bound.bound
    );
    Ok(())
}
