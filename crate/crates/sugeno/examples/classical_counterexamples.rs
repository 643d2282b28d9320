//! Both sides of the classical Hermite-Hadamard inequality can fail when the
//! Lebesgue integral is replaced by a Sugeno integral.
//!
//! Run with: cargo run --example classical_counterexamples

use sugeno::{classical_check, Interval, RealFunction};

fn main() -> Result<(), sugeno::Error> {
    let unit = Interval::unit();

    // Left side fails: the midpoint value exceeds the Sugeno integral.
    let f = RealFunction::parse("exp(-x)", unit)?;
    let report = classical_check(&f, 0.0, 1.0)?;
    println!("exp(-x) on [0,1]:");
    println!("  midpoint f(1/2)      = {:.10}", report.midpoint_value);
    println!("  sugeno integral      = {:.10}", report.sugeno_value);
    println!(
        "  log mean L(f(0),f(1)) = {:.10}",
        report.mean_integral_bound
    );
    println!(
        "  left holds: {}   right holds: {}",
        report.left_holds, report.right_holds
    );

    // Right side fails: the integral exceeds the logarithmic mean of the
    // endpoint values.
    let f = RealFunction::parse("exp(-cos(x)-1)", unit)?;
    let report = classical_check(&f, 0.0, 1.0)?;
    println!("\nexp(-cos(x)-1) on [0,1]:");
    println!("  midpoint f(1/2)      = {:.10}", report.midpoint_value);
    println!("  sugeno integral      = {:.10}", report.sugeno_value);
    println!(
        "  log mean L(f(0),f(1)) = {:.10}",
        report.mean_integral_bound
    );
    println!(
        "  left holds: {}   right holds: {}",
        report.left_holds, report.right_holds
    );

    // Constants sit exactly on both bounds.
    let f = RealFunction::parse("0.3", unit)?;
    let report = classical_check(&f, 0.0, 1.0)?;
    println!(
        "\nconstant 0.3: left holds: {}, right holds: {} (all three values {:.1})",
        report.left_holds, report.right_holds, report.sugeno_value
    );
    Ok(())
}
