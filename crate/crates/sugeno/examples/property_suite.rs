//! The integral laws checked numerically, plus the corpus-level agreement of
//! the two integration routes.
//!
//! Run with: cargo run --example property_suite

use sugeno::corpus;
use sugeno::{
    check_properties, integrate_fixed_point, integrate_grid, FuzzyMeasure, Interval, RealFunction,
    RootConfig,
};

fn main() -> Result<(), sugeno::Error> {
    let set = Interval::unit();
    let mu = FuzzyMeasure::lebesgue(set);

    // Boundedness, the constant rule and monotonicity on a concrete pair
    // f <= g = f + 1/10.
    let f = RealFunction::parse("exp(-x)", set)?;
    let g = RealFunction::parse("exp(-x)+0.1", set)?;
    let report = check_properties(&f, &g, set, &mu)?;
    println!("integral laws on (exp(-x), exp(-x)+0.1):");
    println!(
        "  integral(f) = {:.10} <= integral(g) = {:.10}",
        report.integral_f, report.integral_g
    );
    println!("  bounded by measure: {}", report.bounded_by_measure);
    println!(
        "  constant rule: {} (worst deviation {:.2e})",
        report.constant_rule_ok, report.constant_rule_worst
    );
    println!("  monotone in the integrand: {}", report.monotone_ok);
    println!("  all pass: {}", report.pass);

    // Fixed point vs sup-min grid over a seeded random corpus of monotone
    // positive expressions.
    println!("\nfixed point vs grid on a seeded corpus:");
    let mut worst = 0.0f64;
    for entry in corpus::monotone_positive(42, 20) {
        let eset = Interval::new(entry.a, entry.b)?;
        let ef = RealFunction::parse(&entry.text, eset)?;
        let emu = FuzzyMeasure::lebesgue(eset);
        let fixed = integrate_fixed_point(&ef, eset, &emu, &RootConfig::default())?;
        let grid = integrate_grid(&ef, eset, &emu, 100_001)?;
        worst = worst.max((fixed.value - grid.value).abs());
    }
    println!("  20 expressions, worst |fixed - grid| = {worst:.3e}");
    Ok(())
}
