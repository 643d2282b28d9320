//! Integrate a textual expression by both methods and compare them.
//!
//! Run with: cargo run --example integrate_expression

use sugeno::{
    integrate_fixed_point, integrate_grid, FuzzyMeasure, Interval, RealFunction, RootConfig,
};

fn main() -> Result<(), sugeno::Error> {
    let set = Interval::unit();
    let mu = FuzzyMeasure::lebesgue(set);
    let f = RealFunction::parse("exp(-x)", set)?;

    // Primary route: solve F(alpha) = alpha for the distribution function
    // F(alpha) = mu([0,1] ∩ {f >= alpha}).
    let fixed = integrate_fixed_point(&f, set, &mu, &RootConfig::default())?;
    println!(
        "fixed point : {:.12}  (residual {:.2e}, {} iterations)",
        fixed.value, fixed.residual, fixed.iterations_or_gridsize
    );

    // Independent oracle: maximize min(alpha, F(alpha)) over a dense grid,
    // straight from the sup-min definition.
    let grid = integrate_grid(&f, set, &mu, 100_001)?;
    println!(
        "grid oracle : {:.12}  (alpha grid of {})",
        grid.value, grid.iterations_or_gridsize
    );

    println!("difference  : {:.2e}", (fixed.value - grid.value).abs());

    // The same machinery accepts any positive expression in x.
    for text in ["exp(-cos(x)-1)", "1/(x+1)", "0.25"] {
        let g = RealFunction::parse(text, set)?;
        let result = integrate_fixed_point(&g, set, &mu, &RootConfig::default())?;
        println!("{text:>16} -> {:.12}", result.value);
    }
    Ok(())
}
