//! Explore the distribution function F(alpha) = mu(A ∩ {f >= alpha}) and the
//! superlevel sets behind it.
//!
//! Run with: cargo run --example distribution_function

use sugeno::{distribution, superlevel_set, FuzzyMeasure, Interval, RealFunction};

fn main() -> Result<(), sugeno::Error> {
    let set = Interval::unit();
    let mu = FuzzyMeasure::lebesgue(set);
    let f = RealFunction::parse("exp(-x)", set)?;

    // For f = exp(-x) on [0, 1] the superlevel set {f >= alpha} is
    // [0, -ln(alpha)] once alpha is in [1/e, 1].
    let level = superlevel_set(&f, set, 0.5)?;
    println!("{{exp(-x) >= 0.5}} on [0,1]:");
    for part in level.parts() {
        println!("  [{:.12}, {:.12}]", part.lo(), part.hi());
    }
    println!(
        "  total length {:.12} (ln 2 = {:.12})",
        level.total_length(),
        std::f64::consts::LN_2
    );

    // The distribution function is non-increasing, starts at mu(A), and
    // vanishes above the supremum of f.
    let dist = distribution(&f, set, &mu)?;
    println!("\nalpha      F(alpha)      -ln(alpha)");
    for k in 1..10 {
        let alpha = k as f64 / 10.0;
        let value = dist.eval(alpha)?;
        let analytic = (-alpha.ln()).clamp(0.0, 1.0);
        println!("{alpha:.1}        {value:.9}   {analytic:.9}");
    }

    // A function with a two-component superlevel set.
    let vee = RealFunction::parse("abs(x-0.5)", set)?;
    let level = superlevel_set(&vee, set, 0.25)?;
    println!("\n{{|x-1/2| >= 1/4}} on [0,1]:");
    for part in level.parts() {
        println!("  [{:.6}, {:.6}]", part.lo(), part.hi());
    }
    Ok(())
}
