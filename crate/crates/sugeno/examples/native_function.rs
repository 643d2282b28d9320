//! Integrands do not have to come from the expression parser: any closure
//! can be wrapped as a RealFunction.
//!
//! Run with: cargo run --example native_function

use sugeno::{
    classify_default, integrate, integrate_fixed_point, FuzzyMeasure, Interval, RealFunction,
    RootConfig,
};

fn main() -> Result<(), sugeno::Error> {
    let set = Interval::unit();
    let mu = FuzzyMeasure::lebesgue(set);

    // A native closure; non-finite outputs surface as evaluation errors.
    let f = RealFunction::native(|x: f64| (0.3 * x).cosh().recip(), set);
    let shape = classify_default(&f)?;
    println!(
        "1/cosh(0.3x): positive={}, monotone={:?}, log_convex={}",
        shape.positive, shape.monotone, shape.log_convex
    );
    let result = integrate(&f, set, &mu)?;
    println!("integral = {:.12} via {:?}", result.value, result.method);

    // A step function: the distribution function jumps across the diagonal,
    // so the fixed-point route declines and `integrate` falls back to the
    // sup-min grid.
    let step = RealFunction::native(|x| if x < 0.3 { 0.1 } else { 0.5 }, set);
    match integrate_fixed_point(&step, set, &mu, &RootConfig::default()) {
        Ok(r) => println!("step fixed point unexpectedly succeeded: {}", r.value),
        Err(e) => println!("step fixed point declined: {e}"),
    }
    let result = integrate(&step, set, &mu)?;
    println!(
        "step integral = {:.12} via {:?} (sup-min handles the jump)",
        result.value, result.method
    );
    Ok(())
}
