//! Sugeno (fuzzy) integrals of positive functions on closed intervals, with
//! Hermite–Hadamard-type upper bounds for log-convex integrands.
//!
//! The Sugeno integral of `f` over a set `A` with respect to a fuzzy measure
//! `mu` is the sup-min aggregation
//!
//! ```text
//! (s)∫_A f dmu  =  sup_{alpha >= 0}  min( alpha, mu(A ∩ {f >= alpha}) )
//! ```
//!
//! For a continuous, strictly decreasing distribution function
//! `F(alpha) = mu(A ∩ {f >= alpha})` the integral is the fixed point of
//! `F(alpha) = alpha`, which is how [`integral::integrate_fixed_point`]
//! computes it. [`integral::integrate_grid`] evaluates the sup-min definition
//! directly on a dense alpha grid and acts as an independent oracle.
//!
//! The [`hh`] module checks the classical Hermite–Hadamard inequality against
//! the Sugeno integral (both sides can fail) and computes the upper bounds
//! `min{alpha, b-a}` available for log-convex integrands, where `alpha` solves
//! a case equation determined by the endpoint values.
//!
//! Modules:
//!
//! - [`measure`]  — closed intervals, finite unions, Lebesgue-type measures
//! - [`expr`]     — the expression language behind textual `--f` inputs
//! - [`analysis`] — shape classification, log-linear majorant, logarithmic mean
//! - [`rootfind`] — bracketed bisection and the fixed-point solver
//! - [`integral`] — superlevel sets, distribution function, both integrators
//! - [`hh`]       — classical check, upper bounds, bound verification
//! - [`corpus`]   — seeded expression corpora for the property suites
//! - [`cli`]      — the `sugeno` command-line front end
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `cargo run --example integrate_expression`.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod expr;
pub mod hh;
pub mod integral;
pub mod measure;
pub mod rootfind;

pub use analysis::{
    classify, classify_default, log_majorant, logarithmic_mean, Monotonicity, RealFunction,
    ShapeReport,
};
pub use expr::{evaluate, parse, Expr};
pub use hh::{
    bound_general, bound_unit, classical_check, verify_bound, BoundCase, BoundVerification,
    ClassicalHHReport, HHBound,
};
pub use integral::{
    check_properties, distribution, integrate, integrate_fixed_point, integrate_grid,
    superlevel_set, DistributionFunction, Method, PropertyReport, SugenoResult,
};
pub use measure::{FuzzyMeasure, Interval, IntervalUnion, MeasureKind};
pub use rootfind::{bisect, solve_fixed_point, Root, RootConfig};

/// Crate-wide error type.
///
/// Expression-level errors keep their own types ([`expr::ParseError`],
/// [`expr::EvalError`]) and are wrapped here; everything else is a variant.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("set part [{lo}, {hi}] lies outside the measure domain [{domain_lo}, {domain_hi}]")]
    OutsideDomain {
        lo: f64,
        hi: f64,
        domain_lo: f64,
        domain_hi: f64,
    },
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },
    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    InvalidBracket { lo: f64, hi: f64, reason: String },
    #[error("no sign change on [{lo}, {hi}]: phi(lo) = {phi_lo}, phi(hi) = {phi_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        phi_lo: f64,
        phi_hi: f64,
    },
    #[error("evaluation produced a non-finite value at x = {x}")]
    NonFiniteEvaluation { x: f64 },
    #[error("no convergence after {iterations} iterations (bracket width {width:e})")]
    IterationLimit { iterations: usize, width: f64 },
    #[error("distribution function is not non-increasing near alpha = {alpha}")]
    NotNonIncreasing { alpha: f64 },
    #[error(
        "distribution function jumps across the diagonal at alpha = {alpha} \
         (residual {residual:e}); there is no continuous crossing"
    )]
    DegenerateCrossing { alpha: f64, residual: f64 },
    #[error("integrand is negative on the integration set: f({x}) = {value}")]
    NegativeFunction { x: f64, value: f64 },
    #[error("fixed-point value {value} failed the distribution post-checks")]
    PostCheckFailed { value: f64 },
    #[error("endpoint value must be positive: g({x}) = {value}")]
    NonPositiveEndpoint { x: f64, value: f64 },
    #[error("logarithmic mean requires positive arguments, got ({p}, {q})")]
    NonPositiveLogMean { p: f64, q: f64 },
    #[error("case equation residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualCheck { residual: f64, tolerance: f64 },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
