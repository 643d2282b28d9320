//! Bracketed bisection and a fixed-point solver built on it.
//!
//! Bisection is the only method here: the target functions are parsed
//! expressions (no derivatives available) and every equation in this crate
//! comes with a natural bracket, so robustness wins over speed. Results are
//! deterministic — identical inputs give bit-identical roots.

use crate::{Error, Result};

/// Tolerances for [`bisect`] and [`solve_fixed_point`].
#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    /// Terminate once the bracket width is at most this. Must be positive.
    pub abs_tol: f64,
    /// Hard iteration cap.
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            abs_tol: 1e-10,
            max_iter: 200,
        }
    }
}

impl RootConfig {
    fn validate(&self) -> Result<()> {
        if self.abs_tol <= 0.0 || !self.abs_tol.is_finite() {
            return Err(Error::InvalidConfig {
                reason: format!("abs_tol must be positive and finite, got {}", self.abs_tol),
            });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig {
                reason: "max_iter must be at least 1".to_string(),
            });
        }
        Ok(())
    }
}

/// A located root with diagnostics. `residual` is `phi(value)` as evaluated,
/// not hidden behind the tolerance; `bracket` is the final enclosing bracket.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// Bisection on `[lo, hi]`. Requires `phi(lo)` and `phi(hi)` finite with
/// opposite signs (or one of them exactly zero, which returns immediately).
pub fn bisect<F>(mut phi: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "need finite lo < hi".to_string(),
        });
    }

    let mut eval = |x: f64| -> Result<f64> {
        let v = phi(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEvaluation { x })
        }
    };

    let phi_lo = eval(lo)?;
    if phi_lo == 0.0 {
        return Ok(Root {
            value: lo,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    let phi_hi = eval(hi)?;
    if phi_hi == 0.0 {
        return Ok(Root {
            value: hi,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    if phi_lo.signum() == phi_hi.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            phi_lo,
            phi_hi,
        });
    }

    let mut left = lo;
    let mut right = hi;
    let mut phi_left = phi_lo;
    for iteration in 1..=cfg.max_iter {
        let mid = 0.5 * (left + right);
        let phi_mid = eval(mid)?;
        if phi_mid == 0.0 {
            return Ok(Root {
                value: mid,
                residual: 0.0,
                iterations: iteration,
                bracket: (left, right),
            });
        }
        if phi_mid.signum() == phi_left.signum() {
            left = mid;
            phi_left = phi_mid;
        } else {
            right = mid;
        }
        if right - left <= cfg.abs_tol {
            let value = 0.5 * (left + right);
            let residual = eval(value)?;
            return Ok(Root {
                value,
                residual,
                iterations: iteration,
                bracket: (left, right),
            });
        }
    }
    Err(Error::IterationLimit {
        iterations: cfg.max_iter,
        width: right - left,
    })
}

// A residual larger than this (scaled by the magnitude of F) after bisection
// converged means F jumps across the diagonal instead of crossing it.
fn jump_tolerance(cfg: &RootConfig, scale: f64) -> f64 {
    (1e-6f64).max(1e3 * cfg.abs_tol) * scale.max(1.0)
}

/// Solve `F(alpha) = alpha` for a non-increasing `F` on `[lo, hi]`.
///
/// Validates `F(lo) >= lo` and `F(hi) <= hi` first, spot-checks that `F` is
/// non-increasing on a few interior samples, and then bisects
/// `theta(alpha) = F(alpha) - alpha`. If the converged residual is far from
/// zero the crossing is a jump with no solution and
/// [`Error::DegenerateCrossing`] is returned; callers fall back to the
/// sup-min grid method in that case.
pub fn solve_fixed_point<F>(mut dist: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "need finite lo < hi".to_string(),
        });
    }

    // Spot-check monotonicity on five evenly spaced samples.
    let width = hi - lo;
    let mut previous: Option<(f64, f64)> = None;
    let mut f_lo = 0.0;
    for k in 0..5 {
        let alpha = lo + width * (k as f64) / 4.0;
        let value = dist(alpha)?;
        if !value.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: alpha });
        }
        if k == 0 {
            f_lo = value;
        }
        if let Some((_, prev_value)) = previous {
            let slack = 1e-9 * prev_value.abs().max(1.0);
            if value > prev_value + slack {
                return Err(Error::NotNonIncreasing { alpha });
            }
        }
        previous = Some((alpha, value));
    }
    let f_hi = previous.expect("looped at least once").1;

    let theta_lo = f_lo - lo;
    let theta_hi = f_hi - hi;
    if theta_lo < 0.0 || theta_hi > 0.0 {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: format!(
                "diagonal not straddled: theta(lo) = {theta_lo}, theta(hi) = {theta_hi}"
            ),
        });
    }
    if theta_lo == 0.0 {
        return Ok(Root {
            value: lo,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }
    if theta_hi == 0.0 {
        return Ok(Root {
            value: hi,
            residual: 0.0,
            iterations: 0,
            bracket: (lo, hi),
        });
    }

    let root = bisect(|alpha| Ok(dist(alpha)? - alpha), lo, hi, cfg)?;

    if root.residual.abs() > jump_tolerance(cfg, f_lo.abs()) {
        return Err(Error::DegenerateCrossing {
            alpha: root.value,
            residual: root.residual,
        });
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA: f64 = 0.5671432904097838; // root of -ln(a) - a = 0

    fn cfg() -> RootConfig {
        RootConfig::default()
    }

    #[test]
    fn finds_the_omega_constant() {
        let root = bisect(|a| Ok(-a.ln() - a), 0.1, 1.0, &cfg()).unwrap();
        assert!((root.value - OMEGA).abs() < 1e-9);
        assert!(root.residual.abs() < 1e-9);
        assert!(root.bracket.1 - root.bracket.0 <= cfg().abs_tol);
        assert!(root.iterations <= cfg().max_iter);
    }

    #[test]
    fn finds_the_log_sine_root() {
        // ln(a) + sin(1)*a = 0
        let s = 1.0f64.sin();
        let root = bisect(|a| Ok(a.ln() + s * a), 0.1, 1.0, &cfg()).unwrap();
        assert!((root.value - 0.6023726093202865).abs() < 1e-9);
    }

    #[test]
    fn exact_zero_short_circuits() {
        let root = bisect(|x| Ok(x - 0.5), 0.0, 1.0, &cfg()).unwrap();
        assert_eq!(root.value, 0.5);
        assert_eq!(root.residual, 0.0);
        assert_eq!(root.iterations, 1);
    }

    #[test]
    fn zero_at_an_endpoint_is_accepted() {
        let root = bisect(Ok, 0.0, 1.0, &cfg()).unwrap();
        assert_eq!(root.value, 0.0);
        assert_eq!(root.iterations, 0);
    }

    #[test]
    fn rejects_brackets_without_sign_change() {
        let err = bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn rejects_inverted_and_non_finite_brackets() {
        assert!(matches!(
            bisect(Ok, 1.0, 0.0, &cfg()),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(matches!(
            bisect(Ok, f64::NAN, 1.0, &cfg()),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn surfaces_non_finite_evaluations() {
        let err = bisect(
            |x| {
                Ok(if x > 0.4 && x < 0.6 {
                    f64::NAN
                } else {
                    0.5 - x
                })
            },
            0.0,
            1.0,
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteEvaluation { .. }));
    }

    #[test]
    fn residual_no_worse_than_the_endpoints() {
        type Check = (fn(f64) -> f64, f64, f64);
        let checks: Vec<Check> = vec![
            (|a| -a.ln() - a, 0.1, 1.0),
            (|a| a.ln() + 0.8414709848078965 * a, 0.1, 1.0),
            (|x| x.exp() - 2.0, 0.0, 2.0),
            (|x| x * x * x - 0.2, 0.0, 1.0),
        ];
        for (phi, lo, hi) in checks {
            let root = bisect(|x| Ok(phi(x)), lo, hi, &cfg()).unwrap();
            assert!(root.residual.abs() <= phi(lo).abs());
            assert!(root.residual.abs() <= phi(hi).abs());
        }
    }

    #[test]
    fn deterministic_bit_for_bit() {
        let run = || bisect(|a| Ok(-a.ln() - a), 0.1, 1.0, &cfg()).unwrap();
        let (a, b) = (run(), run());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn fixed_point_of_negative_log() {
        let root = solve_fixed_point(|a| Ok(-a.ln()), 1e-6, 1.0, &cfg()).unwrap();
        assert!((root.value - OMEGA).abs() < 1e-9);
    }

    #[test]
    fn fixed_point_of_a_constant_is_the_constant() {
        let root = solve_fixed_point(|_| Ok(0.25), 0.0, 1.0, &cfg()).unwrap();
        assert!((root.value - 0.25).abs() < 1e-10);
        assert!(root.residual.abs() < 1e-9);
    }

    #[test]
    fn fixed_point_of_arcsine_distribution() {
        // F(a) = arcsin(-ln a)/2 on [e^-1, 1]; the crossing sits at the value
        // later cross-checked against the sup-min oracle.
        let root = solve_fixed_point(|a| Ok((-a.ln()).asin() / 2.0), (-1.0f64).exp(), 1.0, &cfg())
            .unwrap();
        assert!((root.value - 0.4544031296819518).abs() < 1e-9);
    }

    #[test]
    fn fixed_point_rejects_increasing_functions() {
        let err = solve_fixed_point(|a| Ok(a * a + 0.1), 0.0, 0.5, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotNonIncreasing { .. }));
    }

    #[test]
    fn fixed_point_rejects_unstraddled_diagonals() {
        // F below the diagonal on the whole bracket.
        let err = solve_fixed_point(|_| Ok(0.0), 0.5, 1.0, &cfg()).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { .. }));
    }

    #[test]
    fn fixed_point_detects_diagonal_jumps() {
        // F drops from 0.7 straight to 0.0 at alpha = 0.5: no crossing.
        let err = solve_fixed_point(|a| Ok(if a <= 0.5 { 0.7 } else { 0.0 }), 0.0, 1.0, &cfg())
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateCrossing { .. }));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Bracket width halves every iteration, so the final width is
            // bounded by the initial width divided by 2^iterations.
            #[test]
            fn bracket_width_halves(shift in 0.05f64..0.95, scale in 0.2f64..5.0) {
                let root = bisect(|x| Ok(scale * (x - shift)), 0.0, 1.0, &cfg()).unwrap();
                let width = root.bracket.1 - root.bracket.0;
                prop_assert!(width <= 1.0 / 2f64.powi(root.iterations as i32) + 1e-15);
                prop_assert!((root.value - shift).abs() < 1e-9);
            }

            #[test]
            fn monotone_cubic_roots_are_found(c in 0.05f64..0.9) {
                let root = bisect(|x| Ok(x * x * x - c), 0.0, 1.0, &cfg()).unwrap();
                prop_assert!((root.value - c.cbrt()).abs() < 1e-9);
            }
        }
    }
}
