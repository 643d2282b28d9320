//! Expression corpora for the property suites: a seeded generator of random
//! monotone positive expressions and a fixed list of log-convex functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An expression together with the interval it is meant to live on.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub text: String,
    pub a: f64,
    pub b: f64,
}

// Coefficients are quantized to four decimals so the emitted text is short
// and reparses to exactly the intended value.
fn quantize(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

/// Seeded random monotone positive expressions over random subintervals of
/// `[0, 2]`. Deterministic for a fixed seed.
pub fn monotone_positive(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let a = quantize(rng.random_range(0.0..1.5));
        let len = quantize(rng.random_range(0.1..(2.0 - a).max(0.11)));
        let b = (a + len).min(2.0);

        let c0 = quantize(rng.random_range(0.05..1.0));
        let c1 = quantize(rng.random_range(0.2..1.5));
        let negative_slope = rng.random_bool(0.5);
        let text = match rng.random_range(0..6u32) {
            0 => {
                let s = quantize(rng.random_range(0.3..1.2));
                if negative_slope {
                    format!("{c0}+{c1}*exp(-{s}*x)")
                } else {
                    format!("{c0}+{c1}*exp({s}*x)")
                }
            }
            1 => {
                if negative_slope {
                    // Keep the linear part positive down to x = 2.
                    let offset = quantize(c0 + 2.0 * c1 + 0.05);
                    format!("{offset}-{c1}*x")
                } else {
                    format!("{c0}+{c1}*x")
                }
            }
            2 => {
                let s = quantize(rng.random_range(0.2..1.0));
                if negative_slope {
                    format!("{c0}*exp(-{s}*x)")
                } else {
                    format!("{c0}*exp({s}*x)")
                }
            }
            3 => {
                if negative_slope {
                    let offset = quantize(c0 + 1.1 * c1 + 0.05);
                    format!("{offset}-{c1}*ln(x+1)")
                } else {
                    format!("{c0}+{c1}*ln(x+1)")
                }
            }
            4 => {
                if negative_slope {
                    let offset = quantize(c0 + 1.5 * c1 + 0.05);
                    format!("{offset}-{c1}*sqrt(x+0.1)")
                } else {
                    format!("{c0}+{c1}*sqrt(x+0.1)")
                }
            }
            _ => {
                if negative_slope {
                    let offset = quantize(c0 + 8.0 * c1 + 0.05);
                    format!("{offset}-{c1}*x^3")
                } else {
                    format!("{c0}+{c1}*x^3")
                }
            }
        };
        entries.push(CorpusEntry { text, a, b });
    }
    entries
}

/// Twenty log-convex functions with their working intervals. Every entry is
/// also positive and log-convex on `[0, 1]`, so the same list drives the
/// unit-interval reduction checks.
pub fn log_convex() -> Vec<CorpusEntry> {
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let raw: Vec<(&str, f64, f64)> = vec![
        ("exp(-x)", 0.0, 1.0),
        ("exp(x^2-1)", 0.0, 1.0),
        ("exp(-sin(x))", 0.0, 1.0),
        ("exp(-sin(2*x))", quarter_pi, half_pi),
        ("1/(x+1)", 0.0, 2.0),
        ("exp(exp(x)-2)", 0.0, 1.0),
        ("exp(abs(x-0.5))", 0.0, 1.0),
        ("2.5", 0.0, 1.5),
        ("0.4", 0.0, 1.0),
        ("exp(2*x-1)", 0.0, 1.0),
        ("exp(-2*x)+exp(x)", 0.0, 1.0),
        ("exp(1/(1+x))", 0.0, 1.0),
        ("exp(x^4)", 0.25, 1.25),
        ("exp(-cos(x)-1)", 0.0, 1.0),
        ("exp(x)/(2-x)", 0.0, 1.0),
        ("1/sqrt(x+0.25)", 0.0, 1.0),
        ("exp((x-1)^2)", 0.0, 2.0),
        ("(exp(x)+exp(-x))/2", -1.0, 1.0),
        ("exp(1/(x+0.5))", 0.0, 1.0),
        ("exp(2^x)", 0.0, 1.0),
    ];
    raw.into_iter()
        .map(|(text, a, b)| CorpusEntry {
            text: text.to_string(),
            a,
            b,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classify_default, Monotonicity, RealFunction};
    use crate::measure::Interval;

    #[test]
    fn generated_expressions_parse_and_are_monotone_positive() {
        for entry in monotone_positive(42, 50) {
            let set = Interval::new(entry.a, entry.b).unwrap();
            let f = RealFunction::parse(&entry.text, set)
                .unwrap_or_else(|e| panic!("`{}` failed to parse: {e}", entry.text));
            let report = classify_default(&f)
                .unwrap_or_else(|e| panic!("`{}` failed to classify: {e}", entry.text));
            assert!(report.positive, "`{}` is not positive", entry.text);
            assert!(
                matches!(
                    report.monotone,
                    Monotonicity::Increasing | Monotonicity::Decreasing | Monotonicity::Constant
                ),
                "`{}` is not monotone",
                entry.text
            );
            assert!(entry.a < entry.b && entry.a >= 0.0 && entry.b <= 2.0);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let a = monotone_positive(7, 10);
        let b = monotone_positive(7, 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.text, y.text);
            assert_eq!(x.a, y.a);
            assert_eq!(x.b, y.b);
        }
        let c = monotone_positive(8, 10);
        assert!(a.iter().zip(&c).any(|(x, y)| x.text != y.text));
    }

    #[test]
    fn log_convex_corpus_classifies_as_log_convex() {
        let entries = log_convex();
        assert_eq!(entries.len(), 20);
        for entry in entries {
            let set = Interval::new(entry.a, entry.b).unwrap();
            let f = RealFunction::parse(&entry.text, set).unwrap();
            let report = classify_default(&f).unwrap();
            assert!(
                report.positive && report.log_convex,
                "`{}` on [{}, {}]: positive={} log_convex={} worst={}",
                entry.text,
                entry.a,
                entry.b,
                report.positive,
                report.log_convex,
                report.worst_violation
            );
            // The same entries must also hold on the unit interval, where the
            // reduction checks run them.
            let unit = f.with_domain(Interval::unit());
            let unit_report = classify_default(&unit).unwrap();
            assert!(
                unit_report.positive && unit_report.log_convex,
                "`{}` is not log-convex on [0, 1]",
                entry.text
            );
        }
    }
}
