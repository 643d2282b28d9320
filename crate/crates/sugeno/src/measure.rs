//! Closed intervals, finite disjoint unions, and Lebesgue-type fuzzy measures.
//!
//! The measurable sets of this crate are finite unions of closed subintervals
//! of the working domain; superlevel sets of the continuous functions in
//! scope always have that form. A fuzzy measure here is a monotone set
//! function with `measure(∅) = 0`; the only kind implemented is the Lebesgue
//! measure (total length), for which monotonicity and additivity hold by
//! construction.

use serde::Serialize;

use crate::{Error, Result};

/// Closed interval `[lo, hi]`, `lo <= hi`. Degenerate points (`lo == hi`)
/// are valid and have length zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The unit interval `[0, 1]`.
    pub fn unit() -> Self {
        Interval { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Finite union of disjoint closed intervals, sorted by lower endpoint.
///
/// After normalization consecutive parts satisfy `p.hi < q.lo`: touching
/// intervals are merged, while isolated degenerate points are retained as
/// parts of measure zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    /// Sort, merge overlapping or touching intervals, and return the
    /// normalized union.
    pub fn normalize(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| {
            a.lo.partial_cmp(&b.lo)
                .expect("interval endpoints are finite")
                .then(a.hi.partial_cmp(&b.hi).expect("finite"))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for part in parts {
            match merged.last_mut() {
                Some(last) if part.lo <= last.hi => {
                    if part.hi > last.hi {
                        last.hi = part.hi;
                    }
                }
                _ => merged.push(part),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn single(interval: Interval) -> Self {
        IntervalUnion {
            parts: vec![interval],
        }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.parts.iter().map(Interval::length).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }
}

/// Tag for the measure family. Only Lebesgue is implemented; the tag keeps
/// the door open for distorted-Lebesgue variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Lebesgue,
}

/// A fuzzy measure over subsets of a fixed domain interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzyMeasure {
    kind: MeasureKind,
    domain: Interval,
}

impl FuzzyMeasure {
    pub fn lebesgue(domain: Interval) -> Self {
        FuzzyMeasure {
            kind: MeasureKind::Lebesgue,
            domain,
        }
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Measure of the whole domain.
    pub fn total(&self) -> f64 {
        match self.kind {
            MeasureKind::Lebesgue => self.domain.length(),
        }
    }

    /// Measure of a finite union of subintervals of the domain.
    pub fn measure(&self, set: &IntervalUnion) -> Result<f64> {
        for part in set.parts() {
            if !self.domain.contains_interval(part) {
                return Err(Error::OutsideDomain {
                    lo: part.lo(),
                    hi: part.hi(),
                    domain_lo: self.domain.lo(),
                    domain_hi: self.domain.hi(),
                });
            }
        }
        match self.kind {
            MeasureKind::Lebesgue => Ok(set.total_length()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn empty_set_has_measure_zero() {
        let mu = FuzzyMeasure::lebesgue(Interval::unit());
        assert_eq!(mu.measure(&IntervalUnion::empty()).unwrap(), 0.0);
    }

    #[test]
    fn full_interval_has_full_measure() {
        let mu = FuzzyMeasure::lebesgue(Interval::unit());
        let s = IntervalUnion::single(Interval::unit());
        assert_eq!(mu.measure(&s).unwrap(), 1.0);
    }

    #[test]
    fn quarter_pi_domain() {
        let domain = iv(std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2);
        let mu = FuzzyMeasure::lebesgue(domain);
        let got = mu.measure(&IntervalUnion::single(domain)).unwrap();
        assert!((got - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_intervals() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::new(0.25, 0.25).is_ok());
    }

    #[test]
    fn normalize_merges_touching_intervals() {
        let u = IntervalUnion::normalize(vec![iv(0.0, 0.5), iv(0.5, 1.0)]);
        assert_eq!(u.parts(), &[iv(0.0, 1.0)]);
    }

    #[test]
    fn normalize_merges_overlaps() {
        let u = IntervalUnion::normalize(vec![iv(0.2, 0.4), iv(0.1, 0.3)]);
        assert_eq!(u.parts(), &[iv(0.1, 0.4)]);
    }

    #[test]
    fn normalize_sorts_and_sums() {
        let u = IntervalUnion::normalize(vec![iv(0.7, 0.9), iv(0.1, 0.2)]);
        assert_eq!(u.parts(), &[iv(0.1, 0.2), iv(0.7, 0.9)]);
        assert!((u.total_length() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn degenerate_points_are_retained() {
        let u = IntervalUnion::normalize(vec![iv(0.3, 0.3), iv(0.5, 0.6)]);
        assert_eq!(u.parts(), &[iv(0.3, 0.3), iv(0.5, 0.6)]);
        assert!((u.total_length() - 0.1).abs() < 1e-15);
        // ... unless they touch a longer part.
        let merged = IntervalUnion::normalize(vec![iv(0.5, 0.5), iv(0.5, 0.6)]);
        assert_eq!(merged.parts(), &[iv(0.5, 0.6)]);
    }

    #[test]
    fn out_of_domain_part_is_an_error() {
        let mu = FuzzyMeasure::lebesgue(Interval::unit());
        let s = IntervalUnion::single(iv(0.5, 1.5));
        assert!(matches!(mu.measure(&s), Err(Error::OutsideDomain { .. })));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_parts() -> impl Strategy<Value = Vec<Interval>> {
            proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..8).prop_map(|pairs| {
                pairs
                    .into_iter()
                    .map(|(a, b)| iv(a.min(b), a.max(b)))
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn monotone_under_nesting(parts in arb_parts(), extra in arb_parts()) {
                // E = normalize(parts) ⊆ F = normalize(parts ∪ extra)
                let mu = FuzzyMeasure::lebesgue(Interval::unit());
                let small = IntervalUnion::normalize(parts.clone());
                let mut all = parts;
                all.extend(extra);
                let large = IntervalUnion::normalize(all);
                let m_small = mu.measure(&small).unwrap();
                let m_large = mu.measure(&large).unwrap();
                prop_assert!(m_small <= m_large + 1e-12);
                prop_assert!(m_large <= mu.total() + 1e-12);
            }

            #[test]
            fn additive_on_disjoint_halves(split in 0.1f64..0.9, gap in 1e-3f64..0.05) {
                let mu = FuzzyMeasure::lebesgue(Interval::unit());
                let left = IntervalUnion::single(iv(0.0, split - gap));
                let right = IntervalUnion::single(iv(split, 1.0));
                let both = IntervalUnion::normalize(vec![iv(0.0, split - gap), iv(split, 1.0)]);
                let sum = mu.measure(&left).unwrap() + mu.measure(&right).unwrap();
                prop_assert!((mu.measure(&both).unwrap() - sum).abs() < 1e-12);
            }

            #[test]
            fn normalized_parts_are_strictly_disjoint(parts in arb_parts()) {
                let u = IntervalUnion::normalize(parts);
                for pair in u.parts().windows(2) {
                    prop_assert!(pair[0].hi() < pair[1].lo());
                }
            }
        }
    }
}
