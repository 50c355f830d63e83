//! Combinatorial ground truth for the colored partition families.
//!
//! - `a_k(n)`: odd parts come in `k` colors, even parts in one.
//! - `b_k(n)`: even parts come in `k` colors, odd parts in one.
//!
//! Everything here is computed by direct counting or listing and shares no
//! code with the q-series builders.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::etaq::EtaExpression;
use crate::series::TruncatedSeries;

pub const DEFAULT_ENUMERATION_CAP: u64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("number of colors must be at least 1")]
    NoColors,
    #[error("refusing to list partitions of {n} (cap is {cap}); use count instead")]
    CapExceeded { n: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Odd parts colored (`a_k`).
    OddColored,
    /// Even parts colored (`b_k`).
    EvenColored,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::OddColored => "a",
            Family::EvenColored => "b",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "a" => Some(Family::OddColored),
            "b" => Some(Family::EvenColored),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredFamilySpec {
    family: Family,
    colors: u32,
}

impl ColoredFamilySpec {
    pub fn new(family: Family, colors: u32) -> Result<Self, PartitionError> {
        if colors == 0 {
            return Err(PartitionError::NoColors);
        }
        Ok(ColoredFamilySpec { family, colors })
    }

    /// `a_k`. Panics when `k == 0`.
    pub fn odd_colored(k: u32) -> Self {
        Self::new(Family::OddColored, k).expect("a_k needs k >= 1")
    }

    /// `b_k`. Panics when `k == 0`.
    pub fn even_colored(k: u32) -> Self {
        Self::new(Family::EvenColored, k).expect("b_k needs k >= 1")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn colors(self) -> u32 {
        self.colors
    }

    /// How many colors a part of weight `v` may take.
    pub fn colors_for(self, v: u64) -> u32 {
        let odd = v % 2 == 1;
        match (self.family, odd) {
            (Family::OddColored, true) | (Family::EvenColored, false) => self.colors,
            _ => 1,
        }
    }

    /// The generating function as an eta-quotient:
    /// `f_2^(k-1) / f_1^k` for `a_k`, `1 / (f_1 f_2^(k-1))` for `b_k`.
    pub fn generating_function(self) -> EtaExpression {
        let k = i64::from(self.colors);
        match self.family {
            Family::OddColored => EtaExpression::product(&[(2, k - 1), (1, -k)]),
            Family::EvenColored => EtaExpression::product(&[(1, -1), (2, -(k - 1))]),
        }
    }
}

impl fmt::Display for ColoredFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.letter(), self.colors)
    }
}

/// A part of weight `weight` carrying color `color` (1-based).
///
/// Ordered by weight, then by color: `5_3 > 5_1 > 4_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPart {
    pub weight: u64,
    pub color: u32,
}

/// Parts listed in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPartition {
    pub parts: Vec<ColoredPart>,
}

impl ColoredPartition {
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.weight).sum()
    }

    /// Renders like `(2, 1_3)`: monochromatic parts carry no subscript, and
    /// with a single color no part does.
    pub fn render(&self, spec: ColoredFamilySpec) -> String {
        let parts: Vec<String> =
            self.parts
                .iter()
                .map(|p| {
                    if spec.colors_for(p.weight) > 1 {
                        format!("{}_{}", p.weight, p.color)
                    } else {
                        p.weight.to_string()
                    }
                })
                .collect();
        format!("({})", parts.join(", "))
    }
}

impl Ord for ColoredPartition {
    /// Lexicographic by part, the listing order used by [`enumerate`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for ColoredPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Counts for `0..len`, by an unbounded-knapsack pass per (part value, color).
fn dp_counts(spec: ColoredFamilySpec, len: usize) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); len];
    if len == 0 {
        return dp;
    }
    dp[0] = BigUint::one();
    for v in 1..len {
        for _ in 0..spec.colors_for(v as u64) {
            for s in v..len {
                let prev = dp[s - v].clone();
                dp[s] += prev;
            }
        }
    }
    dp
}

pub fn count(spec: ColoredFamilySpec, n: u64) -> BigUint {
    let len = usize::try_from(n).expect("n fits in memory") + 1;
    dp_counts(spec, len).pop().expect("nonempty table")
}

/// `sum_n count(spec, n) q^n` through order `order`, built by counting only.
pub fn oracle_series(spec: ColoredFamilySpec, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(dp_counts(spec, order).into_iter().map(BigInt::from).collect())
}

pub fn enumerate(spec: ColoredFamilySpec, n: u64) -> Result<Vec<ColoredPartition>, PartitionError> {
    enumerate_with_cap(spec, n, DEFAULT_ENUMERATION_CAP)
}

/// Lists every colored partition of `n` in strictly decreasing order.
pub fn enumerate_with_cap(spec: ColoredFamilySpec, n: u64, cap: u64) -> Result<Vec<ColoredPartition>, PartitionError> {
    if n > cap {
        return Err(PartitionError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let top = ColoredPart { weight: n, color: spec.colors_for(n) };
    list(spec, n, top, &mut current, &mut out);
    Ok(out)
}

/// Appends partitions of `rest` whose parts are all at most `bound`, largest
/// first choice first.
fn list(
    spec: ColoredFamilySpec,
    rest: u64,
    bound: ColoredPart,
    current: &mut Vec<ColoredPart>,
    out: &mut Vec<ColoredPartition>,
) {
    if rest == 0 {
        out.push(ColoredPartition { parts: current.clone() });
        return;
    }
    let mut w = bound.weight.min(rest);
    while w >= 1 {
        let top_color = if w == bound.weight { bound.color } else { spec.colors_for(w) };
        for color in (1..=top_color).rev() {
            let part = ColoredPart { weight: w, color };
            current.push(part);
            list(spec, rest - w, part, current, out);
            current.pop();
        }
        w -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: u32) -> ColoredFamilySpec {
        ColoredFamilySpec::odd_colored(k)
    }

    fn b(k: u32) -> ColoredFamilySpec {
        ColoredFamilySpec::even_colored(k)
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(a(3), 3), BigUint::from(16u32));
        assert_eq!(count(a(1), 4), BigUint::from(5u32));
        assert_eq!(count(a(3), 2), BigUint::from(7u32));
        assert_eq!(count(a(2), 2), BigUint::from(4u32));
        assert_eq!(count(a(5), 0), BigUint::one());
    }

    #[test]
    fn zero_colors_rejected() {
        assert_eq!(ColoredFamilySpec::new(Family::OddColored, 0), Err(PartitionError::NoColors));
    }

    #[test]
    fn enumerate_three_colors_of_three_matches_display() {
        let spec = a(3);
        let listed: Vec<String> = enumerate(spec, 3).unwrap().iter().map(|p| p.render(spec)).collect();
        let expected = [
            "(3_3)",
            "(3_2)",
            "(3_1)",
            "(2, 1_3)",
            "(2, 1_2)",
            "(2, 1_1)",
            "(1_3, 1_3, 1_3)",
            "(1_3, 1_3, 1_2)",
            "(1_3, 1_3, 1_1)",
            "(1_3, 1_2, 1_2)",
            "(1_3, 1_2, 1_1)",
            "(1_3, 1_1, 1_1)",
            "(1_2, 1_2, 1_2)",
            "(1_2, 1_2, 1_1)",
            "(1_2, 1_1, 1_1)",
            "(1_1, 1_1, 1_1)",
        ];
        assert_eq!(listed, expected);
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate(a(4), 0).unwrap(), vec![ColoredPartition { parts: vec![] }]);
        let two = enumerate(a(2), 1).unwrap();
        assert_eq!(
            two,
            vec![
                ColoredPartition { parts: vec![ColoredPart { weight: 1, color: 2 }] },
                ColoredPartition { parts: vec![ColoredPart { weight: 1, color: 1 }] },
            ]
        );
        let p4: Vec<String> = enumerate(a(1), 4).unwrap().iter().map(|p| p.render(a(1))).collect();
        assert_eq!(p4, ["(4)", "(3, 1)", "(2, 2)", "(2, 1, 1)", "(1, 1, 1, 1)"]);
        let a22: Vec<String> = enumerate(a(2), 2).unwrap().iter().map(|p| p.render(a(2))).collect();
        assert_eq!(a22, ["(2)", "(1_2, 1_2)", "(1_2, 1_1)", "(1_1, 1_1)"]);
    }

    #[test]
    fn enumerate_respects_cap() {
        assert_eq!(enumerate(a(1), 41), Err(PartitionError::CapExceeded { n: 41, cap: 40 }));
        assert!(enumerate_with_cap(a(1), 5, 4).is_err());
        assert_eq!(enumerate_with_cap(a(1), 45, 50).unwrap().len(), 89134);
    }

    #[test]
    fn enumeration_matches_count_and_is_strictly_decreasing() {
        for spec in (1..=4).flat_map(|k| [a(k), b(k)]) {
            for n in 0..=25u64 {
                let listed = enumerate(spec, n).unwrap();
                assert_eq!(BigUint::from(listed.len()), count(spec, n), "{spec} n={n}");
                assert!(listed.windows(2).all(|w| w[0] > w[1]), "{spec} n={n}");
                for p in &listed {
                    assert_eq!(p.weight(), n);
                    assert!(p.parts.windows(2).all(|w| w[0] >= w[1]));
                    assert!(p.parts.iter().all(|x| x.color >= 1 && x.color <= spec.colors_for(x.weight)));
                }
            }
        }
    }

    #[test]
    fn oracle_series_examples() {
        assert_eq!(oracle_series(a(3), 4), TruncatedSeries::from_i64s(&[1, 3, 7, 16], 4));
        assert_eq!(oracle_series(a(1), 10), TruncatedSeries::from_i64s(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30], 10));
        assert_eq!(oracle_series(a(2), 6), TruncatedSeries::from_i64s(&[1, 2, 4, 8, 14, 24], 6));
        // brute-force multiset enumeration gives 1, 1, 3, 4, 9, 12
        assert_eq!(oracle_series(b(2), 6), TruncatedSeries::from_i64s(&[1, 1, 3, 4, 9, 12], 6));
    }

    #[test]
    fn single_color_families_agree_and_colors_are_monotone() {
        for n in 0..60 {
            assert_eq!(count(a(1), n), count(b(1), n));
            for k in 1..6 {
                assert!(count(a(k + 1), n) >= count(a(k), n));
                assert!(count(b(k + 1), n) >= count(b(k), n));
            }
        }
    }
}
