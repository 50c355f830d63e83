//! Eta-quotient builders.
//!
//! `f_k` denotes the q-Pochhammer product `(q^k; q^k)_inf`. Expressions are
//! finite sums of `c * q^s * prod f_k^(e_k)` and have a small text grammar
//! (see [`parse_eta`]).

mod parse;

pub use parse::{parse_eta, ParseError};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{SeriesError, TruncatedSeries};

/// Expansion of `f_k = (q^k; q^k)_inf` through order `n`, by the pentagonal
/// number theorem: `sum_j (-1)^j q^(k j(3j-1)/2)` over all integers `j`.
pub fn pochhammer_f(k: usize, n: usize) -> TruncatedSeries {
    assert!(k >= 1, "pochhammer_f needs a positive scale");
    let mut coeffs = vec![BigInt::zero(); n];
    if n == 0 {
        return TruncatedSeries::from_coeffs(coeffs);
    }
    coeffs[0] = BigInt::one();
    for j in 1usize.. {
        // j(3j-1)/2 and j(3j+1)/2 are the exponents for +j and -j
        let lo = k * (j * (3 * j - 1) / 2);
        if lo >= n {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        coeffs[lo] = BigInt::from(sign);
        let hi = k * (j * (3 * j + 1) / 2);
        if hi < n {
            coeffs[hi] = BigInt::from(sign);
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// One summand `coefficient * q^q_shift * prod_k f_k^(e_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaTerm {
    pub coefficient: BigInt,
    pub q_shift: usize,
    factors: BTreeMap<usize, i64>,
}

impl EtaTerm {
    pub fn new(coefficient: impl Into<BigInt>, q_shift: usize) -> Self {
        EtaTerm { coefficient: coefficient.into(), q_shift, factors: BTreeMap::new() }
    }

    /// Multiplies in `f_scale^exponent`. Exponents on the same scale add up;
    /// a net exponent of zero drops the factor.
    pub fn with_factor(mut self, scale: usize, exponent: i64) -> Self {
        self.mul_factor(scale, exponent);
        self
    }

    pub(crate) fn mul_factor(&mut self, scale: usize, exponent: i64) {
        assert!(scale >= 1, "eta factor scale must be positive");
        if exponent == 0 {
            return;
        }
        let e = self.factors.entry(scale).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.factors.remove(&scale);
        }
    }

    /// Scale -> exponent, ascending by scale. Exponents are never zero.
    pub fn factors(&self) -> &BTreeMap<usize, i64> {
        &self.factors
    }

    pub(crate) fn times(&self, other: &EtaTerm) -> EtaTerm {
        let mut out = EtaTerm::new(&self.coefficient * &other.coefficient, self.q_shift + other.q_shift);
        out.factors = self.factors.clone();
        for (&k, &e) in &other.factors {
            out.mul_factor(k, e);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaExpression {
    terms: Vec<EtaTerm>,
}

impl EtaExpression {
    /// Panics on an empty term list.
    pub fn new(terms: Vec<EtaTerm>) -> Self {
        assert!(!terms.is_empty(), "an eta expression needs at least one term");
        EtaExpression { terms }
    }

    pub fn single(term: EtaTerm) -> Self {
        EtaExpression { terms: vec![term] }
    }

    /// `prod f_k^(e_k)` with coefficient 1 and no q-shift.
    pub fn product(factors: &[(usize, i64)]) -> Self {
        let term = factors.iter().fold(EtaTerm::new(1, 0), |t, &(k, e)| t.with_factor(k, e));
        Self::single(term)
    }

    pub fn terms(&self) -> &[EtaTerm] {
        &self.terms
    }
}

/// Evaluates an expression through order `n`.
pub fn eval_eta(expr: &EtaExpression, n: usize) -> Result<TruncatedSeries, SeriesError> {
    let mut cache: HashMap<usize, TruncatedSeries> = HashMap::new();
    let mut total = TruncatedSeries::zero(n);
    for term in &expr.terms {
        if term.q_shift >= n || term.coefficient.is_zero() {
            continue;
        }
        let inner = n - term.q_shift;
        let mut product = TruncatedSeries::one(inner);
        for (&k, &e) in &term.factors {
            let f = cache.entry(k).or_insert_with(|| pochhammer_f(k, n)).truncate(inner);
            product = product.mul(&f.pow(e)?);
        }
        let summand = product.scale(&term.coefficient).shift(term.q_shift);
        total = total.add(&summand);
    }
    Ok(total)
}

/// The four closed-form theta-type series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaFamilyId {
    /// `sum_{k>=0} (-1)^k (2k+1) q^(k(k+1)/2)`, equal to `f_1^3`.
    JacobiCube,
    /// `sum_n (6n+1) q^(n(3n+1)/2)`, equal to `f_1^5 / f_2^2`.
    HirschhornA,
    /// `sum_n (3n+1) q^(n(3n+2))`, equal to `f_1^2 f_4^2 / f_2`.
    HirschhornB,
    /// `sum_n (-1)^n (3n+1) q^(n(3n+2))`, equal to `f_2^5 / f_1^2`.
    HirschhornC,
}

impl ThetaFamilyId {
    pub const ALL: [ThetaFamilyId; 4] =
        [ThetaFamilyId::JacobiCube, ThetaFamilyId::HirschhornA, ThetaFamilyId::HirschhornB, ThetaFamilyId::HirschhornC];

    /// The eta-quotient this series is equal to.
    pub fn product_form(self) -> EtaExpression {
        match self {
            ThetaFamilyId::JacobiCube => EtaExpression::product(&[(1, 3)]),
            ThetaFamilyId::HirschhornA => EtaExpression::product(&[(1, 5), (2, -2)]),
            ThetaFamilyId::HirschhornB => EtaExpression::product(&[(1, 2), (2, -1), (4, 2)]),
            ThetaFamilyId::HirschhornC => EtaExpression::product(&[(1, -2), (2, 5)]),
        }
    }

    /// (exponent, coefficient) of the summand at index `n`; `None` when the
    /// index is outside the summation range.
    fn summand(self, n: i64) -> Option<(i64, i64)> {
        match self {
            ThetaFamilyId::JacobiCube => {
                (n >= 0).then(|| (n * (n + 1) / 2, if n % 2 == 0 { 2 * n + 1 } else { -(2 * n + 1) }))
            }
            ThetaFamilyId::HirschhornA => Some((n * (3 * n + 1) / 2, 6 * n + 1)),
            ThetaFamilyId::HirschhornB => Some((n * (3 * n + 2), 3 * n + 1)),
            ThetaFamilyId::HirschhornC => {
                Some((n * (3 * n + 2), if n.rem_euclid(2) == 0 { 3 * n + 1 } else { -(3 * n + 1) }))
            }
        }
    }
}

impl fmt::Display for ThetaFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ThetaFamilyId::JacobiCube => "jacobi-cube",
            ThetaFamilyId::HirschhornA => "hirschhorn-a",
            ThetaFamilyId::HirschhornB => "hirschhorn-b",
            ThetaFamilyId::HirschhornC => "hirschhorn-c",
        };
        f.write_str(name)
    }
}

/// Direct evaluation of a theta family's sum through order `n`.
///
/// Every exponent is increasing in `|index|` on each side of zero, so the walk
/// stops once both `index` and `-index` land at or beyond `n`.
pub fn theta_series(id: ThetaFamilyId, n: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); n];
    let bound = n as i64;
    let mut add = |index: i64| -> bool {
        match id.summand(index) {
            Some((e, c)) if e < bound => {
                coeffs[e as usize] += c;
                true
            }
            _ => false,
        }
    };
    add(0);
    for j in 1i64.. {
        let pos = add(j);
        let neg = add(-j);
        if !pos && !neg {
            break;
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Modulus;
    use std::collections::BTreeSet;

    /// prod_{j>=1} (1 - q^(k j)) as a finite product through order n.
    fn finite_product(k: usize, n: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(n);
        for j in (k..n).step_by(k) {
            let mut factor = vec![0i64; n];
            factor[0] = 1;
            factor[j] = -1;
            acc = acc.mul(&TruncatedSeries::from_i64s(&factor, n));
        }
        acc
    }

    #[test]
    fn pochhammer_matches_finite_product() {
        assert_eq!(finite_product(1, 8), TruncatedSeries::from_i64s(&[1, -1, -1, 0, 0, 1, 0, 1], 8));
        assert_eq!(pochhammer_f(1, 8), finite_product(1, 8));
        assert_eq!(finite_product(2, 5), TruncatedSeries::from_i64s(&[1, 0, -1, 0, -1], 5));
        assert_eq!(pochhammer_f(2, 5), finite_product(2, 5));
        for k in 1..6 {
            assert_eq!(pochhammer_f(k, 120), finite_product(k, 120), "scale {k}");
        }
    }

    #[test]
    fn pochhammer_large_scale_is_one() {
        assert_eq!(pochhammer_f(9, 9), TruncatedSeries::one(9));
        assert_eq!(pochhammer_f(20, 4), TruncatedSeries::one(4));
    }

    #[test]
    fn eval_generating_function_of_three_colors() {
        let expr = EtaExpression::product(&[(2, 2), (1, -3)]);
        assert_eq!(eval_eta(&expr, 4).unwrap(), TruncatedSeries::from_i64s(&[1, 3, 7, 16], 4));
    }

    #[test]
    fn eval_single_factor_is_pochhammer() {
        let expr = EtaExpression::product(&[(1, 1)]);
        assert_eq!(eval_eta(&expr, 30).unwrap(), pochhammer_f(1, 30));
    }

    #[test]
    fn eval_even_colored_two() {
        // b_2: odd parts one color, even parts two colors
        let expr = EtaExpression::product(&[(1, -1), (2, -1)]);
        assert_eq!(eval_eta(&expr, 6).unwrap(), TruncatedSeries::from_i64s(&[1, 1, 3, 4, 9, 12], 6));
    }

    #[test]
    fn eval_handles_shift_and_coefficient() {
        let expr =
            EtaExpression::new(vec![EtaTerm::new(3, 2).with_factor(1, 1), EtaTerm::new(-1, 0), EtaTerm::new(5, 10)]);
        let got = eval_eta(&expr, 6).unwrap();
        let f1 = pochhammer_f(1, 4);
        let mut want = vec![BigInt::from(-1), BigInt::zero()];
        want.extend(f1.coeffs().iter().map(|c| c * 3));
        assert_eq!(got, TruncatedSeries::from_coeffs(want));
    }

    #[test]
    fn with_factor_cancels_to_nothing() {
        let t = EtaTerm::new(1, 0).with_factor(7, 3).with_factor(7, -3);
        assert!(t.factors().is_empty());
    }

    #[test]
    fn overpartition_rewrite_matches_first_principles() {
        // (-q;q)^2 / (q;q) as finite products, vs f_2^2 / f_1^3
        let n = 200;
        let mut plus = TruncatedSeries::one(n);
        for j in 1..n {
            let mut factor = vec![0i64; n];
            factor[0] = 1;
            factor[j] = 1;
            plus = plus.mul(&TruncatedSeries::from_i64s(&factor, n));
        }
        let lhs = plus.mul(&plus).mul(&finite_product(1, n).inverse().unwrap());
        let rhs = eval_eta(&EtaExpression::product(&[(2, 2), (1, -3)]), n).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_small_cases() {
        assert_eq!(theta_series(ThetaFamilyId::JacobiCube, 7), TruncatedSeries::from_i64s(&[1, -3, 0, 5, 0, 0, -7], 7));
        assert_eq!(theta_series(ThetaFamilyId::HirschhornA, 1), TruncatedSeries::one(1));
    }

    #[test]
    fn theta_families_equal_their_products() {
        for id in ThetaFamilyId::ALL {
            let sum = theta_series(id, 500);
            let prod = eval_eta(&id.product_form(), 500).unwrap();
            assert_eq!(sum.first_mismatch(&prod), None, "{id}");
        }
    }

    #[test]
    fn theta_support_mod_seven() {
        let seven = Modulus::new(7).unwrap();
        let jc = theta_series(ThetaFamilyId::JacobiCube, 700).reduce_mod(seven);
        assert!(jc.support_residues(7).is_subset(&BTreeSet::from([0, 1, 3])));
        for id in [ThetaFamilyId::HirschhornA, ThetaFamilyId::HirschhornB, ThetaFamilyId::HirschhornC] {
            let s = theta_series(id, 700).reduce_mod(seven);
            assert!(s.support_residues(7).is_subset(&BTreeSet::from([0, 1, 5])), "{id}");
        }
    }
}
