//! Exact truncated formal power series over unbounded integers.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of `q^0 .. q^(N-1)`
//! and says nothing about higher exponents. Binary operations return a result
//! of order `min(N_a, N_b)`; the other operations document their result order.

mod modular;

pub use modular::ModSeries;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {constant} is not a unit (expected +1 or -1)")]
    NonUnitConstantTerm { constant: BigInt },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
}

/// A modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, SeriesError> {
        if m < 2 {
            return Err(SeriesError::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Least nonnegative residue of `x`.
    pub fn reduce(self, x: &BigInt) -> BigInt {
        x.mod_floor(&BigInt::from(self.0))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Wraps a coefficient vector; the order is its length.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        TruncatedSeries { coeffs }
    }

    /// Builds a series of the given order from small integers, zero-padding or
    /// truncating `values` as needed.
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = values.iter().take(order).map(|&v| BigInt::from(v)).collect();
        coeffs.resize(order, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * q^shift` through `order`.
    pub fn monomial(c: BigInt, shift: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if shift < order {
            s.coeffs[shift] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`; panics if `n` is at or beyond the order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keeps the first `order` coefficients. Raising the order is not allowed.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a series from order {} to {order}", self.order());
        TruncatedSeries { coeffs: self.coeffs[..order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| a - b).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplies by `q^s`. The result is exact through order `N + s`.
    pub fn shift(&self, s: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Schoolbook Cauchy product truncated to the smaller order.
    ///
    /// Zero coefficients of the left operand are skipped, so placing the
    /// sparser factor (e.g. a pentagonal expansion) on the left is cheaper.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse through the same order.
    ///
    /// With `a0 = ±1`, `b0 = a0` and `b_n = -a0 * sum_{k=1..n} a_k b_{n-k}`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstantTerm { constant: a0.clone() });
        }
        let negate = a0.is_negative();
        let support: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        out.push(a0.clone());
        for m in 1..n {
            let mut acc = BigInt::zero();
            for &(k, ak) in &support {
                if k > m {
                    break;
                }
                acc += ak * &out[m - k];
            }
            // -a0 * acc, with a0 = ±1
            out.push(if negate { acc } else { -acc });
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Integer power by repeated squaring. Negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_unsigned(e.unsigned_abs()))
    }

    fn pow_unsigned(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut square = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = square.mul(&result);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square);
            }
        }
        result
    }

    /// `a(q^m)` at the same order `N`.
    pub fn substitute(&self, m: usize) -> Self {
        self.substitute_to(m, self.order())
    }

    /// `a(q^m)` through order `m * N`, the full range on which it is known.
    pub fn inflate(&self, m: usize) -> Self {
        self.substitute_to(m, m * self.order())
    }

    fn substitute_to(&self, m: usize, order: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = i * m;
            if idx >= order {
                break;
            }
            out.coeffs[idx] = c.clone();
        }
        out
    }

    /// Each coefficient replaced by its least nonnegative residue mod `m`.
    pub fn reduce_mod(&self, m: Modulus) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| m.reduce(c)).collect() }
    }

    /// Extracts the progression `n -> coeffs[m*n + r]`, with order
    /// `floor((N - r + m - 1) / m)` (zero when `r >= N`).
    pub fn dissect(&self, m: usize, r: usize) -> Self {
        assert!(m >= 1 && r < m, "dissect requires m >= 1 and 0 <= r < m (got m={m}, r={r})");
        let coeffs = self.coeffs.iter().skip(r).step_by(m).cloned().collect();
        TruncatedSeries { coeffs }
    }

    /// `{ n mod m : coeffs[n] != 0 }`.
    pub fn support_residues(&self, m: usize) -> BTreeSet<usize> {
        assert!(m >= 1, "support_residues requires m >= 1");
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(n, _)| n % m).collect()
    }

    /// First index at which the two series differ, comparing through the
    /// smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match n {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match n {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a TruncatedSeries> for &'a TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
