use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Modulus, SeriesError, TruncatedSeries};

/// Truncated series with every coefficient held as a residue mod `m`.
///
/// Faster than [`TruncatedSeries`] for congruence-only questions. Never use it
/// to decide an exact identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModSeries {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl ModSeries {
    pub fn from_exact(a: &TruncatedSeries, modulus: Modulus) -> Self {
        let coeffs = a.coeffs().iter().map(|c| modulus.reduce(c).to_u64().expect("residue fits in u64")).collect();
        ModSeries { modulus, coeffs }
    }

    pub fn zero(modulus: Modulus, order: usize) -> Self {
        ModSeries { modulus, coeffs: vec![0; order] }
    }

    pub fn one(modulus: Modulus, order: usize) -> Self {
        let mut s = Self::zero(modulus, order);
        if order > 0 {
            s.coeffs[0] = 1;
        }
        s
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Lifts back to least nonnegative residues as exact integers.
    pub fn to_exact(&self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn m(&self) -> u64 {
        self.modulus.get()
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m() as u128) as u64
    }

    fn check_same_modulus(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in modular series arithmetic");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let m = self.m();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + b as u128) % m as u128) as u64)
            .collect();
        ModSeries { modulus: self.modulus, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let m = self.m();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + (m - b) as u128) % m as u128) as u64)
            .collect();
        ModSeries { modulus: self.modulus, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let n = self.order().min(other.order());
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    let t = self.mul_mod(a, b);
                    out[i + j] = ((out[i + j] as u128 + t as u128) % self.m() as u128) as u64;
                }
            }
        }
        ModSeries { modulus: self.modulus, coeffs: out }
    }

    /// Inverse for a constant term congruent to +1 or -1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let m = self.m();
        let a0 = self.coeffs[0];
        if a0 != 1 && a0 != m - 1 {
            return Err(SeriesError::NonUnitConstantTerm { constant: BigInt::from(a0) });
        }
        let support: Vec<(usize, u64)> =
            self.coeffs.iter().copied().enumerate().skip(1).filter(|&(_, c)| c != 0).collect();
        let mut out = Vec::with_capacity(n);
        out.push(a0);
        for k in 1..n {
            let mut acc: u64 = 0;
            for &(j, aj) in &support {
                if j > k {
                    break;
                }
                acc = ((acc as u128 + self.mul_mod(aj, out[k - j]) as u128) % m as u128) as u64;
            }
            // -a0 * acc
            let neg_acc = (m - acc) % m;
            out.push(self.mul_mod(a0, neg_acc));
        }
        Ok(ModSeries { modulus: self.modulus, coeffs: out })
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one(self.modulus, self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = square.mul(&result);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square);
            }
        }
        Ok(result)
    }

    pub fn substitute(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        let mut out = Self::zero(self.modulus, self.order());
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i * m >= out.order() {
                break;
            }
            out.coeffs[i * m] = c;
        }
        out
    }

    pub fn dissect(&self, m: usize, r: usize) -> Self {
        assert!(m >= 1 && r < m, "dissect requires m >= 1 and 0 <= r < m (got m={m}, r={r})");
        ModSeries { modulus: self.modulus, coeffs: self.coeffs.iter().skip(r).step_by(m).copied().collect() }
    }

    pub fn support_residues(&self, m: usize) -> BTreeSet<usize> {
        assert!(m >= 1, "support_residues requires m >= 1");
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(n, _)| n % m).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exact(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(v, v.len())
    }

    #[test]
    fn negative_coefficients_reduce_to_least_residues() {
        let m = Modulus::new(7).unwrap();
        let s = ModSeries::from_exact(&exact(&[-1, 8, -14]), m);
        assert_eq!(s.coeffs(), &[6, 1, 0]);
    }

    #[test]
    fn inverse_requires_unit_residue() {
        let m = Modulus::new(7).unwrap();
        assert!(ModSeries::from_exact(&exact(&[3, 1]), m).inverse().is_err());
        // -1 mod 7 is fine, and so is 8 (= 1 mod 7)
        assert!(ModSeries::from_exact(&exact(&[-1, 1]), m).inverse().is_ok());
        assert!(ModSeries::from_exact(&exact(&[8, 1]), m).inverse().is_ok());
    }

    proptest! {
        #[test]
        fn agrees_with_reduced_exact_arithmetic(
            a in prop::collection::vec(-50i64..50, 20),
            b in prop::collection::vec(-50i64..50, 20),
            neg in prop::bool::ANY,
            e in -4i64..5,
            m in 2u64..40,
        ) {
            let m = Modulus::new(m).unwrap();
            let mut a = a;
            a[0] = if neg { -1 } else { 1 };
            let (ea, eb) = (exact(&a), exact(&b));
            let (ma, mb) = (ModSeries::from_exact(&ea, m), ModSeries::from_exact(&eb, m));
            prop_assert_eq!(ma.add(&mb).to_exact(), ea.add(&eb).reduce_mod(m));
            prop_assert_eq!(ma.sub(&mb).to_exact(), ea.sub(&eb).reduce_mod(m));
            prop_assert_eq!(ma.mul(&mb).to_exact(), ea.mul(&eb).reduce_mod(m));
            prop_assert_eq!(ma.pow(e).unwrap().to_exact(), ea.pow(e).unwrap().reduce_mod(m));
            prop_assert_eq!(ma.substitute(3).to_exact(), ea.substitute(3).reduce_mod(m));
            prop_assert_eq!(ma.dissect(4, 1).to_exact(), ea.dissect(4, 1).reduce_mod(m));
        }
    }
}
