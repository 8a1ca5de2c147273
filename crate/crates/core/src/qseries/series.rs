//! Dense power series in `q` truncated at a fixed order, with exact
//! big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    /// `c q^e`, which is zero when `e > order`.
    pub fn monomial(exp: usize, c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, &v) in values.iter().enumerate().take(order + 1) {
            s.coeffs[k] = BigInt::from(v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    /// Product truncated at `order` (at most the smaller operand order).
    pub fn mul_to(&self, other: &Self, order: usize) -> Self {
        let order = order.min(self.order()).min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (a_idx, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (b_idx, b) in other.coeffs.iter().enumerate().take(order + 1 - a_idx) {
                if !b.is_zero() {
                    out[a_idx + b_idx] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Multiplication by `q^e`, keeping the order.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![BigInt::zero(); n];
        if e < n {
            coeffs[e..].clone_from_slice(&self.coeffs[..n - e]);
        }
        TruncatedSeries { coeffs }
    }

    /// `self += c q^e * other` on the overlapping range.
    pub fn add_shifted(&mut self, other: &Self, e: usize) {
        if e >= self.coeffs.len() {
            return;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let Some(slot) = self.coeffs.get_mut(e + k) else { break };
            if !c.is_zero() {
                *slot += c;
            }
        }
    }

    /// In place multiplication by `1 - q^e`; `e = 0` zeroes the series.
    pub fn mul_one_minus_q_pow(&mut self, e: usize) {
        if e == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = BigInt::zero());
            return;
        }
        for k in (e..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] -= &lo[k - e];
        }
    }

    /// In place division by `1 - q^e` for `e >= 1`.
    pub fn div_one_minus_q_pow(&mut self, e: usize) -> Result<()> {
        if e == 0 {
            return Err(Error::NotInvertible("0".into()));
        }
        for k in e..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] += &lo[k - e];
        }
        Ok(())
    }

    /// Multiplicative inverse; needs constant term `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        let n = self.coeffs.len();
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = c0.clone();
        for k in 1..n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            // c0 = ±1 so dividing by it is multiplying by it
            inv[k] = -(acc * c0);
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// First index where the two series differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, BigInt, BigInt)> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n)
            .find(|&k| self.coeffs[k] != other.coeffs[k])
            .map(|k| (k, self.coeffs[k].clone(), other.coeffs[k].clone()))
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries { coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_to(rhs, usize::MAX)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl AddAssign<&TruncatedSeries> for TruncatedSeries {
    fn add_assign(&mut self, rhs: &TruncatedSeries) {
        self.add_shifted(rhs, 0);
    }
}

impl SubAssign<&TruncatedSeries> for TruncatedSeries {
    fn sub_assign(&mut self, rhs: &TruncatedSeries) {
        for (slot, c) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *slot -= c;
        }
    }
}

/// Length of a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

/// `(q^start; q^step)_count` truncated at `order`.
pub fn poch(start: usize, step: usize, count: Count, order: usize) -> Result<TruncatedSeries> {
    if start == 0 {
        return Err(Error::params("q-Pochhammer start exponent must be at least 1"));
    }
    if step == 0 {
        return Err(Error::params("q-Pochhammer step must be at least 1"));
    }
    let mut s = TruncatedSeries::one(order);
    let mut e = start;
    let mut taken = 0usize;
    while e <= order {
        if let Count::Finite(n) = count {
            if taken == n {
                break;
            }
        }
        s.mul_one_minus_q_pow(e);
        e += step;
        taken += 1;
    }
    Ok(s)
}

/// `1 / (q^start; q^step)_count` truncated at `order`.
pub fn inv_poch(start: usize, step: usize, count: Count, order: usize) -> Result<TruncatedSeries> {
    if start == 0 || step == 0 {
        return Err(Error::params("q-Pochhammer start and step must be at least 1"));
    }
    let mut s = TruncatedSeries::one(order);
    let mut e = start;
    let mut taken = 0usize;
    while e <= order {
        if let Count::Finite(n) = count {
            if taken == n {
                break;
            }
        }
        s.div_one_minus_q_pow(e)?;
        e += step;
        taken += 1;
    }
    Ok(s)
}

/// `(q;q)_n` for a possibly negative `n`, as the ratio `(q;q)_∞ / (q^{n+1};q)_∞`.
/// Returns `None` for `n < 0`, where the product has a pole at `1 - q^0`.
pub fn q_factorial(n: i64, order: usize) -> Option<TruncatedSeries> {
    if n < 0 {
        return None;
    }
    Some(poch(1, 1, Count::Finite(n as usize), order).expect("valid start"))
}

/// `1/(q;q)_n`, zero for `n < 0`.
pub fn inv_q_factorial(n: i64, order: usize) -> TruncatedSeries {
    if n < 0 {
        return TruncatedSeries::zero(order);
    }
    inv_poch(1, 1, Count::Finite(n as usize), order).expect("valid start")
}

/// `(q;q)_a / (q;q)_b` for `a, b >= 0`.
pub fn q_factorial_ratio(a: usize, b: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    if a >= b {
        for e in b + 1..=a.min(order) {
            s.mul_one_minus_q_pow(e);
        }
    } else {
        for e in a + 1..=b.min(order) {
            s.div_one_minus_q_pow(e).expect("positive exponent");
        }
    }
    s
}

/// Gaussian binomial `[n choose k]_q`, zero unless `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64, order: usize) -> TruncatedSeries {
    if k < 0 || k > n {
        return TruncatedSeries::zero(order);
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // ∏_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j); each partial quotient is a polynomial
    let mut s = TruncatedSeries::one(order);
    for j in 1..=k {
        if n - k + j <= order {
            s.mul_one_minus_q_pow(n - k + j);
        }
        s.div_one_minus_q_pow(j).expect("positive exponent");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn euler_function_to_twelve() {
        let s = poch(1, 1, Count::Infinite, 12).unwrap();
        assert_eq!(ints(&s), [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!(s.to_string(), "1 - q - q^2 + q^5 + q^7 - q^12 + O(q^13)");
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(poch(1, 1, Count::Finite(0), 5).unwrap(), TruncatedSeries::one(5));
        assert!(poch(0, 1, Count::Infinite, 5).is_err());
    }

    #[test]
    fn inverse_of_euler_function_counts_partitions() {
        let inv = poch(1, 1, Count::Infinite, 10).unwrap().inverse().unwrap();
        assert_eq!(ints(&inv), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(inv, inv_poch(1, 1, Count::Infinite, 10).unwrap());
    }

    #[test]
    fn inverse_needs_unit_constant() {
        let s = TruncatedSeries::from_i64s(&[2, 1], 4);
        assert!(matches!(s.inverse(), Err(Error::NotInvertible(_))));
        let s = TruncatedSeries::from_i64s(&[-1, 1], 4);
        let prod = &s * &s.inverse().unwrap();
        assert_eq!(prod, TruncatedSeries::one(4));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(ints(&qbinom(4, 2, 6)), [1, 1, 2, 1, 1, 0, 0]);
        assert_eq!(qbinom(7, 0, 6), TruncatedSeries::one(6));
        assert!(qbinom(3, 5, 6).is_zero());
        assert!(qbinom(3, -1, 6).is_zero());
        assert!(qbinom(-1, -1, 6).is_zero());
    }

    #[test]
    fn arithmetic_and_shift() {
        let a = TruncatedSeries::from_i64s(&[1, 2, 3], 3);
        let b = TruncatedSeries::from_i64s(&[0, 1], 3);
        assert_eq!(ints(&(&a * &b)), [0, 1, 2, 3]);
        assert_eq!(ints(&a.shift(2)), [0, 0, 1, 2]);
        assert_eq!(ints(&(&a - &a)), [0, 0, 0, 0]);
        let mut c = a.clone();
        c.mul_one_minus_q_pow(1);
        c.div_one_minus_q_pow(1).unwrap();
        assert_eq!(c, a);
    }

    #[test]
    fn factorial_ratio_matches_quotient() {
        let n = 20;
        for a in 0..6 {
            for b in 0..6 {
                let direct = &q_factorial(a, n).unwrap() * &inv_q_factorial(b, n);
                assert_eq!(q_factorial_ratio(a as usize, b as usize, n), direct);
            }
        }
    }

    #[test]
    fn json_is_decimal_strings() {
        let s = TruncatedSeries::from_i64s(&[1, -1], 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["1","-1","0"]"#);
    }

    #[test]
    fn display_zero_and_coefficients() {
        assert_eq!(TruncatedSeries::zero(2).to_string(), "0 + O(q^3)");
        let s = TruncatedSeries::from_i64s(&[0, -3, 0, 2], 3);
        assert_eq!(s.to_string(), "-3*q + 2*q^3 + O(q^4)");
    }
}
