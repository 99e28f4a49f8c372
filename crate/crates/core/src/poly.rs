//! Integer Laurent polynomials in one variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::matrix::ExactRing;

/// `t^low · (c_0 + c_1 t + … + c_k t^k)` with integer coefficients.
///
/// Stored trimmed: `coeffs` has nonzero first and last entries, and the zero
/// polynomial has no coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn new(low: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Ordinary polynomial from ascending coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(0, coeffs.to_vec())
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        Self::new(exp, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i32 {
        self.low
    }

    pub fn high_degree(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Coefficients from `t^low` upwards.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        let k = exp - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// Representative up to units `±t^k`: nonzero constant term and positive
    /// leading coefficient. Zero stays zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sign = if *self.coeffs.last().unwrap() < 0 { -1 } else { 1 };
        LaurentPoly {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn value_at_minus_one(&self) -> i128 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let parity = (self.low as i64 + k as i64).rem_euclid(2);
                if parity == 0 {
                    c as i128
                } else {
                    -(c as i128)
                }
            })
            .sum()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Space-separated coefficients, ascending from `t^low`.
    pub fn coefficient_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(" ")
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub(crate) fn to_zpoly_shifted(&self, shift: i32) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let start = self.low + shift;
        assert!(start >= 0, "negative exponent after shift");
        let mut c = vec![0i128; start as usize];
        c.extend(self.coeffs.iter().map(|&x| x as i128));
        ZPoly::new(c)
    }

    pub(crate) fn from_zpoly(p: &ZPoly) -> Self {
        let coeffs = p
            .0
            .iter()
            .map(|&c| i64::try_from(c).expect("polynomial coefficient exceeds i64"))
            .collect();
        Self::new(0, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let coeffs = (low..=high).map(|e| self.coefficient(e) + rhs.coefficient(e)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = a
                    .checked_mul(*b)
                    .and_then(|p| coeffs[i + j].checked_add(p))
                    .expect("Laurent polynomial coefficient overflow");
            }
        }
        LaurentPoly::new(self.low + rhs.low, coeffs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.low + k as i32;
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{mag}t")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial over the integers with ascending coefficients; the
/// working ring for fraction-free determinants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct ZPoly(pub(crate) Vec<i128>);

impl ZPoly {
    pub(crate) fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ZPoly(c)
    }

    /// `a + b·t`.
    pub(crate) fn linear(a: i128, b: i128) -> Self {
        Self::new(vec![a, b])
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub(crate) fn checked_div(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.0[dd];
        let mut rem = self.0.clone();
        let Some(nd) = self.degree() else {
            return Some(ZPoly::zero());
        };
        if nd < dd {
            return None;
        }
        let mut q = vec![0i128; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[k] = f;
            for (j, &d) in divisor.0.iter().enumerate() {
                rem[k + j] = rem[k + j]
                    .checked_sub(f.checked_mul(d).expect("polynomial overflow"))
                    .expect("polynomial overflow");
            }
        }
        if rem.iter().any(|&r| r != 0) {
            return None;
        }
        Some(ZPoly::new(q))
    }
}

impl ExactRing for ZPoly {
    fn zero() -> Self {
        ZPoly(Vec::new())
    }

    fn one() -> Self {
        ZPoly(vec![1])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] = a
                    .checked_mul(*b)
                    .and_then(|p| c[i + j].checked_add(p))
                    .expect("polynomial overflow");
            }
        }
        ZPoly::new(c)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|k| {
                let a = self.0.get(k).copied().unwrap_or(0);
                let b = other.0.get(k).copied().unwrap_or(0);
                a.checked_sub(b).expect("polynomial overflow")
            })
            .collect();
        ZPoly::new(c)
    }

    fn div_exact(&self, other: &Self) -> Self {
        self.checked_div(other)
            .expect("inexact polynomial division in Bareiss elimination")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bareiss_det;

    #[test]
    fn normalization_strips_units() {
        let p = LaurentPoly::new(-3, vec![-1, 3, -1]);
        assert_eq!(p.normalized(), LaurentPoly::from_coeffs(&[1, -3, 1]));
        let hopf = LaurentPoly::new(2, vec![1, -1]);
        assert_eq!(hopf.normalized(), LaurentPoly::from_coeffs(&[-1, 1]));
        assert!(LaurentPoly::zero().normalized().is_zero());
        assert!(LaurentPoly::new(4, vec![0, 0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::new(-1, vec![1, 1]);
        let b = LaurentPoly::from_coeffs(&[1, -1]);
        assert_eq!(&a * &b, LaurentPoly::new(-1, vec![1, 0, -1]));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(LaurentPoly::from_coeffs(&[1, -3, 1]).value_at_minus_one(), 5);
        assert_eq!(LaurentPoly::new(-1, vec![1, -1, 1]).value_at_minus_one(), -3);
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::from_coeffs(&[1, -3, 1]).to_string(), "1 - 3t + t^2");
        assert_eq!(LaurentPoly::from_coeffs(&[1, -3, 1]).coefficient_string(), "1 -3 1");
        assert_eq!(LaurentPoly::zero().coefficient_string(), "0");
    }

    #[test]
    fn exact_division() {
        // (1 + t)(1 - t + t^2) = 1 + t^3
        let p = ZPoly::new(vec![1, 0, 0, 1]);
        let q = p.checked_div(&ZPoly::new(vec![1, 1])).unwrap();
        assert_eq!(q, ZPoly::new(vec![1, -1, 1]));
        assert!(p.checked_div(&ZPoly::new(vec![1, 2])).is_none());
    }

    #[test]
    fn polynomial_determinant() {
        // det [[1, t], [t, 1]] = 1 - t^2
        let m = vec![
            vec![ZPoly::one(), ZPoly::linear(0, 1)],
            vec![ZPoly::linear(0, 1), ZPoly::one()],
        ];
        assert_eq!(bareiss_det(m), ZPoly::new(vec![1, 0, -1]));
    }
}
