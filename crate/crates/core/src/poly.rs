//! Dense univariate polynomials in `p` with arbitrary-precision integer
//! coefficients.
//!
//! Every count produced by this crate is an [`IntPoly`]. Coefficients are
//! stored in ascending order (`coeffs[i]` multiplies `p^i`) and the vector
//! never ends in a zero, so structural equality is polynomial equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact, remainder {remainder}")]
    NonExactDivision { remainder: IntPoly },
    #[error("the zero polynomial has no degree or leading coefficient")]
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * p^n`.
    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `p^n`.
    pub fn p_pow(n: usize) -> Self {
        Self::monomial(1, n)
    }

    /// `p^n - 1`, the building block of every denominator in the catalog.
    pub fn p_pow_minus_one(n: usize) -> Self {
        Self::p_pow(n) - Self::one()
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut poly = Self { coeffs };
        poly.normalize();
        poly
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `p^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Result<usize, PolyError> {
        self.coeffs
            .len()
            .checked_sub(1)
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<&BigInt, PolyError> {
        self.coeffs.last().ok_or(PolyError::ZeroPolynomial)
    }

    /// Horner evaluation at an integer.
    pub fn eval_at(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_u64(&self, x: u64) -> BigInt {
        self.eval_at(&BigInt::from(x))
    }

    /// Multiplies by `p^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Classical long division that must leave no remainder.
    ///
    /// A nonzero remainder is returned inside the error; in this crate it
    /// always means a formula was transcribed wrongly.
    pub fn exact_div(&self, den: &IntPoly) -> Result<IntPoly, PolyError> {
        let den_deg = den.degree().map_err(|_| PolyError::DivisionByZero)?;
        let den_lead = den.leading_coeff()?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= den_deg {
            return Err(PolyError::NonExactDivision {
                remainder: self.clone(),
            });
        }
        let mut quot = vec![BigInt::zero(); rem.len() - den_deg];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + den_deg];
            if top.is_zero() {
                continue;
            }
            if !(top % den_lead).is_zero() {
                break;
            }
            let q = top / den_lead;
            for (i, d) in den.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * d;
            }
            quot[shift] = q;
        }
        let remainder = Self::from_coeffs(rem);
        if remainder.is_zero() {
            Ok(Self::from_coeffs(quot))
        } else {
            Err(PolyError::NonExactDivision { remainder })
        }
    }
}

impl fmt::Display for IntPoly {
    /// Descending terms with caret exponents, e.g. `p^3 + 2*p^2 + p + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match exp {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("p")?,
                1 => write!(f, "{mag}*p")?,
                _ if unit => write!(f, "p^{exp}")?,
                _ => write!(f, "{mag}*p^{exp}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Serializes as the ascending coefficient array, e.g. `[1,1,2,1]`.
///
/// Coefficients beyond the `i128` range fall back to decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => match c.to_i128() {
                    Some(v) => seq.serialize_element(&v)?,
                    None => seq.serialize_element(&c.to_string())?,
                },
            }
        }
        seq.end()
    }
}

impl<'a> Add<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &'a IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += s;
        }
        self.normalize();
    }
}

impl AddAssign for IntPoly {
    fn add_assign(&mut self, rhs: IntPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        self.normalize();
    }
}

impl Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a IntPoly> for IntPoly {
    fn sum<I: Iterator<Item = &'a IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(poly(&[1, 1]) + poly(&[-1, 1]), poly(&[0, 2]));
        assert_eq!(IntPoly::zero() + poly(&[1, 0, 1]), poly(&[1, 0, 1]));
        assert_eq!(poly(&[1, 1, 1]) + poly(&[0, 0, 0, 1]), poly(&[1, 1, 1, 1]));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let a = poly(&[1, 2, 3]);
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert!(diff.coeffs().is_empty());
        assert_eq!(poly(&[0, 0, 0]), IntPoly::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly(&[-1, 1]) * poly(&[1, 1]), poly(&[-1, 0, 1]));
        assert_eq!(poly(&[-1, 1]) * poly(&[-1, 0, 1]), poly(&[1, -1, -1, 1]));
        assert_eq!(poly(&[3, 4]) * IntPoly::zero(), IntPoly::zero());
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(poly(&[-1, 0, 1]).exact_div(&poly(&[-1, 1])).unwrap(), poly(&[1, 1]));
        // rank-3 Case 1 at b = 1
        let num = poly(&[1, 0, -1, -1, 0, 1]);
        let den = poly(&[1, -1, -1, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), poly(&[1, 1, 1]));
        assert_eq!(
            poly(&[1, 0, 1]).exact_div(&poly(&[-1, 1])),
            Err(PolyError::NonExactDivision { remainder: poly(&[2]) })
        );
    }

    #[test]
    fn exact_div_edge_cases() {
        assert_eq!(poly(&[1, 1]).exact_div(&IntPoly::zero()), Err(PolyError::DivisionByZero));
        assert_eq!(IntPoly::zero().exact_div(&poly(&[-1, 1])).unwrap(), IntPoly::zero());
        assert!(poly(&[1]).exact_div(&poly(&[-1, 1])).is_err());
        // leading coefficient 2 does not divide 3
        assert!(poly(&[0, 3]).exact_div(&poly(&[0, 2])).is_err());
        assert_eq!(poly(&[0, 4]).exact_div(&poly(&[0, 2])).unwrap(), poly(&[2]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[1, 1]).eval_at_u64(2), BigInt::from(3));
        assert_eq!(poly(&[1, 1, 1]).eval_at_u64(3), BigInt::from(13));
        assert_eq!(poly(&[1, 1, 2, 1]).eval_at_u64(2), BigInt::from(19));
    }

    #[test]
    fn degree_and_leading_coeff() {
        let a = poly(&[1, 0, 0, 1]);
        assert_eq!(a.degree(), Ok(3));
        assert_eq!(a.leading_coeff(), Ok(&BigInt::from(1)));
        let b = IntPoly::monomial(2, 5);
        assert_eq!(b.degree(), Ok(5));
        assert_eq!(b.leading_coeff(), Ok(&BigInt::from(2)));
        assert_eq!(IntPoly::zero().degree(), Err(PolyError::ZeroPolynomial));
        assert_eq!(IntPoly::zero().leading_coeff(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(poly(&[1, 1, 2, 1]).to_string(), "p^3 + 2*p^2 + p + 1");
        assert_eq!(poly(&[1, -1, -1, 1]).to_string(), "p^3 - p^2 - p + 1");
        assert_eq!(poly(&[1, 0, -1]).to_string(), "-p^2 + 1");
        assert_eq!(poly(&[0, -3]).to_string(), "-3*p");
        assert_eq!(poly(&[-5]).to_string(), "-5");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_rendering() {
        assert_eq!(serde_json::to_string(&poly(&[1, 1, 2, 1])).unwrap(), "[1,1,2,1]");
        assert_eq!(serde_json::to_string(&IntPoly::zero()).unwrap(), "[]");
        let huge = IntPoly::constant(BigInt::from(1) << 200);
        let text = serde_json::to_string(&huge).unwrap();
        assert!(text.starts_with("[\"1606938044258990275541962092341162602522202993782792835301376\""));
    }
}
