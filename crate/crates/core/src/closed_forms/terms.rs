use num_bigint::BigInt;

use crate::poly::IntPoly;

/// `coeff * p^exponent`, with both already evaluated for a concrete type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub exponent: i64,
}

/// A formula numerator as a list of evaluated terms, kept in the order the
/// formula displays them. Terms may share an exponent for degenerate types
/// (`a_1 = a_2`, ...); [`Numerator::to_poly`] adds such coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Numerator {
    terms: Vec<Term>,
}

impl Numerator {
    pub fn new(terms: &[(i64, i64)]) -> Self {
        Self {
            terms: terms
                .iter()
                .map(|&(coeff, exponent)| Term { coeff, exponent })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn negated(mut self) -> Self {
        for t in &mut self.terms {
            t.coeff = -t.coeff;
        }
        self
    }

    pub fn extend(mut self, other: Numerator) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// Adds `delta` to the coefficient of term `index`; out of range is a no-op.
    pub(crate) fn perturb(&mut self, index: usize, delta: i64) {
        if let Some(t) = self.terms.get_mut(index) {
            t.coeff += delta;
        }
    }

    /// Assembles the polynomial; `Err(i)` names the first term with a
    /// negative exponent.
    pub fn to_poly(&self) -> Result<IntPoly, usize> {
        let top = self.terms.iter().map(|t| t.exponent).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::from(0); usize::try_from(top).unwrap_or(0) + 1];
        for (i, t) in self.terms.iter().enumerate() {
            let e = usize::try_from(t.exponent).map_err(|_| i)?;
            coeffs[e] += t.coeff;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

/// `(p^n - 1)` multiplied over `ns`.
pub fn cyclotomic_product(ns: &[usize]) -> IntPoly {
    ns.iter()
        .fold(IntPoly::one(), |acc, &n| acc * IntPoly::p_pow_minus_one(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colliding_exponents_add() {
        let n = Numerator::new(&[(1, 2), (2, 2), (-1, 0)]);
        assert_eq!(n.to_poly().unwrap(), IntPoly::from_i64s(&[-1, 0, 3]));
    }

    #[test]
    fn negative_exponent_is_reported() {
        let n = Numerator::new(&[(1, 2), (1, -1)]);
        assert_eq!(n.to_poly(), Err(1));
    }

    #[test]
    fn denominators() {
        assert_eq!(cyclotomic_product(&[1, 2]), IntPoly::from_i64s(&[1, -1, -1, 1]));
        assert_eq!(cyclotomic_product(&[]), IntPoly::one());
    }
}
