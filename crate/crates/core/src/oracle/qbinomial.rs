use crate::poly::IntPoly;

use super::OracleError;

/// `(d choose b)_p = Π_{i=1}^{b} (p^{d-b+i} - 1)/(p^i - 1)`.
pub fn gaussian_binomial(d: u32, b: u32) -> Result<IntPoly, OracleError> {
    if b > d {
        return Err(OracleError::BinomialOutOfRange { d, b });
    }
    let mut acc = IntPoly::one();
    for i in 1..=b as usize {
        acc = acc * IntPoly::p_pow_minus_one((d - b) as usize + i);
        acc = acc
            .exact_div(&IntPoly::p_pow_minus_one(i))
            .expect("partial q-binomial products are polynomials");
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(gaussian_binomial(3, 1).unwrap(), IntPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(gaussian_binomial(5, 0).unwrap(), IntPoly::one());
        let g = gaussian_binomial(4, 2).unwrap();
        assert_eq!(g, IntPoly::from_i64s(&[1, 1, 2, 1, 1]));
        assert_eq!(g.eval_at_u64(2), 35.into());
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn reflection() {
        for d in 0..8 {
            for b in 0..=d {
                assert_eq!(gaussian_binomial(d, b).unwrap(), gaussian_binomial(d, d - b).unwrap());
            }
        }
    }
}
