//! Total subgroup count of a rank-4 group of type `(w, x, y, z)` as a
//! triple of double sums with nonnegative coefficients.

use crate::poly::IntPoly;

use super::ClosedFormError;

/// How to read the factor printed as `(w+x+-2i+1)` in the last double sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CclReading {
    /// `w + x - 2i + 1`; agrees with the recurrence.
    #[default]
    Minus,
    /// `w + x + 2i + 1`, kept so the alternative can be checked and rejected.
    Plus,
}

fn check_chain(w: u32, x: u32, y: u32, z: u32) -> Result<(), ClosedFormError> {
    if 1 <= w && w <= x && x <= y && y <= z {
        Ok(())
    } else {
        Err(ClosedFormError::OrderViolation { w, x, y, z })
    }
}

fn add_term(acc: &mut Vec<i64>, coeff: i64, exponent: i64) {
    let e = usize::try_from(exponent).expect("exponents in the sums are nonnegative");
    if acc.len() <= e {
        acc.resize(e + 1, 0);
    }
    acc[e] += coeff;
}

/// `N(w,x,y,z)` for `1 <= w <= x <= y <= z`.
pub fn rank4_total_ccl(w: u32, x: u32, y: u32, z: u32) -> Result<IntPoly, ClosedFormError> {
    rank4_total_ccl_with(w, x, y, z, CclReading::Minus)
}

pub fn rank4_total_ccl_with(
    w: u32,
    x: u32,
    y: u32,
    z: u32,
    reading: CclReading,
) -> Result<IntPoly, ClosedFormError> {
    check_chain(w, x, y, z)?;
    let (w, x, y, z) = (i64::from(w), i64::from(x), i64::from(y), i64::from(z));
    let s = w + x + y + z;
    let mut acc = Vec::new();

    for i in 0..w {
        for j in 0..=i {
            let c = 2 * i - 2 * j + 1;
            add_term(&mut acc, (s - 4 * i + 1) * c, 3 * i + j);
            add_term(&mut acc, (s - 4 * i - 1) * c, 3 * i + j + 1);
            add_term(&mut acc, 2 * (s - 4 * i - 2) * (i - j + 1), 3 * i + j + 2);
        }
    }
    for i in 0..=w {
        for j in w..x {
            let c = w + j - 2 * i + 1;
            add_term(&mut acc, c * (x + y + z - 3 * j + 1), w + 2 * j + i);
            add_term(&mut acc, c * (x + y + z - 3 * j - 1), w + 2 * j + i + 1);
        }
    }
    for i in 0..=w {
        let inner = match reading {
            CclReading::Minus => w + x - 2 * i + 1,
            CclReading::Plus => w + x + 2 * i + 1,
        };
        for j in x..=y {
            add_term(&mut acc, (y + z - 2 * j + 1) * inner, w + x + i + j);
        }
    }
    Ok(IntPoly::from_i64s(&acc))
}

/// `((z-y+1)(x-w+1), 2w+x+y)`: coefficient and degree of the leading term.
pub fn leading_term_ccl(w: u32, x: u32, y: u32, z: u32) -> Result<(u64, usize), ClosedFormError> {
    check_chain(w, x, y, z)?;
    let coeff = u64::from(z - y + 1) * u64::from(x - w + 1);
    Ok((coeff, (2 * w + x + y) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupType;
    use crate::recurrence::total_count;

    #[test]
    fn klein_rank4() {
        let n = rank4_total_ccl(1, 1, 1, 1).unwrap();
        assert_eq!(n.eval_at_u64(2), 67.into());
        assert_eq!(n, total_count(&GroupType::from_parts(&[1, 1, 1, 1])));
    }

    #[test]
    fn leading_terms() {
        assert_eq!(leading_term_ccl(1, 1, 2, 3).unwrap(), (2, 5));
        assert_eq!(leading_term_ccl(1, 2, 3, 4).unwrap(), (4, 7));
        for m in 1..5 {
            assert_eq!(leading_term_ccl(m, m, m, m).unwrap(), (1, 4 * m as usize));
        }
        let n = rank4_total_ccl(1, 2, 3, 4).unwrap();
        assert_eq!(n.degree(), Ok(7));
        assert_eq!(n.leading_coeff(), Ok(&4.into()));
    }

    #[test]
    fn chain_order_is_enforced() {
        assert!(matches!(
            rank4_total_ccl(2, 1, 3, 4),
            Err(ClosedFormError::OrderViolation { .. })
        ));
        assert!(leading_term_ccl(0, 1, 1, 1).is_err());
    }

    #[test]
    fn plus_reading_disagrees() {
        let t = GroupType::from_parts(&[1, 1, 2, 2]);
        let plus = rank4_total_ccl_with(1, 1, 2, 2, CclReading::Plus).unwrap();
        assert_ne!(plus, total_count(&t));
    }
}
