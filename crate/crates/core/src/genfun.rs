//! Truncated power series in `x_1, x_2, y` with coefficients in `Z[p]`.
//!
//! The rank-2 generating function
//! `F_2 = Σ h_r^{(α_1, α_2)}(p) x_1^{α_1} x_2^{α_2} y^r` (descending
//! `α_1 >= α_2`) and the series derived from it are rational functions.
//! Expanding them up to fixed bounds turns each identity into a finite
//! comparison of polynomial coefficients.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::closed_forms::ClosedForms;
use crate::group::GroupType;
use crate::poly::IntPoly;
use crate::recurrence::count_stehling;

/// Exponents of `(x_1, x_2, y)`.
pub type Monomial = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error("denominator factor {index} has constant term {constant}, expected 1 or -1")]
    NonUnitConstant { index: usize, constant: IntPoly },
    #[error("monomial {monomial:?} lies outside the bounds {bounds:?}")]
    OutOfBounds { monomial: Monomial, bounds: Monomial },
    #[error("series bounds differ: {0:?} and {1:?}")]
    BoundsMismatch(Monomial, Monomial),
}

/// A power series truncated to `e_1 <= D_1, e_2 <= D_2, e_y <= D_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    bounds: Monomial,
    coeffs: Vec<IntPoly>,
}

impl MultiSeries {
    pub fn zero(bounds: Monomial) -> Self {
        let len = bounds.iter().map(|&d| d as usize + 1).product();
        Self {
            bounds,
            coeffs: vec![IntPoly::zero(); len],
        }
    }

    pub fn one(bounds: Monomial) -> Self {
        Self::constant(bounds, IntPoly::one())
    }

    pub fn constant(bounds: Monomial, c: IntPoly) -> Self {
        Self::from_terms(bounds, [(c, [0, 0, 0])])
    }

    /// Sum of `coeff * x_1^{e_1} x_2^{e_2} y^{e_y}`; out-of-bounds terms are
    /// dropped.
    pub fn from_terms(bounds: Monomial, terms: impl IntoIterator<Item = (IntPoly, Monomial)>) -> Self {
        let mut s = Self::zero(bounds);
        for (c, e) in terms {
            if let Some(i) = s.index(e) {
                s.coeffs[i] += &c;
            }
        }
        s
    }

    /// Like [`MultiSeries::from_terms`] with integer coefficients.
    pub fn from_int_terms(bounds: Monomial, terms: &[(i64, Monomial)]) -> Self {
        Self::from_terms(bounds, terms.iter().map(|&(c, e)| (IntPoly::constant(c), e)))
    }

    pub fn bounds(&self) -> Monomial {
        self.bounds
    }

    fn index(&self, e: Monomial) -> Option<usize> {
        if e.iter().zip(&self.bounds).any(|(x, d)| x > d) {
            return None;
        }
        let [_, d2, dy] = self.bounds.map(|d| d as usize + 1);
        Some((e[0] as usize * d2 + e[1] as usize) * dy + e[2] as usize)
    }

    /// Monomials within bounds in lexicographic order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> {
        let [d1, d2, dy] = self.bounds;
        (0..=d1).flat_map(move |a| (0..=d2).flat_map(move |b| (0..=dy).map(move |c| [a, b, c])))
    }

    pub fn coeff(&self, e: Monomial) -> Result<&IntPoly, GenfunError> {
        self.index(e)
            .map(|i| &self.coeffs[i])
            .ok_or(GenfunError::OutOfBounds {
                monomial: e,
                bounds: self.bounds,
            })
    }

    fn nonzero_terms(&self) -> Vec<(Monomial, &IntPoly)> {
        self.monomials()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn same_bounds(&self, other: &Self) -> Result<(), GenfunError> {
        if self.bounds == other.bounds {
            Ok(())
        } else {
            Err(GenfunError::BoundsMismatch(self.bounds, other.bounds))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GenfunError> {
        self.same_bounds(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self {
            bounds: self.bounds,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GenfunError> {
        self.same_bounds(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self {
            bounds: self.bounds,
            coeffs,
        })
    }

    /// Truncated product; terms beyond the bounds are never formed.
    pub fn mul(&self, other: &Self) -> Result<Self, GenfunError> {
        self.same_bounds(other)?;
        let mut out = Self::zero(self.bounds);
        let rhs = other.nonzero_terms();
        for (e, a) in self.nonzero_terms() {
            for &(f, b) in &rhs {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                if let Some(i) = out.index(g) {
                    out.coeffs[i] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `self / den` for a denominator with constant term `±1`.
    ///
    /// Solves `q * den = self` monomial by monomial in lexicographic
    /// order, which is the truncated geometric-series inverse of `den`
    /// multiplied in.
    pub fn div_unit(&self, den: &Self) -> Result<Self, GenfunError> {
        self.same_bounds(den)?;
        let c0 = den.coeffs[0].clone();
        let sign = if c0 == IntPoly::one() {
            IntPoly::one()
        } else if c0 == IntPoly::constant(-1) {
            IntPoly::constant(-1)
        } else {
            return Err(GenfunError::NonUnitConstant {
                index: 0,
                constant: c0,
            });
        };
        let rest: Vec<(Monomial, IntPoly)> = den
            .nonzero_terms()
            .into_iter()
            .filter(|(e, _)| *e != [0, 0, 0])
            .map(|(e, c)| (e, c.clone()))
            .collect();
        let mut q = Self::zero(self.bounds);
        let monomials: Vec<Monomial> = self.monomials().collect();
        for (i, e) in monomials.into_iter().enumerate() {
            let mut acc = self.coeffs[i].clone();
            for (f, c) in &rest {
                if f.iter().zip(&e).all(|(a, b)| a <= b) {
                    let prev = q.coeff([e[0] - f[0], e[1] - f[1], e[2] - f[2]])?;
                    if !prev.is_zero() {
                        acc -= &(c * prev);
                    }
                }
            }
            q.coeffs[i] = &sign * &acc;
        }
        Ok(q)
    }
}

/// Expands `numerator / Π factors` up to the numerator's bounds.
pub fn expand_rational(numerator: &MultiSeries, factors: &[MultiSeries]) -> Result<MultiSeries, GenfunError> {
    let mut s = numerator.clone();
    for (index, f) in factors.iter().enumerate() {
        s = s.div_unit(f).map_err(|e| match e {
            GenfunError::NonUnitConstant { constant, .. } => GenfunError::NonUnitConstant { index, constant },
            other => other,
        })?;
    }
    Ok(s)
}

/// `h_r` of the descending type `(α_1, α_2)`.
fn rank2_count(a1: u32, a2: u32, r: u32) -> IntPoly {
    let t = GroupType::from_parts(&[a1, a2]);
    count_stehling(&t, i64::from(r))
}

/// `1 - c x^e` as a series.
fn one_minus(bounds: Monomial, c: IntPoly, e: Monomial) -> MultiSeries {
    MultiSeries::from_terms(bounds, [(IntPoly::one(), [0, 0, 0]), (-c, e)])
}

fn one_minus_unit(bounds: Monomial, e: Monomial) -> MultiSeries {
    one_minus(bounds, IntPoly::one(), e)
}

/// `F_1(x_1, y) = 1 / ((1 - x_1)(1 - x_1 y))`.
pub fn f1_series(bounds: Monomial) -> Result<MultiSeries, GenfunError> {
    expand_rational(
        &MultiSeries::one(bounds),
        &[one_minus_unit(bounds, [1, 0, 0]), one_minus_unit(bounds, [1, 0, 1])],
    )
}

/// The closed form of `F_2` with numerator
/// `x_1^2 x_2 y^2 + x_1^2 x_2 y - x_1 x_2 y - 1` and last factor
/// `(p x_1 x_2 y - 1)`.
pub fn f2_series(bounds: Monomial) -> Result<MultiSeries, GenfunError> {
    let num = MultiSeries::from_int_terms(
        bounds,
        &[(1, [2, 1, 2]), (1, [2, 1, 1]), (-1, [1, 1, 1]), (-1, [0, 0, 0])],
    );
    let last = MultiSeries::from_terms(
        bounds,
        [(IntPoly::p_pow(1), [1, 1, 1]), (IntPoly::constant(-1), [0, 0, 0])],
    );
    expand_rational(
        &num,
        &[
            one_minus_unit(bounds, [1, 0, 0]),
            one_minus_unit(bounds, [1, 0, 1]),
            one_minus_unit(bounds, [1, 1, 0]),
            one_minus_unit(bounds, [1, 1, 2]),
            last,
        ],
    )
}

/// `1 / ((1 - x_1)(1 - x_1 x_2)(1 - x_1 x_2 y)(1 - p x_1 x_2 y))`, whose
/// coefficients are `h_r^{(α_1, α_2)}` for `α_1 >= α_2 >= r`.
pub fn g_product_series(bounds: Monomial) -> Result<MultiSeries, GenfunError> {
    expand_rational(
        &MultiSeries::one(bounds),
        &[
            one_minus_unit(bounds, [1, 0, 0]),
            one_minus_unit(bounds, [1, 1, 0]),
            one_minus_unit(bounds, [1, 1, 1]),
            one_minus(bounds, IntPoly::p_pow(1), [1, 1, 1]),
        ],
    )
}

/// Readings of the numerator printed as `1 + x_2 x_2 y` for the diagonal
/// part `F_2^{(0)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalReading {
    /// `1 + x_2^2 y`, exactly as printed.
    AsPrinted,
    /// `1 + x_1 x_2 y`, which is what solving the functional equation gives.
    #[serde(rename = "x1x2y")]
    X1X2Y,
}

/// Readings of the off-diagonal part `F_2^{(1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffDiagonalReading {
    /// The printed rational function with the stray symbol `q` read as `p`.
    PrintedQIsP,
    /// Solved from the printed functional equation
    /// `F^{(1)} = x_1 y (F^{(1)} + F^{(0)}) + S`, with
    /// `S = Σ_{α_1 > α_2 >= r >= 0} p^r x_1^{α_1} x_2^{α_2} y^r`.
    FunctionalEquation,
}

impl fmt::Display for DiagonalReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagonalReading::AsPrinted => "as-printed",
            DiagonalReading::X1X2Y => "x1x2y",
        })
    }
}

impl fmt::Display for OffDiagonalReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OffDiagonalReading::PrintedQIsP => "printed-q-is-p",
            OffDiagonalReading::FunctionalEquation => "functional-equation",
        })
    }
}

pub fn f2_diagonal_series(bounds: Monomial, reading: DiagonalReading) -> Result<MultiSeries, GenfunError> {
    let second = match reading {
        DiagonalReading::AsPrinted => [0, 2, 1],
        DiagonalReading::X1X2Y => [1, 1, 1],
    };
    let num = MultiSeries::from_int_terms(bounds, &[(1, [0, 0, 0]), (1, second)]);
    expand_rational(
        &num,
        &[
            one_minus_unit(bounds, [1, 1, 0]),
            one_minus(bounds, IntPoly::p_pow(1), [1, 1, 1]),
            one_minus_unit(bounds, [1, 1, 2]),
        ],
    )
}

pub fn f2_off_diagonal_series(
    bounds: Monomial,
    reading: OffDiagonalReading,
    diagonal: &MultiSeries,
) -> Result<MultiSeries, GenfunError> {
    match reading {
        OffDiagonalReading::PrintedQIsP => {
            let num = MultiSeries::from_int_terms(
                bounds,
                &[(1, [0, 0, 0]), (1, [0, 0, 1]), (-1, [1, 0, 1]), (1, [2, 1, 2])],
            );
            expand_rational(
                &num,
                &[
                    one_minus_unit(bounds, [1, 0, 0]),
                    one_minus_unit(bounds, [1, 0, 1]),
                    one_minus_unit(bounds, [1, 1, 0]),
                    one_minus_unit(bounds, [1, 1, 1]),
                    one_minus(bounds, IntPoly::p_pow(1), [1, 1, 1]),
                ],
            )
        }
        OffDiagonalReading::FunctionalEquation => {
            let [d1, d2, dy] = bounds;
            let mut s_terms = Vec::new();
            for a1 in 0..=d1 {
                for a2 in 0..a1.min(d2 + 1) {
                    for r in 0..=a2.min(dy) {
                        s_terms.push((IntPoly::p_pow(r as usize), [a1, a2, r]));
                    }
                }
            }
            let s = MultiSeries::from_terms(bounds, s_terms);
            let x1y = MultiSeries::from_int_terms(bounds, &[(1, [1, 0, 1])]);
            let num = x1y.mul(diagonal)?.add(&s)?;
            expand_rational(&num, &[one_minus_unit(bounds, [1, 0, 1])])
        }
    }
}

/// One coefficient that differs from its reference value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub monomial: Monomial,
    pub expected: IntPoly,
    pub got: IntPoly,
}

/// Result of comparing a series against reference coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub bounds: Monomial,
    pub checked: usize,
    pub mismatch_count: usize,
    /// The first few mismatches in lexicographic order.
    pub mismatches: Vec<Mismatch>,
}

const KEPT_MISMATCHES: usize = 16;

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }

    fn compare(series: &MultiSeries, mut expected: impl FnMut(Monomial) -> Option<IntPoly>) -> Self {
        let mut check = SeriesCheck {
            bounds: series.bounds(),
            checked: 0,
            mismatch_count: 0,
            mismatches: Vec::new(),
        };
        for (e, got) in series.monomials().zip(&series.coeffs) {
            let Some(want) = expected(e) else { continue };
            check.checked += 1;
            if &want != got {
                check.mismatch_count += 1;
                if check.mismatches.len() < KEPT_MISMATCHES {
                    check.mismatches.push(Mismatch {
                        monomial: e,
                        expected: want,
                        got: got.clone(),
                    });
                }
            }
        }
        check
    }
}

/// Every coefficient of the expanded `F_2` closed form against the
/// recurrence; coefficients with `α_1 < α_2` must vanish.
pub fn verify_f2(bounds: Monomial) -> Result<SeriesCheck, GenfunError> {
    let f2 = f2_series(bounds)?;
    Ok(SeriesCheck::compare(&f2, |[a1, a2, r]| {
        Some(if a1 >= a2 { rank2_count(a1, a2, r) } else { IntPoly::zero() })
    }))
}

/// The G-product coefficients against `(p^{r+1} - 1)/(p - 1)` and the
/// rank-2 closed form on `α_1 >= α_2 >= r`, and zero elsewhere.
pub fn verify_g_product(bounds: Monomial, catalog: &ClosedForms) -> Result<SeriesCheck, GenfunError> {
    let g = g_product_series(bounds)?;
    let mut disagreement = None;
    let mut check = SeriesCheck::compare(&g, |[a1, a2, r]| {
        if !(a1 >= a2 && a2 >= r) {
            return Some(IntPoly::zero());
        }
        let geometric = (0..=r as usize).map(IntPoly::p_pow).sum::<IntPoly>();
        // the rank-2 formula needs both parts positive
        if a2 > 0 && disagreement.is_none() {
            let t = GroupType::from_parts(&[a2, a1]);
            if catalog.rank2_case(&t, i64::from(r), 1).ok().as_ref() != Some(&geometric) {
                disagreement = Some([a1, a2, r]);
            }
        }
        Some(geometric)
    });
    if let Some(e) = disagreement {
        // Report the rank-2 formula disagreement as a mismatch of its own.
        let t = GroupType::from_parts(&[e[1], e[0]]);
        check.mismatch_count += 1;
        check.mismatches.push(Mismatch {
            monomial: e,
            expected: (0..=e[2] as usize).map(IntPoly::p_pow).sum(),
            got: catalog.rank2_case(&t, i64::from(e[2]), 1).unwrap_or_default(),
        });
    }
    Ok(check)
}

/// Outcome of one pair of readings of the two sub-series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadingOutcome {
    pub diagonal: DiagonalReading,
    pub off_diagonal: OffDiagonalReading,
    /// `F^{(0)} + F^{(1)} = F_2`.
    pub sum: SeriesCheck,
    /// `F^{(0)}` against the recurrence on `α_1 = α_2`, zero elsewhere.
    pub diagonal_check: SeriesCheck,
    /// `F^{(1)}` against the recurrence on `α_1 > α_2`, zero elsewhere.
    pub off_diagonal_check: SeriesCheck,
}

impl ReadingOutcome {
    pub fn passed(&self) -> bool {
        self.sum.passed() && self.diagonal_check.passed() && self.off_diagonal_check.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubSeriesReport {
    pub outcomes: Vec<ReadingOutcome>,
}

impl SubSeriesReport {
    /// Reading pairs under which every check holds.
    pub fn validated(&self) -> Vec<(DiagonalReading, OffDiagonalReading)> {
        self.outcomes
            .iter()
            .filter(|o| o.passed())
            .map(|o| (o.diagonal, o.off_diagonal))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().any(ReadingOutcome::passed)
    }
}

/// Checks both sub-series under every combination of readings.
pub fn verify_sub_series(bounds: Monomial) -> Result<SubSeriesReport, GenfunError> {
    let f2 = f2_series(bounds)?;
    let mut outcomes = Vec::new();
    for diagonal in [DiagonalReading::AsPrinted, DiagonalReading::X1X2Y] {
        let f0 = f2_diagonal_series(bounds, diagonal)?;
        let diagonal_check = SeriesCheck::compare(&f0, |[a1, a2, r]| {
            Some(if a1 == a2 { rank2_count(a1, a2, r) } else { IntPoly::zero() })
        });
        for off_diagonal in [OffDiagonalReading::PrintedQIsP, OffDiagonalReading::FunctionalEquation] {
            let f1 = f2_off_diagonal_series(bounds, off_diagonal, &f0)?;
            let total = f0.add(&f1)?;
            let sum = SeriesCheck::compare(&total, |e| Some(f2.coeff(e).cloned().unwrap_or_default()));
            let off_diagonal_check = SeriesCheck::compare(&f1, |[a1, a2, r]| {
                Some(if a1 > a2 { rank2_count(a1, a2, r) } else { IntPoly::zero() })
            });
            outcomes.push(ReadingOutcome {
                diagonal,
                off_diagonal,
                sum,
                diagonal_check: diagonal_check.clone(),
                off_diagonal_check,
            });
        }
    }
    Ok(SubSeriesReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Monomial = [6, 6, 6];

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn f1_coefficients() {
        let f1 = f1_series(B).unwrap();
        for a in 0..=6 {
            for r in 0..=6 {
                let want = if r <= a { IntPoly::one() } else { IntPoly::zero() };
                assert_eq!(f1.coeff([a, 0, r]).unwrap(), &want);
            }
        }
    }

    #[test]
    fn geometric_series_in_p() {
        let s = expand_rational(&MultiSeries::one(B), &[one_minus(B, IntPoly::p_pow(1), [1, 1, 1])]).unwrap();
        for k in 0..=6 {
            assert_eq!(s.coeff([k, k, k]).unwrap(), &IntPoly::p_pow(k as usize));
        }
        assert!(s.coeff([1, 0, 0]).unwrap().is_zero());
    }

    #[test]
    fn f2_coefficients() {
        let f2 = f2_series(B).unwrap();
        assert_eq!(f2.coeff([1, 1, 1]).unwrap(), &poly(&[1, 1]));
        assert_eq!(f2.coeff([2, 1, 0]).unwrap(), &IntPoly::one());
        assert_eq!(f2.coeff([1, 1, 2]).unwrap(), &IntPoly::one());
        assert_eq!(f2.coeff([0, 0, 0]).unwrap(), &IntPoly::one());
        assert_eq!(f2.coeff([2, 2, 2]).unwrap(), &rank2_count(2, 2, 2));
        assert!(matches!(f2.coeff([7, 0, 0]), Err(GenfunError::OutOfBounds { .. })));
    }

    #[test]
    fn f2_matches_recurrence() {
        let check = verify_f2(B).unwrap();
        assert!(check.passed(), "{:?}", check.mismatches);
        assert_eq!(check.checked, 343);
    }

    #[test]
    fn g_product_matches_case_one() {
        let check = verify_g_product(B, &ClosedForms::default()).unwrap();
        assert!(check.passed(), "{:?}", check.mismatches);
    }

    #[test]
    fn sub_series_readings() {
        let report = verify_sub_series([5, 5, 5]).unwrap();
        assert_eq!(
            report.validated(),
            [(DiagonalReading::X1X2Y, OffDiagonalReading::FunctionalEquation)]
        );
        let f0 = f2_diagonal_series(B, DiagonalReading::X1X2Y).unwrap();
        assert_eq!(f0.coeff([1, 1, 1]).unwrap(), &poly(&[1, 1]));
        assert_eq!(f0.coeff([0, 0, 0]).unwrap(), &IntPoly::one());
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let bad = MultiSeries::from_int_terms(B, &[(2, [0, 0, 0]), (1, [1, 0, 0])]);
        let err = expand_rational(&MultiSeries::one(B), &[one_minus_unit(B, [1, 0, 0]), bad]).unwrap_err();
        assert!(matches!(err, GenfunError::NonUnitConstant { index: 1, .. }));
    }

    #[test]
    fn negative_unit_constant() {
        // 1 / (x_1 - 1) = -(1 + x_1 + x_1^2 + ...)
        let den = MultiSeries::from_int_terms(B, &[(-1, [0, 0, 0]), (1, [1, 0, 0])]);
        let s = expand_rational(&MultiSeries::one(B), &[den]).unwrap();
        for k in 0..=6 {
            assert_eq!(s.coeff([k, 0, 0]).unwrap(), &IntPoly::constant(-1));
        }
    }
}
