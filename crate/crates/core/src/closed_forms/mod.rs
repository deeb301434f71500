//! Catalog of explicit subgroup-count formulas.
//!
//! Each formula is stored the way it is usually written: a numerator built
//! term by term from exponent expressions linear in the parts and `b`, over
//! a product of `(p^k - 1)` factors. [`ClosedForms`] assembles the
//! numerator for a concrete query and exact-divides; a failed division is
//! a transcription bug and is reported as [`ClosedFormError::FormulaBug`]
//! naming the case.
//!
//! Formulas that are reflections of another case (rank-3 cases 7 to 10,
//! the upper rank-2 case, reflected rank-4 intervals) reuse the partner's
//! builder at `m - b` rather than carrying a second transcription.

mod ccl;
mod terms;

pub use ccl::{leading_term_ccl, rank4_total_ccl, rank4_total_ccl_with, CclReading};
pub use terms::{cyclotomic_product, Numerator, Term};

use thiserror::Error;

use crate::group::{rank3_case_contains, CaseId, GroupError, GroupType, Theorem};
use crate::poly::{IntPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{case}: exact division failed ({source})")]
    FormulaBug {
        case: CaseId,
        #[source]
        source: PolyError,
    },
    #[error("{case}: numerator term {term} has a negative exponent")]
    NegativeExponent { case: CaseId, term: usize },
    #[error("parts must satisfy 1 <= w <= x <= y <= z, got ({w},{x},{y},{z})")]
    OrderViolation { w: u32, x: u32, y: u32, z: u32 },
    #[error("{0}")]
    InvalidParameter(&'static str),
}

impl ClosedFormError {
    /// The case a formula failure is attributed to, if any.
    pub fn case(&self) -> Option<CaseId> {
        match self {
            ClosedFormError::FormulaBug { case, .. }
            | ClosedFormError::NegativeExponent { case, .. } => Some(*case),
            _ => None,
        }
    }
}

/// Outcome of a closed-form lookup. `Uncovered` means the catalog has no
/// formula for the query and the caller should use the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaResult {
    Covered { value: IntPoly, case: CaseId },
    Uncovered,
}

impl FormulaResult {
    pub fn is_covered(&self) -> bool {
        matches!(self, FormulaResult::Covered { .. })
    }

    pub fn value(&self) -> Option<&IntPoly> {
        match self {
            FormulaResult::Covered { value, .. } => Some(value),
            FormulaResult::Uncovered => None,
        }
    }

    pub fn case(&self) -> Option<CaseId> {
        match self {
            FormulaResult::Covered { case, .. } => Some(*case),
            FormulaResult::Uncovered => None,
        }
    }

    pub fn into_value(self) -> Option<IntPoly> {
        match self {
            FormulaResult::Covered { value, .. } => Some(value),
            FormulaResult::Uncovered => None,
        }
    }
}

/// A deliberate edit to one numerator coefficient, used to check that the
/// verification suite catches a corrupted formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perturbation {
    pub case: CaseId,
    pub term: usize,
    pub delta: i64,
}

/// The formula catalog. `ClosedForms::default()` is the faithful catalog.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForms {
    perturbation: Option<Perturbation>,
}

const fn case(theorem: Theorem, n: u8) -> CaseId {
    CaseId::known(theorem, n)
}

fn signed(x: u32) -> i64 {
    i64::from(x)
}

fn parts3(t: &GroupType) -> Result<(i64, i64, i64), ClosedFormError> {
    t.require_rank(3)?;
    let a = t.parts();
    Ok((signed(a[0]), signed(a[1]), signed(a[2])))
}

// Rank-3 numerators over (p - 1)(p^2 - 1).

fn rank3_case1_numerator(b: i64) -> Numerator {
    Numerator::new(&[(1, 2 * b + 3), (-1, b + 2), (-1, b + 1), (1, 0)])
}

fn rank3_case2_numerator(a1: i64, b: i64) -> Numerator {
    Numerator::new(&[
        (1, b + a1 + 3),
        (1, b + a1 + 2),
        (-1, 2 * a1 + 2),
        (-1, b + 2),
        (-1, b + 1),
        (1, 0),
    ])
}

/// Shared by cases 3 and 4.
fn rank3_case34_numerator(a1: i64, a2: i64, b: i64) -> Numerator {
    Numerator::new(&[
        (b - a2 + 1, a2 + a1 + 3),
        (1, a2 + a1 + 2),
        (-(b - a2), a1 + a2 + 1),
        (-1, 2 * a1 + 2),
        (-1, b + 2),
        (-1, b + 1),
        (1, 0),
    ])
}

fn rank3_case5_numerator(a1: i64, a2: i64) -> Numerator {
    Numerator::new(&[
        (a1 + 1, a2 + a1 + 3),
        (1, a2 + a1 + 2),
        (-a1, a1 + a2 + 1),
        (-1, 2 * a1 + 2),
        (-1, a1 + a2 + 2),
        (-1, a1 + a2 + 1),
        (1, 0),
    ])
}

/// The case-6 numerator as a function of all four parameters. Every other
/// rank-3 case is a substitution instance of it, which the tests exploit.
pub fn rank3_case6_numerator(a1: i64, a2: i64, a3: i64, b: i64) -> Numerator {
    let m = a1 + a2 + a3;
    Numerator::new(&[
        (a3 - a2 + 1, a2 + a1 + 3),
        (2, a2 + a1 + 2),
        (-(a3 - a2 - 1), a2 + a1 + 1),
        (-1, m - b + 2),
        (-1, m - b + 1),
        (-1, 2 * a1 + 2),
        (-1, b + 2),
        (-1, b + 1),
        (1, 0),
    ])
}

impl ClosedForms {
    pub fn new() -> Self {
        Self::default()
    }

    /// A catalog whose numerator for `perturbation.case` is corrupted.
    pub fn with_perturbation(perturbation: Perturbation) -> Self {
        Self {
            perturbation: Some(perturbation),
        }
    }

    pub fn perturbation(&self) -> Option<Perturbation> {
        self.perturbation
    }

    fn finish(&self, case: CaseId, mut num: Numerator, den: &IntPoly) -> Result<IntPoly, ClosedFormError> {
        if let Some(pert) = self.perturbation.filter(|p| p.case == case) {
            num.perturb(pert.term, pert.delta);
        }
        let num = num
            .to_poly()
            .map_err(|term| ClosedFormError::NegativeExponent { case, term })?;
        num.exact_div(den)
            .map_err(|source| ClosedFormError::FormulaBug { case, source })
    }

    /// Rank 2, type `(a_2, a_1)`:
    /// case 1 `0 <= b <= a_1`, case 2 `a_1 <= b <= a_2`, case 3 `a_2 <= b <= m`.
    pub fn rank2(&self, t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
        t.require_rank(2)?;
        if !t.contains_exponent(b) {
            return Ok(FormulaResult::Uncovered);
        }
        let (a1, a2) = (signed(t.parts()[0]), signed(t.parts()[1]));
        let n = if b <= a1 {
            1
        } else if b <= a2 {
            2
        } else {
            3
        };
        let value = self.rank2_case(t, b, n)?;
        Ok(FormulaResult::Covered {
            value,
            case: case(Theorem::Rank2, n),
        })
    }

    /// The formula of rank-2 case `n` at `b`, ignoring its interval.
    pub fn rank2_case(&self, t: &GroupType, b: i64, n: u8) -> Result<IntPoly, ClosedFormError> {
        t.require_rank(2)?;
        let (a1, a2) = (signed(t.parts()[0]), signed(t.parts()[1]));
        let exponent = match n {
            1 => b + 1,
            2 => a1 + 1,
            3 => a1 + a2 - b + 1,
            _ => return Err(GroupError::InvalidCase { theorem: Theorem::Rank2, case: n }.into()),
        };
        let num = Numerator::new(&[(1, exponent), (-1, 0)]);
        self.finish(case(Theorem::Rank2, n), num, &cyclotomic_product(&[1]))
    }

    /// Rank 3, all ten cases; the case is chosen by
    /// [`classify_rank3`](crate::group::classify_rank3).
    pub fn rank3(&self, t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
        t.require_rank(3)?;
        if !t.contains_exponent(b) {
            return Ok(FormulaResult::Uncovered);
        }
        let id = crate::group::classify_rank3(t, b)?;
        let value = self.rank3_case(t, b, id.case())?;
        Ok(FormulaResult::Covered { value, case: id })
    }

    /// The formula of rank-3 case `n` at `b`, ignoring its interval.
    pub fn rank3_case(&self, t: &GroupType, b: i64, n: u8) -> Result<IntPoly, ClosedFormError> {
        let (a1, a2, a3) = parts3(t)?;
        let reflected = a1 + a2 + a3 - b;
        let num = match n {
            1 => rank3_case1_numerator(b),
            2 => rank3_case2_numerator(a1, b),
            3 | 4 => rank3_case34_numerator(a1, a2, b),
            5 => rank3_case5_numerator(a1, a2),
            6 => rank3_case6_numerator(a1, a2, a3, b),
            7 | 8 => rank3_case34_numerator(a1, a2, reflected),
            9 => rank3_case2_numerator(a1, reflected),
            10 => rank3_case1_numerator(reflected),
            _ => return Err(GroupError::InvalidCase { theorem: Theorem::Rank3, case: n }.into()),
        };
        self.finish(case(Theorem::Rank3, n), num, &cyclotomic_product(&[1, 2]))
    }

    /// Rank-3 cases whose interval contains `b`.
    pub fn rank3_cases_containing(&self, t: &GroupType, b: i64) -> Result<Vec<u8>, ClosedFormError> {
        Ok(crate::group::rank3_cases_containing(t, b)?)
    }

    /// Homocyclic rank 3, type `(m,m,m)`, in three cases of width `m`.
    pub fn rank3_mmm(&self, m: u32, b: i64) -> Result<FormulaResult, ClosedFormError> {
        if m == 0 {
            return Err(ClosedFormError::InvalidParameter("homocyclic exponent m must be at least 1"));
        }
        let m = signed(m);
        if !(0..=3 * m).contains(&b) {
            return Ok(FormulaResult::Uncovered);
        }
        let n = if b <= m {
            1
        } else if b <= 2 * m {
            2
        } else {
            3
        };
        let value = self.rank3_mmm_case(m as u32, b, n)?;
        Ok(FormulaResult::Covered {
            value,
            case: case(Theorem::Rank3Mmm, n),
        })
    }

    pub fn rank3_mmm_case(&self, m: u32, b: i64, n: u8) -> Result<IntPoly, ClosedFormError> {
        let m = signed(m);
        let num = match n {
            1 => rank3_case1_numerator(b),
            2 => Numerator::new(&[
                (1, 2 * m + 3),
                (1, 2 * m + 2),
                (1, 2 * m + 1),
                (-1, 3 * m + 2 - b),
                (-1, 3 * m + 1 - b),
                (-1, b + 2),
                (-1, b + 1),
                (1, 0),
            ]),
            3 => Numerator::new(&[
                (1, 6 * m + 3 - 2 * b),
                (-1, 3 * m + 2 - b),
                (-1, 3 * m + 1 - b),
                (1, 0),
            ]),
            _ => return Err(GroupError::InvalidCase { theorem: Theorem::Rank3Mmm, case: n }.into()),
        };
        self.finish(case(Theorem::Rank3Mmm, n), num, &cyclotomic_product(&[1, 2]))
    }

    /// The three rank-4 intervals with known formulas and their reflections:
    /// `0 <= b <= a_1`, `a_1 <= b <= a_2`, `a_2 <= b <= min(a_3, a_1 + a_2)`.
    /// Other queries are `Uncovered`.
    pub fn rank4_partial(&self, t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
        t.require_rank(4)?;
        if !t.contains_exponent(b) {
            return Ok(FormulaResult::Uncovered);
        }
        let a = t.parts();
        let (a1, a2, a3) = (signed(a[0]), signed(a[1]), signed(a[2]));
        let m = signed(t.weight());
        for x in [b, m - b] {
            let n = if x <= a1 {
                1
            } else if x <= a2 {
                2
            } else if x <= a3.min(a1 + a2) {
                3
            } else {
                continue;
            };
            let value = self.rank4_partial_case(t, x, n)?;
            return Ok(FormulaResult::Covered {
                value,
                case: case(Theorem::Rank4Partial, n),
            });
        }
        Ok(FormulaResult::Uncovered)
    }

    pub fn rank4_partial_case(&self, t: &GroupType, b: i64, n: u8) -> Result<IntPoly, ClosedFormError> {
        t.require_rank(4)?;
        let a1 = signed(t.parts()[0]);
        let a2 = signed(t.parts()[1]);
        let num = match n {
            1 => rank4_interval1_numerator(b),
            2 => Numerator::new(&[
                (1, 2 * b + a1 + 6),
                (1, 2 * b + a1 + 5),
                (1, 2 * b + a1 + 4),
                (-1, 2 * a1 + b + 5),
                (-1, 2 * a1 + b + 4),
                (-1, 2 * a1 + b + 3),
                (1, 3 * a1 + 3),
                (-1, 2 * b + 5),
                (-1, 2 * b + 4),
                (-1, 2 * b + 3),
                (1, b + 3),
                (1, b + 2),
                (1, b + 1),
                (-1, 0),
            ]),
            3 => Numerator::new(&[
                (b + 1 - a2, a2 + a1 + b + 6),
                (b + 1 - a2, a2 + a1 + b + 5),
                (a2 - b - 1, a2 + a1 + b + 3),
                (a2 - b - 1, a1 + a2 + b + 2),
                (1, 2 * a2 + a1 + 4),
                (1, a1 + 2 * a2 + 3),
                (1, a1 + 2 * a2 + 2),
                (-1, 2 * a1 + b + 5),
                (-1, 2 * a1 + b + 4),
                (-1, 2 * a1 + b + 3),
                (1, b + 3),
                (1, b + 2),
                (1, b + 1),
                (1, 3 * a1 + 3),
                (-1, 2 * b + 5),
                (-1, 2 * b + 4),
                (-1, 2 * b + 3),
                (-1, 0),
            ]),
            _ => {
                return Err(GroupError::InvalidCase {
                    theorem: Theorem::Rank4Partial,
                    case: n,
                }
                .into())
            }
        };
        self.finish(case(Theorem::Rank4Partial, n), num, &cyclotomic_product(&[1, 2, 3]))
    }

    /// Homocyclic rank 4, type `(m,m,m,m)`, in four intervals
    /// `[0,m]`, `(m,2m]`, `(2m,3m]`, `(3m,4m]`.
    pub fn rank4_mmmm_b(&self, m: u32, b: i64) -> Result<FormulaResult, ClosedFormError> {
        if m == 0 {
            return Err(ClosedFormError::InvalidParameter("homocyclic exponent m must be at least 1"));
        }
        let mm = signed(m);
        if !(0..=4 * mm).contains(&b) {
            return Ok(FormulaResult::Uncovered);
        }
        let n = match b {
            _ if b <= mm => 1,
            _ if b <= 2 * mm => 2,
            _ if b <= 3 * mm => 3,
            _ => 4,
        };
        let value = self.rank4_mmmm_case(m, b, n)?;
        Ok(FormulaResult::Covered {
            value,
            case: case(Theorem::Rank4Mmmm, n),
        })
    }

    pub fn rank4_mmmm_case(&self, m: u32, b: i64, n: u8) -> Result<IntPoly, ClosedFormError> {
        let m = signed(m);
        let num = match n {
            1 => rank4_interval1_numerator(b),
            // The whole four-line numerator carries the leading minus sign.
            2 => Numerator::new(&[
                (1, 2 * b + 5),
                (1, 2 * b + 4),
                (1, 2 * b + 3),
                (-1, b + 2 * m + 6),
                (-1, b + 2 * m + 5),
                (-2, b + 2 * m + 4),
                (-1, b + 2 * m + 3),
                (-1, b + 2 * m + 2),
                (-1, b + 3),
                (-1, b + 2),
                (-1, b + 1),
                (-1, 4 * m + 3 - b),
                (-1, 4 * m + 2 - b),
                (-1, 4 * m + 1 - b),
                (1, 3 * m + 5),
                (2, 3 * m + 4),
                (2, 3 * m + 3),
                (2, 3 * m + 2),
                (1, 3 * m + 1),
                (1, 0),
            ])
            .negated(),
            3 => Numerator::new(&[
                (1, b + 3),
                (1, b + 2),
                (1, b + 1),
                (1, 6 * m + 6 - b),
                (1, 6 * m + 5 - b),
                (2, 6 * m + 4 - b),
                (1, 6 * m + 3 - b),
                (1, 6 * m + 2 - b),
                (1, 4 * m + 3 - b),
                (1, 4 * m + 2 - b),
                (1, 4 * m + 1 - b),
                (-1, 8 * m + 5 - 2 * b),
                (-1, 8 * m + 4 - 2 * b),
                (-1, 8 * m + 3 - 2 * b),
                (-1, 3 * m + 5),
                (-2, 3 * m + 4),
                (-2, 3 * m + 3),
                (-2, 3 * m + 2),
                (-1, 3 * m + 1),
                (-1, 0),
            ]),
            4 => Numerator::new(&[
                (1, 4 * m + 3 - b),
                (1, 4 * m + 2 - b),
                (1, 4 * m + 1 - b),
                (-1, 8 * m + 5 - 2 * b),
                (-1, 8 * m + 4 - 2 * b),
                (-1, 8 * m + 3 - 2 * b),
                (1, 12 * m + 6 - 3 * b),
                (-1, 0),
            ]),
            _ => return Err(GroupError::InvalidCase { theorem: Theorem::Rank4Mmmm, case: n }.into()),
        };
        self.finish(case(Theorem::Rank4Mmmm, n), num, &cyclotomic_product(&[1, 2, 3]))
    }

    /// `N(m,m,m,m)`, the total subgroup count of `(Z/p^m)^4`, from its
    /// closed form over `(p^2 - 1)^2 (p^3 - 1)^2`.
    pub fn rank4_mmmm_total(&self, m: u32) -> Result<IntPoly, ClosedFormError> {
        if m == 0 {
            return Err(ClosedFormError::InvalidParameter("homocyclic exponent m must be at least 1"));
        }
        let mm = i64::from(m);
        let m_us = m as usize;
        let p2_p_1 = IntPoly::from_i64s(&[1, 1, 1]);
        let p2_1 = IntPoly::from_i64s(&[1, 0, 1]);
        let p_1 = IntPoly::from_i64s(&[1, 1]);

        let first = &p2_p_1 * &p2_p_1 * &p2_p_1 * &p2_1 * IntPoly::p_pow(4 * m_us + 2);
        let linear = IntPoly::monomial(2 * mm + 3, 3) - IntPoly::constant(2 * mm + 1);
        let second = linear
            * IntPoly::from_i64s(&[0, 1, 0, 1])
            * (&p_1 * &p_1 * &p_1)
            * IntPoly::p_pow(3 * m_us);
        let third = IntPoly::from_i64s(&[-1 - 4 * mm, 1 - 4 * mm, 6, 9 + 4 * mm, 7 + 4 * mm]);
        let numerator = first - second - third;

        let den = {
            let a = IntPoly::p_pow_minus_one(2);
            let b = IntPoly::p_pow_minus_one(3);
            &a * &a * &b * &b
        };
        numerator
            .exact_div(&den)
            .map_err(|source| ClosedFormError::FormulaBug {
                case: case(Theorem::Rank4Mmmm, 1),
                source,
            })
    }

    /// `Π_{i=2}^{k} (p^{b+i-1} - 1)/(p^{i-1} - 1)` for `b <= a_1`, and the
    /// same product at `m - b` for `b >= m - a_1`.
    pub fn anyrank_case1(&self, t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
        let Some(a1) = t.smallest() else {
            return Ok(FormulaResult::Uncovered);
        };
        if !t.contains_exponent(b) {
            return Ok(FormulaResult::Uncovered);
        }
        let m = signed(t.weight());
        let (x, n) = if b <= signed(a1) {
            (b, 1)
        } else if b >= m - signed(a1) {
            (m - b, 2)
        } else {
            return Ok(FormulaResult::Uncovered);
        };
        let id = case(Theorem::AnyRank, n);
        let x = x as usize;
        let mut value = IntPoly::one();
        for i in 2..=t.rank() {
            value = value * IntPoly::p_pow_minus_one(x + i - 1);
            if let Some(pert) = self.perturbation.filter(|p| p.case == id && p.term + 2 == i) {
                value += &IntPoly::constant(pert.delta);
            }
            value = value
                .exact_div(&IntPoly::p_pow_minus_one(i - 1))
                .map_err(|source| ClosedFormError::FormulaBug { case: id, source })?;
        }
        Ok(FormulaResult::Covered { value, case: id })
    }

    /// The catalog's preferred formula for a query, in this order:
    /// the rank-specific theorem, then the any-rank product formula.
    pub fn best(&self, t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
        let specific = match t.rank() {
            2 => self.rank2(t, b)?,
            3 => self.rank3(t, b)?,
            4 if t.parts().iter().all(|&x| x == t.parts()[0]) => self.rank4_mmmm_b(t.parts()[0], b)?,
            4 => self.rank4_partial(t, b)?,
            _ => FormulaResult::Uncovered,
        };
        if specific.is_covered() {
            return Ok(specific);
        }
        self.anyrank_case1(t, b)
    }
}

fn rank4_interval1_numerator(b: i64) -> Numerator {
    Numerator::new(&[
        (1, 3 * b + 6),
        (-1, 2 * b + 5),
        (-1, 2 * b + 4),
        (-1, 2 * b + 3),
        (1, b + 3),
        (1, b + 2),
        (1, b + 1),
        (-1, 0),
    ])
}

/// Rank-3 case intervals, re-exported for callers that only hold a catalog.
pub fn rank3_interval_contains(t: &GroupType, b: i64, n: u8) -> Result<bool, ClosedFormError> {
    Ok(rank3_case_contains(t, b, n)?)
}

fn standard() -> ClosedForms {
    ClosedForms::default()
}

pub fn rank2(t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().rank2(t, b)
}

pub fn rank3(t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().rank3(t, b)
}

pub fn rank3_mmm(m: u32, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().rank3_mmm(m, b)
}

pub fn rank4_partial(t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().rank4_partial(t, b)
}

pub fn rank4_mmmm_b(m: u32, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().rank4_mmmm_b(m, b)
}

pub fn rank4_mmmm_total(m: u32) -> Result<IntPoly, ClosedFormError> {
    standard().rank4_mmmm_total(m)
}

pub fn anyrank_case1(t: &GroupType, b: i64) -> Result<FormulaResult, ClosedFormError> {
    standard().anyrank_case1(t, b)
}
