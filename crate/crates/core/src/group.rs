//! Abelian p-group types and the interval classification of `(type, b)`
//! queries.
//!
//! A [`GroupType`] stores its parts ascending (`a_1 <= ... <= a_d`). The
//! descending orientation used by the generating-function code is produced
//! on demand by [`GroupType::descending`]; display also uses it, so
//! `Z/p x Z/p^2 x Z/p^3` prints as `(3,2,1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("negative part {0} in group type")]
    NegativePart(i64),
    #[error("invalid type literal {0:?}: expected comma-separated integers")]
    BadLiteral(String),
    #[error("expected a rank-{expected} type, got rank {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("order exponent {b} outside [0, {weight}]")]
    OutOfRange { b: i64, weight: u32 },
    #[error("case {case} is not a case of the {theorem} theorem")]
    InvalidCase { theorem: Theorem, case: u8 },
}

/// Type `λ` of `Z/p^{a_1} x ... x Z/p^{a_d}`, parts ascending and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct GroupType {
    parts: Vec<u32>,
}

impl GroupType {
    /// Drops zero parts and sorts ascending.
    pub fn canonicalize(raw: &[i64]) -> Result<Self, GroupError> {
        let mut parts = Vec::with_capacity(raw.len());
        for &x in raw {
            if x < 0 {
                return Err(GroupError::NegativePart(x));
            }
            if x > 0 {
                parts.push(u32::try_from(x).map_err(|_| GroupError::BadLiteral(x.to_string()))?);
            }
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    /// Same normalization as [`canonicalize`](Self::canonicalize) for
    /// already-nonnegative input.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut parts: Vec<u32> = parts.iter().copied().filter(|&x| x > 0).collect();
        parts.sort_unstable();
        Self { parts }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `(m, m, ..., m)` with `rank` parts.
    pub fn homocyclic(m: u32, rank: usize) -> Self {
        Self::from_parts(&vec![m; rank])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn descending(&self) -> Vec<u32> {
        self.parts.iter().rev().copied().collect()
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    /// `m = a_1 + ... + a_d`; the group has order `p^m`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// `λ'`: the type with its largest part removed.
    pub fn without_largest(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.pop();
        Self { parts }
    }

    pub fn require_rank(&self, expected: usize) -> Result<(), GroupError> {
        if self.rank() == expected {
            Ok(())
        } else {
            Err(GroupError::RankMismatch {
                expected,
                found: self.rank(),
            })
        }
    }

    pub fn contains_exponent(&self, b: i64) -> bool {
        (0..=i64::from(self.weight())).contains(&b)
    }

    /// Every canonical type of rank `1..=max_rank` with parts `<= max_part`.
    pub fn enumerate(max_rank: usize, max_part: u32) -> Vec<GroupType> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            out.extend(Self::enumerate_rank(rank, max_part));
        }
        out
    }

    /// Every canonical type of exactly `rank` parts, each `<= max_part`.
    pub fn enumerate_rank(rank: usize, max_part: u32) -> Vec<GroupType> {
        fn go(rank: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<GroupType>) {
            if cur.len() == rank {
                out.push(GroupType { parts: cur.clone() });
                return;
            }
            for x in lo..=hi {
                cur.push(x);
                go(rank, x, hi, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rank, 1, max_part, &mut Vec::new(), &mut out);
        out
    }

    /// Every nontrivial type of weight at most `max_weight` (all partitions).
    pub fn enumerate_by_weight(max_weight: u32) -> Vec<GroupType> {
        fn go(remaining: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<GroupType>) {
            if !cur.is_empty() {
                out.push(GroupType { parts: cur.clone() });
            }
            for x in lo..=remaining {
                cur.push(x);
                go(remaining - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(max_weight, 1, &mut Vec::new(), &mut out);
        out.sort_by_key(|t| (t.weight(), t.descending()));
        out
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Parses the CLI literal: comma-separated integers in any order.
impl FromStr for GroupType {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let raw = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::BadLiteral(s.to_string()))?;
        Self::canonicalize(&raw)
    }
}

/// A request for `h_b` of a group type. `b` outside `[0, m]` is allowed and
/// always counts zero subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountQuery {
    pub group_type: GroupType,
    pub b: i64,
}

impl CountQuery {
    pub fn new(group_type: GroupType, b: i64) -> Self {
        Self { group_type, b }
    }

    pub fn in_range(&self) -> bool {
        self.group_type.contains_exponent(self.b)
    }
}

/// Which closed-form theorem a [`CaseId`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    #[serde(rename = "rank2")]
    Rank2,
    #[serde(rename = "rank3")]
    Rank3,
    #[serde(rename = "rank3-mmm")]
    Rank3Mmm,
    #[serde(rename = "rank4-partial")]
    Rank4Partial,
    #[serde(rename = "rank4-mmmm")]
    Rank4Mmmm,
    /// Product formula valid for any rank when `b <= a_1` (case 1) or
    /// `b >= m - a_1` (case 2, the reflection).
    #[serde(rename = "anyrank")]
    AnyRank,
}

impl Theorem {
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Rank2 => "rank2",
            Theorem::Rank3 => "rank3",
            Theorem::Rank3Mmm => "rank3-mmm",
            Theorem::Rank4Partial => "rank4-partial",
            Theorem::Rank4Mmmm => "rank4-mmmm",
            Theorem::AnyRank => "anyrank",
        }
    }

    pub fn case_count(self) -> u8 {
        match self {
            Theorem::Rank2 | Theorem::Rank3Mmm | Theorem::Rank4Partial => 3,
            Theorem::Rank3 => 10,
            Theorem::Rank4Mmmm => 4,
            Theorem::AnyRank => 2,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseId {
    theorem: Theorem,
    case: u8,
}

impl CaseId {
    pub fn new(theorem: Theorem, case: u8) -> Result<Self, GroupError> {
        if (1..=theorem.case_count()).contains(&case) {
            Ok(Self { theorem, case })
        } else {
            Err(GroupError::InvalidCase { theorem, case })
        }
    }

    /// For case numbers known valid at compile time.
    pub(crate) const fn known(theorem: Theorem, case: u8) -> Self {
        Self { theorem, case }
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    pub fn case(&self) -> u8 {
        self.case
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Case {}", self.theorem, self.case)
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn rank3_parts(t: &GroupType) -> Result<(i64, i64, i64), GroupError> {
    t.require_rank(3)?;
    let p = t.parts();
    Ok((i64::from(p[0]), i64::from(p[1]), i64::from(p[2])))
}

/// Whether `b` lies in the interval of rank-3 case `case` for type `t`.
///
/// The intervals are taken as stated, with one amendment: case 8 also
/// admits `a_3 = a_1 + a_2`. With both case 7 and case 8 strict, the
/// range `a_1 + a_2 < b < a_1 + a_3` would belong to no case when
/// `a_3 = a_1 + a_2` (e.g. type `(4,2,2)`, `b = 5`).
pub fn rank3_case_contains(t: &GroupType, b: i64, case: u8) -> Result<bool, GroupError> {
    let (a1, a2, a3) = rank3_parts(t)?;
    let m = a1 + a2 + a3;
    let inside = match case {
        1 => 0 <= b && b <= a1,
        2 => a1 <= b && b <= a2,
        3 => a2 < b && b <= a3 && a3 <= a1 + a2,
        4 => a2 < b && b <= a1 + a2 && a1 + a2 <= a3,
        5 => a1 + a2 <= b && b <= a3,
        6 => a3 < b && b <= a1 + a2,
        7 => a1 + a2 < a3 && a3 < b && b <= a1 + a3,
        8 => a3 <= a1 + a2 && a1 + a2 < b && b <= a1 + a3,
        9 => a1 + a3 <= b && b <= a2 + a3,
        10 => a2 + a3 <= b && b <= m,
        _ => {
            return Err(GroupError::InvalidCase {
                theorem: Theorem::Rank3,
                case,
            })
        }
    };
    Ok(inside)
}

/// All rank-3 cases whose interval contains `b`, ascending.
pub fn rank3_cases_containing(t: &GroupType, b: i64) -> Result<Vec<u8>, GroupError> {
    let mut cases = Vec::new();
    for case in 1..=10 {
        if rank3_case_contains(t, b, case)? {
            cases.push(case);
        }
    }
    Ok(cases)
}

/// The lowest-numbered rank-3 case containing `b`.
pub fn classify_rank3(t: &GroupType, b: i64) -> Result<CaseId, GroupError> {
    t.require_rank(3)?;
    if !t.contains_exponent(b) {
        return Err(GroupError::OutOfRange {
            b,
            weight: t.weight(),
        });
    }
    let cases = rank3_cases_containing(t, b)?;
    let case = *cases
        .first()
        .expect("rank-3 intervals cover [0, m]");
    Ok(CaseId::known(Theorem::Rank3, case))
}

/// `m - b`: the order exponent with the same subgroup count.
pub fn symmetry_partner(t: &GroupType, b: i64) -> Result<i64, GroupError> {
    if !t.contains_exponent(b) {
        return Err(GroupError::OutOfRange {
            b,
            weight: t.weight(),
        });
    }
    Ok(i64::from(t.weight()) - b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(parts: &[u32]) -> GroupType {
        GroupType::from_parts(parts)
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(GroupType::canonicalize(&[3, 1, 2]).unwrap().parts(), &[1, 2, 3]);
        assert_eq!(GroupType::canonicalize(&[0, 2, 0, 1]).unwrap().parts(), &[1, 2]);
        assert_eq!(GroupType::canonicalize(&[-1, 2]), Err(GroupError::NegativePart(-1)));
        assert!(GroupType::canonicalize(&[0, 0]).unwrap().is_trivial());
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("3,1,2".parse::<GroupType>().unwrap(), ty(&[1, 2, 3]));
        assert_eq!(" 2 , 2 ".parse::<GroupType>().unwrap(), ty(&[2, 2]));
        assert!("1,x".parse::<GroupType>().is_err());
        assert!("1,-2".parse::<GroupType>().is_err());
        assert_eq!("".parse::<GroupType>().unwrap(), GroupType::trivial());
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(ty(&[1, 2, 3]).to_string(), "(3,2,1)");
        assert_eq!(GroupType::trivial().to_string(), "()");
        assert_eq!(ty(&[1, 2, 3]).descending(), vec![3, 2, 1]);
    }

    #[test]
    fn classify_examples() {
        let t = ty(&[1, 2, 3]);
        assert_eq!(classify_rank3(&t, 0).unwrap(), CaseId::known(Theorem::Rank3, 1));
        assert_eq!(classify_rank3(&t, 3).unwrap(), CaseId::known(Theorem::Rank3, 3));
        assert_eq!(
            classify_rank3(&ty(&[1, 1, 1]), 2).unwrap(),
            CaseId::known(Theorem::Rank3, 6)
        );
        assert_eq!(
            classify_rank3(&ty(&[1, 2]), 1),
            Err(GroupError::RankMismatch { expected: 3, found: 2 })
        );
        assert!(classify_rank3(&t, 7).is_err());
    }

    #[test]
    fn classify_covers_the_case_8_gap() {
        // a_3 = a_1 + a_2 and a_1 + a_2 < b < a_1 + a_3
        assert_eq!(
            classify_rank3(&ty(&[2, 2, 4]), 5).unwrap(),
            CaseId::known(Theorem::Rank3, 8)
        );
    }

    #[test]
    fn classify_is_total() {
        for t in GroupType::enumerate_rank(3, 6) {
            for b in 0..=i64::from(t.weight()) {
                assert!(classify_rank3(&t, b).is_ok(), "{t} b={b}");
            }
        }
    }

    #[test]
    fn symmetry_partner_examples() {
        assert_eq!(symmetry_partner(&ty(&[1, 2, 3]), 0), Ok(6));
        assert_eq!(symmetry_partner(&ty(&[1, 2, 3]), 3), Ok(3));
        assert_eq!(symmetry_partner(&ty(&[2, 2]), 1), Ok(3));
        assert!(symmetry_partner(&ty(&[2, 2]), 5).is_err());
        let t = ty(&[1, 3, 4]);
        for b in 0..=8 {
            let s = symmetry_partner(&t, b).unwrap();
            assert_eq!(symmetry_partner(&t, s), Ok(b));
        }
    }

    #[test]
    fn case_ids_validate_range() {
        assert!(CaseId::new(Theorem::Rank3, 10).is_ok());
        assert!(CaseId::new(Theorem::Rank3, 11).is_err());
        assert!(CaseId::new(Theorem::Rank2, 0).is_err());
        assert!(CaseId::new(Theorem::Rank4Mmmm, 4).is_ok());
        assert_eq!(CaseId::new(Theorem::Rank3Mmm, 2).unwrap().to_string(), "rank3-mmm Case 2");
    }

    #[test]
    fn enumeration_counts() {
        // multisets of size 3 from {1..5}
        assert_eq!(GroupType::enumerate_rank(3, 5).len(), 35);
        // partitions of 1..=10
        let all = GroupType::enumerate_by_weight(10);
        assert_eq!(all.len(), 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22 + 30 + 42);
        assert!(all.windows(2).all(|w| w[0].weight() <= w[1].weight()));
    }
}
