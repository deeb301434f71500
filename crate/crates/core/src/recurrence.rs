//! Reference counts for any rank from the two subgroup-count recurrences.
//!
//! * [`count_hironaka`] peels the largest part:
//!   `N_b(λ) = Σ_{i=0}^{b} p^i N_i(λ') - Σ_{i=|λ|+1-b}^{|λ'|} p^i N_i(λ')`,
//!   where `λ'` drops the largest part. The subtracted range is empty
//!   whenever `b <= a_d`, which handles the "only when `b > a_d`" condition.
//! * [`count_stehling`] works in descending orientation:
//!   `N_α(r) = N_α~(r-1) + p^r N_α^(r)`, where `α^` drops the first part and
//!   `α~` lowers the last entry of the leading run of maximal parts by one.
//!
//! Both return the zero polynomial for `b` outside `[0, m]`. Results are
//! memoized per thread; a memo entry is written once and never changed.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::group::GroupType;
use crate::poly::IntPoly;

/// Memoized `(type, b) -> count` entries.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: HashMap<(GroupType, i64), IntPoly>,
}

impl MemoTable {
    pub fn get(&self, t: &GroupType, b: i64) -> Option<&IntPoly> {
        self.entries.get(&(t.clone(), b))
    }

    /// Inserts unless present; an existing entry is kept as is.
    pub fn insert(&mut self, t: GroupType, b: i64, value: IntPoly) -> &IntPoly {
        self.entries.entry((t, b)).or_insert(value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Owns the memo tables for both recurrences.
#[derive(Debug, Default)]
pub struct Recurrence {
    hironaka: MemoTable,
    stehling: MemoTable,
}

impl Recurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn hironaka(&mut self, t: &GroupType, b: i64) -> IntPoly {
        if !t.contains_exponent(b) {
            return IntPoly::zero();
        }
        match t.rank() {
            0 => return IntPoly::one(),
            // b is already known to lie in [0, a_1]
            1 => return IntPoly::one(),
            _ => {}
        }
        if let Some(hit) = self.hironaka.get(t, b) {
            return hit.clone();
        }
        let sub = t.without_largest();
        let weight = i64::from(t.weight());
        let sub_weight = i64::from(sub.weight());

        let mut value = IntPoly::zero();
        for i in 0..=b.min(sub_weight) {
            value += &self.hironaka(&sub, i).shift(i as usize);
        }
        for i in (weight + 1 - b).max(0)..=sub_weight {
            value -= &self.hironaka(&sub, i).shift(i as usize);
        }
        self.hironaka.insert(t.clone(), b, value).clone()
    }

    pub fn stehling(&mut self, t: &GroupType, b: i64) -> IntPoly {
        if !t.contains_exponent(b) {
            return IntPoly::zero();
        }
        if t.is_trivial() {
            return IntPoly::one();
        }
        if let Some(hit) = self.stehling.get(t, b) {
            return hit.clone();
        }
        let alpha = t.descending();
        let run = alpha.iter().take_while(|&&x| x == alpha[0]).count();
        let mut tilde = alpha.clone();
        tilde[run - 1] -= 1;
        let tilde = GroupType::from_parts(&tilde);
        let hat = GroupType::from_parts(&alpha[1..]);

        let mut value = self.stehling(&tilde, b - 1);
        value += &self.stehling(&hat, b).shift(b as usize);
        self.stehling.insert(t.clone(), b, value).clone()
    }

    pub fn total(&mut self, t: &GroupType) -> IntPoly {
        (0..=i64::from(t.weight()))
            .map(|b| self.hironaka(t, b))
            .sum()
    }
}

thread_local! {
    static SHARED: RefCell<Recurrence> = RefCell::new(Recurrence::new());
}

/// `h_b(λ)` via the largest-part recurrence.
pub fn count_hironaka(t: &GroupType, b: i64) -> IntPoly {
    SHARED.with(|r| r.borrow_mut().hironaka(t, b))
}

/// `h_b(λ)` via the descending-type recurrence.
pub fn count_stehling(t: &GroupType, b: i64) -> IntPoly {
    SHARED.with(|r| r.borrow_mut().stehling(t, b))
}

/// `N(λ) = Σ_b h_b(λ)`, the total number of subgroups.
pub fn total_count(t: &GroupType) -> IntPoly {
    SHARED.with(|r| r.borrow_mut().total(t))
}
