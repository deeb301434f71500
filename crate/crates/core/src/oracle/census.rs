//! Subgroup enumeration by closure.
//!
//! Elements of `Z/p^{a_1} x ... x Z/p^{a_d}` are indexed in mixed radix.
//! Every subgroup `H` has a canonical generating sequence
//! `g_{i+1} = min(H \ <g_1, ..., g_i>)`, which is strictly increasing. The
//! search extends a subgroup `K` (reached through last generator `g_last`)
//! by an element `g > g_last` and keeps `<K, g>` only when
//! `g = min(<K, g> \ K)`, i.e. when `(K, g)` is a prefix of the canonical
//! sequence of `<K, g>`. Each subgroup is therefore produced exactly once
//! and no set of seen subgroups has to be kept.

use std::time::Instant;

use crate::group::GroupType;

use super::{deadline_passed, group_order, CensusResult, OracleError};

/// Above this order the addition table would need more than 32 MiB.
const TABLE_LIMIT: usize = 4096;
const DEADLINE_STRIDE: u64 = 1 << 14;

struct Group {
    n: usize,
    moduli: Vec<u32>,
    table: Option<Vec<u16>>,
}

impl Group {
    fn new(t: &GroupType, prime: u64, n: usize) -> Self {
        let moduli: Vec<u32> = t.parts().iter().map(|&a| prime.pow(a) as u32).collect();
        let mut g = Group {
            n,
            moduli,
            table: None,
        };
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    table.push(g.add_digits(x, y) as u16);
                }
            }
            g.table = Some(table);
        }
        g
    }

    fn add_digits(&self, mut x: u32, mut y: u32) -> u32 {
        let mut out = 0;
        let mut stride = 1;
        for &m in &self.moduli {
            let s = (x % m + y % m) % m;
            out += s * stride;
            stride *= m;
            x /= m;
            y /= m;
        }
        out
    }

    #[inline]
    fn add(&self, x: u32, y: u32) -> u32 {
        match &self.table {
            Some(t) => u32::from(t[x as usize * self.n + y as usize]),
            None => self.add_digits(x, y),
        }
    }
}

#[derive(Default)]
struct Level {
    members: Vec<u32>,
    coset_min: Vec<u32>,
}

struct Search<'a> {
    group: &'a Group,
    prime: u32,
    levels: Vec<Level>,
    counts: Vec<u64>,
    visited: u64,
    deadline: Option<Instant>,
    interrupted: bool,
}

impl Search<'_> {
    /// Counts every proper extension of the subgroup stored at `depth`.
    fn extend(&mut self, depth: usize, g_last: u32, exponent: usize) {
        let mut level = std::mem::take(&mut self.levels[depth]);
        let mut child = std::mem::take(&mut self.levels[depth + 1]);
        let n = self.group.n;

        // coset_min[x] = min(x + K); K itself is the coset with minimum 0.
        level.coset_min.clear();
        level.coset_min.resize(n, u32::MAX);
        for x in 0..n as u32 {
            if level.coset_min[x as usize] == u32::MAX {
                for &k in &level.members {
                    level.coset_min[self.group.add(x, k) as usize] = x;
                }
            }
        }

        for g in g_last + 1..n as u32 {
            if self.interrupted {
                break;
            }
            if level.coset_min[g as usize] != g {
                continue;
            }
            // Walk the multiples of g modulo K; g must stay the smallest
            // element outside K.
            let mut cosets = 1u32;
            let mut y = g;
            let mut canonical = true;
            while level.coset_min[y as usize] != 0 {
                if level.coset_min[y as usize] < g {
                    canonical = false;
                    break;
                }
                cosets += 1;
                y = self.group.add(y, g);
            }
            if !canonical {
                continue;
            }

            child.members.clear();
            let mut r = 0u32;
            for _ in 0..cosets {
                child.members.extend(level.members.iter().map(|&k| self.group.add(r, k)));
                r = self.group.add(r, g);
            }
            let child_exponent = exponent + cosets.ilog(self.prime) as usize;
            self.counts[child_exponent] += 1;
            self.visited += 1;
            if self.visited.is_multiple_of(DEADLINE_STRIDE) && deadline_passed(self.deadline) {
                self.interrupted = true;
                break;
            }

            self.levels[depth + 1] = child;
            self.extend(depth + 1, g, child_exponent);
            child = std::mem::take(&mut self.levels[depth + 1]);
        }

        self.levels[depth] = level;
        self.levels[depth + 1] = child;
    }
}

/// Counts the subgroups of the group of type `t` at `prime`, bucketed by
/// order exponent. Fails if `prime^m > limit`.
pub fn subgroup_census(t: &GroupType, prime: u64, limit: u64) -> Result<CensusResult, OracleError> {
    run(t, prime, limit, None)
}

/// As [`subgroup_census`], giving up with [`OracleError::Interrupted`] once
/// `deadline` has passed.
pub fn subgroup_census_until(
    t: &GroupType,
    prime: u64,
    limit: u64,
    deadline: Instant,
) -> Result<CensusResult, OracleError> {
    run(t, prime, limit, Some(deadline))
}

fn run(t: &GroupType, prime: u64, limit: u64, deadline: Option<Instant>) -> Result<CensusResult, OracleError> {
    let n = group_order(t, prime, limit)?;
    let m = t.weight() as usize;
    let group = Group::new(t, prime, n as usize);
    let mut search = Search {
        group: &group,
        prime: prime as u32,
        levels: (0..m + 2).map(|_| Level::default()).collect(),
        counts: vec![0; m + 1],
        visited: 1,
        deadline,
        interrupted: false,
    };
    search.counts[0] = 1;
    search.levels[0].members.push(0);
    if m > 0 {
        search.extend(0, 0, 0);
    }
    if search.interrupted {
        return Err(OracleError::Interrupted {
            group_type: t.clone(),
            prime,
            visited: search.visited,
        });
    }
    Ok(CensusResult::from_counts(prime, t.clone(), search.counts))
}
