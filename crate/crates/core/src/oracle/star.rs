//! Subgroups as upper-triangular integer matrices.
//!
//! A subgroup of `Z/p^{a_1} x ... x Z/p^{a_k}` corresponds to exactly one
//! matrix `A = (a_ij)` with
//!
//! 1. `a_ij = 0` for `i > j`,
//! 2. `0 <= a_ij < a_jj` for `i < j`,
//! 3. for each column `k`, `a_kk` divides
//!    `p^{a_k}`, `p^{a_{k-1}} a_{k-1,k} / a_{k-1,k-1}`, ...,
//!    `p^{a_j} det(A[j..k-1, j+1..k]) / (a_jj ... a_{k-1,k-1})`, ...,
//!    down to `j = 1`.
//!
//! Divisibility forces every `a_jj` to be a power `p^{i_j}` with
//! `i_j <= a_j`, so the quotients in 3 are `p`-adic numbers and "divides"
//! means a valuation bound; zero entries impose nothing. The subgroup has
//! order `p^{m - Σ i_j}`.

use crate::group::GroupType;

use super::{group_order, CensusResult, OracleError};

/// The divisibility conditions are spelled out only up to this rank.
pub const MAX_STAR_RANK: usize = 4;

type Matrix = [[i128; MAX_STAR_RANK]; MAX_STAR_RANK];

fn det(m: &Matrix, rows: &[usize], cols: &[usize]) -> i128 {
    match rows.len() {
        0 => 1,
        1 => m[rows[0]][cols[0]],
        _ => {
            let mut acc = 0;
            let mut sign = 1;
            for (c, &col) in cols.iter().enumerate() {
                let entry = m[rows[0]][col];
                if entry != 0 {
                    let minor_cols: Vec<usize> =
                        cols.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &x)| x).collect();
                    acc += sign * entry * det(m, &rows[1..], &minor_cols);
                }
                sign = -sign;
            }
            acc
        }
    }
}

fn valuation(mut x: i128, p: i128) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

struct StarSearch {
    prime: i128,
    parts: Vec<u32>,
    diag: [u32; MAX_STAR_RANK],
    matrix: Matrix,
    counts: Vec<u64>,
}

impl StarSearch {
    /// Condition 3 for column `k` (0-based), all earlier columns fixed.
    fn column_ok(&self, k: usize) -> bool {
        let ik = self.diag[k];
        for j in 0..k {
            let rows: Vec<usize> = (j..k).collect();
            let cols: Vec<usize> = (j + 1..=k).collect();
            let d = det(&self.matrix, &rows, &cols);
            if d == 0 {
                continue;
            }
            let numerator = self.parts[j] + valuation(d, self.prime);
            let denominator: u32 = self.diag[j..k].iter().sum();
            if i64::from(numerator) - i64::from(denominator) < i64::from(ik) {
                return false;
            }
        }
        true
    }

    fn column(&mut self, k: usize) {
        if k == self.parts.len() {
            let index: u32 = self.diag[..k].iter().sum();
            let m = self.counts.len() - 1;
            self.counts[m - index as usize] += 1;
            return;
        }
        for i in 0..=self.parts[k] {
            self.diag[k] = i;
            let d = self.prime.pow(i);
            self.matrix[k][k] = d;
            self.offdiagonal(k, 0, d);
        }
    }

    fn offdiagonal(&mut self, k: usize, row: usize, bound: i128) {
        if row == k {
            if self.column_ok(k) {
                self.column(k + 1);
            }
            return;
        }
        for v in 0..bound {
            self.matrix[row][k] = v;
            self.offdiagonal(k, row + 1, bound);
        }
        self.matrix[row][k] = 0;
    }
}

/// Counts solutions of the matrix conditions by subgroup order exponent.
pub fn star_matrix_census(t: &GroupType, prime: u64, limit: u64) -> Result<CensusResult, OracleError> {
    if t.rank() > MAX_STAR_RANK {
        return Err(OracleError::RankTooLarge {
            rank: t.rank(),
            max: MAX_STAR_RANK,
        });
    }
    group_order(t, prime, limit)?;
    let mut search = StarSearch {
        prime: i128::from(prime),
        parts: t.parts().to_vec(),
        diag: [0; MAX_STAR_RANK],
        matrix: [[0; MAX_STAR_RANK]; MAX_STAR_RANK],
        counts: vec![0; t.weight() as usize + 1],
    };
    search.column(0);
    Ok(CensusResult::from_counts(prime, t.clone(), search.counts))
}
