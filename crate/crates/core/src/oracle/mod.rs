//! Ground truth that shares no code with the recurrences or the formulas:
//! enumeration of the actual subgroups of a concrete group, enumeration of
//! the upper-triangular matrices that parametrize them, and Gaussian
//! binomials for elementary abelian groups.

mod census;
mod qbinomial;
mod star;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::group::GroupType;

pub use census::{subgroup_census, subgroup_census_until};
pub use qbinomial::gaussian_binomial;
pub use star::{star_matrix_census, MAX_STAR_RANK};

/// Default cap on the group order `p^m` for a census.
pub const DEFAULT_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group {group_type} at p = {prime} has more than {limit} elements")]
    GroupTooLarge {
        group_type: GroupType,
        prime: u64,
        limit: u64,
    },
    #[error("matrix census supports rank at most {max}, got {rank}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("q-binomial ({d} choose {b}) needs b <= d")]
    BinomialOutOfRange { d: u32, b: u32 },
    #[error("census of {group_type} at p = {prime} stopped at the deadline after {visited} subgroups")]
    Interrupted {
        group_type: GroupType,
        prime: u64,
        visited: u64,
    },
}

/// Subgroup counts of one concrete group, indexed by order exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub prime: u64,
    #[serde(rename = "type")]
    pub group_type: GroupType,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl CensusResult {
    fn from_counts(prime: u64, group_type: GroupType, counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self {
            prime,
            group_type,
            counts,
            total,
        }
    }

    /// `counts[b] == counts[m - b]` for every `b`.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `p^m` if it is at most `limit`.
fn group_order(t: &GroupType, prime: u64, limit: u64) -> Result<u64, OracleError> {
    if !is_prime(prime) {
        return Err(OracleError::NotPrime(prime));
    }
    prime
        .checked_pow(t.weight())
        .filter(|&n| n <= limit)
        .ok_or_else(|| OracleError::GroupTooLarge {
            group_type: t.clone(),
            prime,
            limit,
        })
}

fn deadline_passed(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn census_json_shape() {
        let c = subgroup_census(&GroupType::from_parts(&[1, 1]), 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"prime":2,"type":[1,1],"counts":[1,3,1],"total":5}"#
        );
    }
}
