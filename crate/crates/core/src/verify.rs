//! The cross-check suite behind `pgroup verify`.
//!
//! Each check compares two independent computations over a bounded family
//! of group types and records the first counterexample it meets. Checks
//! run in a fixed order and the report lists them sorted by name.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::closed_forms::{leading_term_ccl, rank4_total_ccl, ClosedFormError, ClosedForms, FormulaResult};
use crate::genfun::{verify_f2, verify_g_product, verify_sub_series, Monomial};
use crate::group::{rank3_cases_containing, CaseId, GroupType, Theorem};
use crate::oracle::{gaussian_binomial, star_matrix_census, subgroup_census, OracleError, MAX_STAR_RANK};
use crate::poly::IntPoly;
use crate::recurrence::{count_hironaka, count_stehling, total_count};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_rank: usize,
    pub max_part: u32,
    pub primes: Vec<u64>,
    pub oracle_limit: u64,
    pub m_max: u32,
    pub chain_max: u32,
    pub genfun_bounds: Monomial,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_rank: 4,
            max_part: 3,
            primes: vec![2, 3],
            oracle_limit: crate::oracle::DEFAULT_LIMIT,
            m_max: 4,
            chain_max: 3,
            genfun_bounds: [6, 6, 6],
        }
    }
}

impl VerifyConfig {
    fn types(&self) -> Vec<GroupType> {
        GroupType::enumerate(self.max_rank, self.max_part)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub family: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of failed checks with their counterexamples.
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("no counterexample")))
            .collect()
    }
}

/// Accumulates one check's outcome.
struct Tally {
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.record(false, || message);
    }

    fn finish(self, name: &'static str, family: String, detail: Option<String>, started: Instant) -> CheckRecord {
        CheckRecord {
            name,
            family,
            passed: self.counterexample.is_none(),
            checked: self.checked,
            counterexample: self.counterexample,
            detail,
            elapsed: started.elapsed(),
        }
    }
}

fn describe_error(t: &GroupType, b: i64, e: &ClosedFormError) -> String {
    format!("{t} b={b}: {e}")
}

type Covering = Vec<(CaseId, Result<IntPoly, ClosedFormError>)>;

fn push_result(out: &mut Covering, r: Result<FormulaResult, ClosedFormError>, fallback: (Theorem, u8)) {
    match r {
        Ok(FormulaResult::Covered { value, case }) => out.push((case, Ok(value))),
        Ok(FormulaResult::Uncovered) => {}
        Err(e) => {
            let case = e
                .case()
                .unwrap_or_else(|| CaseId::new(fallback.0, fallback.1).expect("valid case"));
            out.push((case, Err(e)));
        }
    }
}

fn is_homocyclic(t: &GroupType) -> bool {
    t.parts().windows(2).all(|w| w[0] == w[1])
}

/// Every formula whose interval contains `b`, with its case.
fn covering_formulas(catalog: &ClosedForms, t: &GroupType, b: i64) -> Covering {
    let mut out = Vec::new();
    match t.rank() {
        2 => push_result(&mut out, catalog.rank2(t, b), (Theorem::Rank2, 1)),
        3 => {
            for case in rank3_cases_containing(t, b).unwrap_or_default() {
                let id = CaseId::new(Theorem::Rank3, case).expect("valid case");
                match catalog.rank3_case(t, b, case) {
                    Ok(v) => out.push((id, Ok(v))),
                    Err(e) => out.push((e.case().unwrap_or(id), Err(e))),
                }
            }
            if is_homocyclic(t) {
                push_result(&mut out, catalog.rank3_mmm(t.parts()[0], b), (Theorem::Rank3Mmm, 1));
            }
        }
        4 => {
            push_result(&mut out, catalog.rank4_partial(t, b), (Theorem::Rank4Partial, 1));
            if is_homocyclic(t) {
                push_result(&mut out, catalog.rank4_mmmm_b(t.parts()[0], b), (Theorem::Rank4Mmmm, 1));
            }
        }
        _ => {}
    }
    push_result(&mut out, catalog.anyrank_case1(t, b), (Theorem::AnyRank, 1));
    out
}

fn closed_vs_recurrence(config: &VerifyConfig, catalog: &ClosedForms) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    let mut reached: BTreeSet<CaseId> = BTreeSet::new();
    for t in config.types() {
        for b in 0..=i64::from(t.weight()) {
            let expected = count_hironaka(&t, b);
            for (case, value) in covering_formulas(catalog, &t, b) {
                reached.insert(case);
                match value {
                    Ok(v) => tally.record(v == expected, || format!("{t} b={b} {case}: got {v}, expected {expected}")),
                    Err(e) => tally.fail(describe_error(&t, b, &e)),
                }
            }
        }
    }
    let rank3: Vec<String> = reached
        .iter()
        .filter(|c| c.theorem() == Theorem::Rank3)
        .map(|c| c.case().to_string())
        .collect();
    let detail = format!("{} cases reached; rank3 cases {}", reached.len(), rank3.join(","));
    tally.finish(
        "closed-vs-recurrence",
        format!("rank <= {}, parts <= {}, all b", config.max_rank, config.max_part),
        Some(detail),
        started,
    )
}

fn recurrence_vs_recurrence(config: &VerifyConfig) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    for t in config.types() {
        for b in 0..=i64::from(t.weight()) {
            let (h, s) = (count_hironaka(&t, b), count_stehling(&t, b));
            tally.record(h == s, || format!("{t} b={b}: {h} vs {s}"));
        }
    }
    tally.finish(
        "recurrence-vs-recurrence",
        format!("rank <= {}, parts <= {}, all b", config.max_rank, config.max_part),
        None,
        started,
    )
}

fn birkhoff_symmetry(config: &VerifyConfig) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    for t in config.types() {
        let m = i64::from(t.weight());
        for b in 0..=m {
            let (lo, hi) = (count_hironaka(&t, b), count_hironaka(&t, m - b));
            tally.record(lo == hi, || format!("{t} b={b}: {lo} vs {hi}"));
        }
    }
    tally.finish(
        "birkhoff-symmetry",
        format!("rank <= {}, parts <= {}, all b", config.max_rank, config.max_part),
        None,
        started,
    )
}

fn boundary_agreement(config: &VerifyConfig, catalog: &ClosedForms) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    for t in GroupType::enumerate_rank(3, config.max_part) {
        for b in 0..=i64::from(t.weight()) {
            let cases = rank3_cases_containing(&t, b).unwrap_or_default();
            let Some((&first, rest)) = cases.split_first() else { continue };
            let reference = catalog.rank3_case(&t, b, first);
            for &other in rest {
                let value = catalog.rank3_case(&t, b, other);
                match (&reference, &value) {
                    (Ok(x), Ok(y)) => tally.record(x == y, || {
                        format!("{t} b={b}: rank3 Case {first} gives {x}, rank3 Case {other} gives {y}")
                    }),
                    (Err(e), _) | (_, Err(e)) => tally.fail(describe_error(&t, b, e)),
                }
            }
        }
    }
    tally.finish(
        "boundary-agreement",
        format!("rank 3, parts <= {}, b in two case intervals", config.max_part),
        None,
        started,
    )
}

fn census_counts_match(t: &GroupType, p: u64, counts: &[u64]) -> Option<String> {
    for (b, &count) in counts.iter().enumerate() {
        let value = count_hironaka(t, b as i64).eval_at_u64(p);
        if value != count.into() {
            return Some(format!("{t} p={p} b={b}: polynomial gives {value}, census {count}"));
        }
    }
    None
}

fn oracle_agreement(config: &VerifyConfig) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    let mut skipped = 0;
    for &p in &config.primes {
        for t in config.types() {
            let census = match subgroup_census(&t, p, config.oracle_limit) {
                Ok(c) => c,
                Err(OracleError::GroupTooLarge { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => {
                    tally.fail(e.to_string());
                    continue;
                }
            };
            let mismatch = census_counts_match(&t, p, &census.counts);
            tally.record(mismatch.is_none(), || mismatch.unwrap_or_default());
            if t.rank() <= MAX_STAR_RANK {
                match star_matrix_census(&t, p, config.oracle_limit) {
                    Ok(star) => tally.record(star.counts == census.counts, || {
                        format!("{t} p={p}: matrix census {:?}, closure census {:?}", star.counts, census.counts)
                    }),
                    Err(e) => tally.fail(e.to_string()),
                }
            }
        }
    }
    let primes: Vec<String> = config.primes.iter().map(u64::to_string).collect();
    tally.finish(
        "oracle-agreement",
        format!(
            "rank <= {}, parts <= {}, p in {{{}}}, order <= {}",
            config.max_rank,
            config.max_part,
            primes.join(","),
            config.oracle_limit
        ),
        Some(format!("{skipped} (type, prime) pairs above the order limit")),
        started,
    )
}

fn q_binomial(config: &VerifyConfig) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    for d in 1..=config.max_rank {
        let t = GroupType::homocyclic(1, d);
        for b in 0..=d as u32 {
            let q = gaussian_binomial(d as u32, b).expect("b <= d");
            let h = count_hironaka(&t, i64::from(b));
            tally.record(q == h, || format!("{t} b={b}: q-binomial {q}, recurrence {h}"));
        }
    }
    tally.finish(
        "q-binomial",
        format!("elementary abelian, rank <= {}", config.max_rank),
        None,
        started,
    )
}

fn genfun(config: &VerifyConfig, catalog: &ClosedForms) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    let bounds = config.genfun_bounds;
    let mut detail = None;
    match verify_f2(bounds) {
        Ok(c) => tally.record(c.passed(), || format!("F2 coefficient mismatch {:?}", c.mismatches.first())),
        Err(e) => tally.fail(e.to_string()),
    }
    match verify_g_product(bounds, catalog) {
        Ok(c) => tally.record(c.passed(), || format!("G-product coefficient mismatch {:?}", c.mismatches.first())),
        Err(e) => tally.fail(e.to_string()),
    }
    match verify_sub_series(bounds) {
        Ok(r) => {
            let validated: Vec<String> = r
                .validated()
                .iter()
                .map(|(d, o)| format!("{d} with {o}"))
                .collect();
            detail = Some(format!("sub-series readings validated: {}", validated.join(", ")));
            tally.record(r.passed(), || "no reading of the sub-series validates".to_string());
        }
        Err(e) => tally.fail(e.to_string()),
    }
    tally.finish(
        "genfun",
        format!("truncation {bounds:?}"),
        detail,
        started,
    )
}

/// Degree and leading coefficient of one `N(m,m,m,m)` computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomocyclicRow {
    pub m: u32,
    pub degree: usize,
    pub leading_coeff: i64,
    pub matches_recurrence: bool,
    pub value_at_2: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainRow {
    pub chain: [u32; 4],
    pub expected_leading: (u64, usize),
    pub observed_leading: (i64, usize),
    pub matches_recurrence: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TothReport {
    pub passed: bool,
    pub homocyclic: Vec<HomocyclicRow>,
    pub chains: Vec<ChainRow>,
}

fn leading(poly: &IntPoly) -> (i64, usize) {
    match (poly.leading_coeff(), poly.degree()) {
        (Ok(c), Ok(d)) => (c.to_i64().unwrap_or(i64::MAX), d),
        _ => (0, 0),
    }
}

/// Degree `4m` and leading coefficient `1` of `N(m,m,m,m)` for `m <= m_max`,
/// and the leading term of `N(w,x,y,z)` for chains with `z <= chain_max`.
pub fn toth_report(catalog: &ClosedForms, m_max: u32, chain_max: u32) -> TothReport {
    let mut homocyclic = Vec::new();
    for m in 1..=m_max {
        let recurrence = total_count(&GroupType::homocyclic(m, 4));
        let row = match catalog.rank4_mmmm_total(m) {
            Ok(closed) => {
                let (lc, degree) = leading(&closed);
                let matches_recurrence = closed == recurrence;
                let passed = matches_recurrence && degree == 4 * m as usize && lc == 1 && leading(&recurrence) == (1, degree);
                HomocyclicRow {
                    m,
                    degree,
                    leading_coeff: lc,
                    matches_recurrence,
                    value_at_2: closed.eval_at_u64(2).to_string(),
                    passed,
                }
            }
            Err(_) => HomocyclicRow {
                m,
                degree: 0,
                leading_coeff: 0,
                matches_recurrence: false,
                value_at_2: String::new(),
                passed: false,
            },
        };
        homocyclic.push(row);
    }
    let mut chains = Vec::new();
    for w in 1..=chain_max {
        for x in w..=chain_max {
            for y in x..=chain_max {
                for z in y..=chain_max {
                    let expected_leading = leading_term_ccl(w, x, y, z).expect("valid chain");
                    let ccl = rank4_total_ccl(w, x, y, z).expect("valid chain");
                    let observed_leading = leading(&ccl);
                    let matches_recurrence = ccl == total_count(&GroupType::from_parts(&[w, x, y, z]));
                    let passed = matches_recurrence
                        && observed_leading.0 as u64 == expected_leading.0
                        && observed_leading.1 == expected_leading.1;
                    chains.push(ChainRow {
                        chain: [w, x, y, z],
                        expected_leading,
                        observed_leading,
                        matches_recurrence,
                        passed,
                    });
                }
            }
        }
    }
    let passed = homocyclic.iter().all(|r| r.passed) && chains.iter().all(|r| r.passed);
    TothReport {
        passed,
        homocyclic,
        chains,
    }
}

fn toth(config: &VerifyConfig, catalog: &ClosedForms) -> CheckRecord {
    let started = Instant::now();
    let mut tally = Tally::new();
    let report = toth_report(catalog, config.m_max, config.chain_max);
    for row in &report.homocyclic {
        tally.record(row.passed, || {
            format!(
                "m={}: degree {}, leading coefficient {}, matches recurrence {}",
                row.m, row.degree, row.leading_coeff, row.matches_recurrence
            )
        });
    }
    for row in &report.chains {
        tally.record(row.passed, || {
            format!(
                "chain {:?}: leading {:?}, expected {:?}, matches recurrence {}",
                row.chain, row.observed_leading, row.expected_leading, row.matches_recurrence
            )
        });
    }
    tally.finish(
        "toth",
        format!("m <= {}, chains with z <= {}", config.m_max, config.chain_max),
        None,
        started,
    )
}

/// Runs every check against `catalog`.
pub fn run_verify(config: &VerifyConfig, catalog: &ClosedForms) -> VerifyReport {
    let mut checks = vec![
        closed_vs_recurrence(config, catalog),
        recurrence_vs_recurrence(config),
        birkhoff_symmetry(config),
        boundary_agreement(config, catalog),
        q_binomial(config),
        oracle_agreement(config),
        genfun(config, catalog),
        toth(config, catalog),
    ];
    checks.sort_by_key(|c| c.name);
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::Perturbation;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_rank: 3,
            max_part: 2,
            primes: vec![2],
            oracle_limit: 256,
            m_max: 2,
            chain_max: 2,
            genfun_bounds: [4, 4, 4],
        }
    }

    #[test]
    fn small_run_passes_in_name_order() {
        let report = run_verify(&small(), &ClosedForms::default());
        assert!(report.passed, "{:?}", report.failures());
        let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(names.len(), 8);
    }

    #[test]
    fn perturbed_case_is_named() {
        let case = CaseId::new(Theorem::Rank3, 2).unwrap();
        let catalog = ClosedForms::with_perturbation(Perturbation { case, term: 1, delta: 3 });
        let report = run_verify(&small(), &catalog);
        assert!(!report.passed);
        let failure = report.check("closed-vs-recurrence").unwrap();
        assert!(failure.counterexample.as_deref().unwrap().contains("rank3 Case 2"));
    }

    #[test]
    fn toth_examples() {
        let r = toth_report(&ClosedForms::default(), 4, 3);
        assert!(r.passed);
        assert_eq!(r.homocyclic[0].value_at_2, "67");
        let chain = r.chains.iter().find(|c| c.chain == [1, 1, 2, 3]).unwrap();
        assert_eq!(chain.observed_leading, (2, 5));
    }
}
