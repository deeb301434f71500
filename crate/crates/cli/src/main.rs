//! `pgroup`: count, tabulate and verify subgroup-counting polynomials of
//! finite abelian p-groups.

use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use pgroup_core::oracle::{is_prime, subgroup_census, DEFAULT_LIMIT};
use pgroup_core::verify::{run_verify, toth_report, CheckRecord, TothReport, VerifyConfig, VerifyReport};
use pgroup_core::{count_hironaka, CaseId, ClosedForms, FormulaResult, GroupType, IntPoly};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "pgroup", version, about = "Subgroup counts of finite abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of subgroups of order p^b.
    Count(CountArgs),
    /// All h_b for b = 0..m, then the total.
    Table(TableArgs),
    /// Runs every cross-check and exits 1 on any failure.
    Verify(VerifyArgs),
    /// Degree and leading-term checks for rank-4 totals.
    Toth(TothArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Recurrence,
    Closed,
    Oracle,
}

#[derive(Args)]
struct Common {
    /// Comma-separated parts in any order, e.g. 3,1,2.
    #[arg(long = "type", value_name = "CSV", allow_hyphen_values = true)]
    group_type: GroupType,
    /// Evaluate at this prime.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Largest group order the oracle will enumerate.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    oracle_limit: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    max_rank: usize,
    #[arg(long, default_value_t = 3)]
    max_part: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    oracle_limit: u64,
    #[arg(long, default_value_t = 4)]
    m_max: u32,
    #[arg(long, default_value_t = 3)]
    chain_max: u32,
    /// Include per-check wall time (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TothArgs {
    #[arg(long, default_value_t = 4)]
    m_max: u32,
    #[arg(long, default_value_t = 3)]
    chain_max: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl fmt::Display) -> UsageError {
    UsageError(msg.to_string())
}

/// Where a number came from.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    Closed(CaseId),
    Recurrence,
    Census,
    Trivial,
}

impl Source {
    fn label(&self) -> Option<String> {
        match self {
            Source::Closed(case) => Some(case.to_string()),
            Source::Recurrence => Some("recurrence".into()),
            Source::Census => Some("census".into()),
            Source::Trivial => None,
        }
    }
}

#[derive(Debug, Clone)]
struct Answer {
    poly: Option<IntPoly>,
    value: Option<BigInt>,
    source: Source,
}

impl Answer {
    fn render(&self) -> String {
        let mut out = match (&self.poly, &self.value) {
            (Some(poly), Some(v)) if self.source != Source::Trivial => format!("{poly} = {v}"),
            (Some(poly), _) => poly.to_string(),
            (None, Some(v)) => v.to_string(),
            (None, None) => String::new(),
        };
        if let Some(label) = self.source.label() {
            out.push_str(&format!(" ({label})"));
        }
        out
    }
}

/// JSON number when it fits, decimal string otherwise.
fn json_int(v: &BigInt) -> Value {
    let s = v.to_string();
    serde_json::from_str::<serde_json::Number>(&s)
        .ok()
        .filter(|n| n.is_i64() || n.is_u64())
        .map_or(Value::String(s), Value::Number)
}

#[derive(Serialize)]
struct AnswerJson {
    b: Option<i64>,
    poly: Option<IntPoly>,
    value: Option<Value>,
    source: Option<String>,
}

impl AnswerJson {
    fn new(b: Option<i64>, a: &Answer) -> Self {
        Self {
            b,
            poly: a.poly.clone(),
            value: a.value.as_ref().map(json_int),
            source: a.source.label(),
        }
    }
}

#[derive(Serialize)]
struct CountJson<'a> {
    #[serde(rename = "type")]
    group_type: &'a GroupType,
    prime: Option<u64>,
    #[serde(flatten)]
    answer: AnswerJson,
}

#[derive(Serialize)]
struct TableJson<'a> {
    #[serde(rename = "type")]
    group_type: &'a GroupType,
    prime: Option<u64>,
    rows: Vec<AnswerJson>,
    total: AnswerJson,
}

fn checked_prime(prime: Option<u64>) -> Result<Option<u64>, UsageError> {
    match prime {
        Some(p) if !is_prime(p) => Err(usage(format!("{p} is not prime"))),
        other => Ok(other),
    }
}

fn oracle_prime(c: &Common) -> Result<u64, UsageError> {
    c.prime.ok_or_else(|| usage("--method oracle needs --prime"))
}

fn evaluate(poly: IntPoly, prime: Option<u64>, source: Source) -> Answer {
    let value = prime.map(|p| poly.eval_at_u64(p));
    Answer {
        poly: Some(poly),
        value,
        source,
    }
}

fn polynomial_answer(c: &Common, catalog: &ClosedForms, b: i64) -> Result<Answer, UsageError> {
    let t = &c.group_type;
    if b < 0 || b > i64::from(t.weight()) {
        return Ok(evaluate(IntPoly::zero(), c.prime, Source::Trivial));
    }
    if c.method != Method::Recurrence {
        match catalog.best(t, b).map_err(usage)? {
            FormulaResult::Covered { value, case } => return Ok(evaluate(value, c.prime, Source::Closed(case))),
            FormulaResult::Uncovered if c.method == Method::Closed => {
                return Err(usage(format!("no closed form covers {t} at b = {b}")))
            }
            FormulaResult::Uncovered => {}
        }
    }
    Ok(evaluate(count_hironaka(t, b), c.prime, Source::Recurrence))
}

fn census_counts(c: &Common) -> Result<(u64, Vec<u64>), UsageError> {
    let p = oracle_prime(c)?;
    let census = subgroup_census(&c.group_type, p, c.oracle_limit).map_err(usage)?;
    Ok((census.total, census.counts))
}

fn census_answer(n: u64) -> Answer {
    Answer {
        poly: None,
        value: Some(BigInt::from(n)),
        source: Source::Census,
    }
}

fn cmd_count(args: &CountArgs, out: &mut impl Write) -> Result<ExitCode, UsageError> {
    let c = &args.common;
    let prime = checked_prime(c.prime)?;
    let answer = if c.method == Method::Oracle {
        let (_, counts) = census_counts(c)?;
        let n = usize::try_from(args.b).ok().and_then(|b| counts.get(b)).copied().unwrap_or(0);
        census_answer(n)
    } else {
        polynomial_answer(c, &ClosedForms::default(), args.b)?
    };
    if c.json {
        let doc = CountJson {
            group_type: &c.group_type,
            prime,
            answer: AnswerJson::new(Some(args.b), &answer),
        };
        emit_json(out, &doc);
    } else {
        let _ = writeln!(out, "{}", answer.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: &TableArgs, out: &mut impl Write) -> Result<ExitCode, UsageError> {
    let c = &args.common;
    let prime = checked_prime(c.prime)?;
    let m = i64::from(c.group_type.weight());
    let (rows, total) = if c.method == Method::Oracle {
        let (total, counts) = census_counts(c)?;
        (counts.into_iter().map(census_answer).collect::<Vec<_>>(), census_answer(total))
    } else {
        let catalog = ClosedForms::default();
        let rows = (0..=m)
            .map(|b| polynomial_answer(c, &catalog, b))
            .collect::<Result<Vec<_>, _>>()?;
        let sum = rows.iter().filter_map(|r| r.poly.as_ref()).fold(IntPoly::zero(), |acc, p| &acc + p);
        (rows, evaluate(sum, prime, Source::Trivial))
    };
    if c.json {
        let doc = TableJson {
            group_type: &c.group_type,
            prime,
            rows: rows.iter().zip(0..).map(|(r, b)| AnswerJson::new(Some(b), r)).collect(),
            total: AnswerJson::new(None, &total),
        };
        emit_json(out, &doc);
    } else {
        for (b, row) in (0..).zip(&rows) {
            let _ = writeln!(out, "b={b}: {}", row.render());
        }
        let total_text = match (&total.poly, &total.value) {
            (Some(poly), Some(v)) => format!("{poly} = {v}"),
            _ => total.render(),
        };
        let _ = writeln!(out, "total: {total_text}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TimedCheck<'a> {
    #[serde(flatten)]
    record: &'a CheckRecord,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct TimedReport<'a> {
    passed: bool,
    checks: Vec<TimedCheck<'a>>,
}

fn verify_config(args: &VerifyArgs) -> Result<VerifyConfig, UsageError> {
    if args.max_rank == 0 || args.max_part == 0 || args.m_max == 0 || args.chain_max == 0 || args.oracle_limit == 0 {
        return Err(usage("bounds must be positive"));
    }
    if args.primes.is_empty() {
        return Err(usage("--primes needs at least one prime"));
    }
    for &p in &args.primes {
        checked_prime(Some(p))?;
    }
    Ok(VerifyConfig {
        max_rank: args.max_rank,
        max_part: args.max_part,
        primes: args.primes.clone(),
        oracle_limit: args.oracle_limit,
        m_max: args.m_max,
        chain_max: args.chain_max,
        ..VerifyConfig::default()
    })
}

fn print_verify(report: &VerifyReport, timings: bool, out: &mut impl Write) {
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        let _ = write!(out, "{status} {:<24} {:>6} checked  {}", check.name, check.checked, check.family);
        if timings {
            let _ = write!(out, "  [{:.3} s]", check.elapsed.as_secs_f64());
        }
        let _ = writeln!(out);
        if let Some(detail) = &check.detail {
            let _ = writeln!(out, "     {detail}");
        }
        if let Some(cx) = &check.counterexample {
            let _ = writeln!(out, "     counterexample: {cx}");
        }
    }
    let _ = writeln!(out, "overall: {}", if report.passed { "PASS" } else { "FAIL" });
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<ExitCode, UsageError> {
    let config = verify_config(args)?;
    let report = run_verify(&config, &ClosedForms::default());
    match (args.json, args.timings) {
        (true, true) => {
            let timed = TimedReport {
                passed: report.passed,
                checks: report
                    .checks
                    .iter()
                    .map(|record| TimedCheck {
                        record,
                        elapsed_ms: record.elapsed.as_secs_f64() * 1e3,
                    })
                    .collect(),
            };
            emit_json(out, &timed);
        }
        (true, false) => emit_json(out, &report),
        (false, timings) => print_verify(&report, timings, out),
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn print_toth(report: &TothReport, out: &mut impl Write) {
    for row in &report.homocyclic {
        let status = if row.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} N({m},{m},{m},{m}): degree {} (want {}), leading coefficient {}, recurrence {}, value at p=2 {}",
            row.degree,
            4 * row.m,
            row.leading_coeff,
            if row.matches_recurrence { "agrees" } else { "disagrees" },
            row.value_at_2,
            m = row.m,
        );
    }
    for row in &report.chains {
        let status = if row.passed { "PASS" } else { "FAIL" };
        let [w, x, y, z] = row.chain;
        let _ = writeln!(
            out,
            "{status} N({w},{x},{y},{z}): leading term {}*p^{} (want {}*p^{}), recurrence {}",
            row.observed_leading.0,
            row.observed_leading.1,
            row.expected_leading.0,
            row.expected_leading.1,
            if row.matches_recurrence { "agrees" } else { "disagrees" },
        );
    }
    let _ = writeln!(out, "overall: {}", if report.passed { "PASS" } else { "FAIL" });
}

fn cmd_toth(args: &TothArgs, out: &mut impl Write) -> Result<ExitCode, UsageError> {
    if args.m_max == 0 || args.chain_max == 0 {
        return Err(usage("bounds must be positive"));
    }
    let report = toth_report(&ClosedForms::default(), args.m_max, args.chain_max);
    if args.json {
        emit_json(out, &report);
    } else {
        print_toth(&report, out);
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Count(args) => cmd_count(args, &mut out),
        Command::Table(args) => cmd_table(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
        Command::Toth(args) => cmd_toth(args, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
