//! Command-line front end: reads matrix or matroid JSON, prints invariant
//! reports, runs the score-equation solver against the formula, and
//! batches consistency checks.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use mldeg::invariants::{char_poly, char_poly_from_flats, poincare_poly, tutte, tutte_bruteforce};
use mldeg::mldegree::{
    classify_rmld_one, score_count, score_count_dc, score_count_from_char_poly, uniform_rmld, uniform_score_count,
    verify_stratification,
};
use mldeg::random::generic_uniform_matrix;
use mldeg::solver::{oracle_score_count, OracleConfig};
use mldeg::{io, Error, InvariantReport, MLDegreeReport, Matroid};

/// Largest ground set for which `verify` runs the subset-expansion Tutte check.
const BRUTEFORCE_MAX_N: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "mldeg", version, about = "Exact ML degrees of diagonal linear concentration models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tutte, characteristic and Poincaré polynomials, Möbius invariant, mld and rmld.
    Invariants {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reciprocal ML degree.
    Rmld {
        #[arg(long)]
        input: PathBuf,
    },
    /// Number of solutions D(L, d) of the score equations.
    ScoreCount {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "d")]
        d: u32,
    },
    /// Batch consistency checks; exits with status 1 if any check fails.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Exponents to check (repeatable); defaults to 0, 1, 2, 3.
        #[arg(long = "d")]
        d: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Solve the score equations exactly and compare with the formula.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "d", default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Closed forms for the uniform matroid U_{r,n}.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "d")]
        d: Option<u32>,
    },
    /// A random integer matrix whose column matroid is U_{r,n}.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Consistency(_)) => 1,
            CliError::Core(Error::Capacity(_) | Error::TooLarge { .. }) => 3,
            CliError::Core(Error::CertificationFailure { .. } | Error::NotZeroDimensional { .. }) => 4,
            _ => 2,
        }
    }
}

/// A finished report. `success` is false when a verification check failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub success: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, success: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => render_table(&self.json),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

/// Parses arguments, runs, writes the report, and returns the exit status.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match execute(&cli).and_then(|out| emit(&cli, &out).map(|()| out)) {
        Ok(out) => out.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> Result<(), CliError> {
    let text = out.render(cli.format);
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Invariants { input } => cmd_invariants(&io::read_matroid(input)?),
        Command::Rmld { input } => {
            let m = io::read_matroid(input)?;
            let report = MLDegreeReport::compute(&m, 2, false)?;
            Ok(Outcome::ok(stringify(json!({ "n": m.n(), "rank": m.rank(), "rmld": report.rmld.to_string() }))))
        }
        Command::ScoreCount { input, d } => {
            let m = io::read_matroid(input)?;
            Ok(Outcome::ok(MLDegreeReport::compute(&m, *d, true)?.to_json()))
        }
        Command::Verify { input, d, seed } => {
            let ds = if d.is_empty() { vec![0, 1, 2, 3] } else { d.clone() };
            let config = OracleConfig::from_env()?;
            Ok(cmd_verify(&io::read_matroid(input)?, &ds, *seed, &config))
        }
        Command::Oracle { input, d, seed } => {
            let config = OracleConfig::from_env()?;
            cmd_oracle(&io::read_matroid(input)?, *d, *seed, &config)
        }
        Command::Uniform { n, r, d } => cmd_uniform(*n, *r, *d),
        Command::Random { n, r, seed } => Ok(Outcome::ok(generic_uniform_matrix(*n, *r, *seed)?.to_json())),
    }
}

pub fn cmd_invariants(m: &Matroid) -> Result<Outcome, CliError> {
    let inv = InvariantReport::compute(m);
    inv.check()?;
    let degrees = MLDegreeReport::compute(m, 2, false)?;
    let mut obj = match inv.to_json() {
        Value::Object(map) => map,
        _ => unreachable!("report is an object"),
    };
    obj.insert("loops".into(), json!(inv.loops.to_vec()));
    obj.insert("mld".into(), json!(degrees.mld.to_string()));
    obj.insert("rmld".into(), json!(degrees.rmld.to_string()));
    Ok(Outcome::ok(stringify(Value::Object(obj))))
}

pub fn cmd_uniform(n: usize, r: usize, d: Option<u32>) -> Result<Outcome, CliError> {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert("r".into(), json!(r));
    obj.insert("rmld".into(), json!(uniform_rmld(n, r)?.to_string()));
    if let Some(d) = d {
        obj.insert("d".into(), json!(d));
        obj.insert("score_count".into(), json!(uniform_score_count(n, r, d)?.to_string()));
    }
    Ok(Outcome::ok(stringify(Value::Object(obj))))
}

pub fn cmd_oracle(m: &Matroid, d: u32, seed: u64, config: &OracleConfig) -> Result<Outcome, CliError> {
    let space = m
        .subspace()
        .ok_or_else(|| CliError::Usage("the solver needs a matrix input, not an explicit list of bases".into()))?;
    let report = oracle_score_count(space, d, seed, config)?;
    let mut obj = match report.to_json() {
        Value::Object(map) => map,
        _ => unreachable!("report is an object"),
    };
    obj.insert("n".into(), json!(m.n()));
    obj.insert("rank".into(), json!(m.rank()));
    obj.insert("d".into(), json!(d));
    obj.insert("agrees".into(), json!(report.passed()));
    Ok(Outcome::ok(stringify(Value::Object(obj))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into() }
    }

    /// Pass or fail on `ok`, failing on errors.
    fn from_result(name: impl Into<String>, result: Result<(bool, String), Error>) -> Self {
        match result {
            Ok((true, detail)) => Check::new(name, Status::Pass, detail),
            Ok((false, detail)) => Check::new(name, Status::Fail, detail),
            Err(e) => Check::new(name, Status::Fail, e.to_string()),
        }
    }
}

/// All checks for `m`, in a fixed order.
pub fn run_checks(m: &Matroid, ds: &[u32], seed: u64, config: &OracleConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    let loops = m.loops();
    let n = m.n();

    if n <= BRUTEFORCE_MAX_N {
        checks.push(Check::from_result(
            "tutte-oracle",
            tutte_bruteforce(m).map(|b| {
                let t = tutte(m);
                let same = b == t;
                (
                    same,
                    if same { format!("T = {t}") } else { format!("deletion-contraction {t}, subset expansion {b}") },
                )
            }),
        ));
    } else {
        checks.push(Check::new("tutte-oracle", Status::Skipped, format!("n = {n} > {BRUTEFORCE_MAX_N}")));
    }

    let chi = char_poly(m);
    let from_flats = char_poly_from_flats(m);
    checks.push(Check::from_result(
        "charpoly-flats",
        Ok((chi == from_flats, format!("Tutte: {chi}; flats: {from_flats}"))),
    ));
    checks.push(Check::from_result(
        "report-identities",
        InvariantReport::compute(m).check().map(|()| (true, String::new())),
    ));

    for &d in ds {
        checks.push(Check::from_result(format!("method-agreement d={d}"), method_agreement(m, d)));
    }

    checks.push(Check::from_result(
        "rmld-parity",
        MLDegreeReport::compute(m, 2, false).map(|r| {
            let ok = !r.rmld.is_negative() && (r.rmld.is_zero() || r.rmld.bit(0));
            (ok, format!("rmld = {}", r.rmld))
        }),
    ));

    let loop_note = || format!("matroid has loops {:?}; the identity needs a loopless matroid", loops.to_vec());
    for &d in ds {
        let name = format!("stratification d={d}");
        if !loops.is_empty() {
            checks.push(Check::new(name, Status::Skipped, loop_note()));
            continue;
        }
        checks.push(Check::from_result(
            name,
            verify_stratification(m, d).map(|rep| {
                let detail = if rep.holds() {
                    format!("{} = {}", rep.lhs, rep.rhs)
                } else {
                    format!("lhs {} != rhs {}: {}", rep.lhs, rep.rhs, rep.to_json())
                };
                (rep.holds(), detail)
            }),
        ));
    }

    if loops.is_empty() {
        checks.push(Check::from_result(
            "poincare",
            poincare_poly(m).and_then(|p| {
                let rep = MLDegreeReport::compute(m, 2, false)?;
                let mut at = p.eval_int(&BigInt::from(-2));
                if m.rank() % 2 == 1 {
                    at = -at;
                }
                Ok((at == rep.rmld, format!("(-1)^r P(-2) = {at}, rmld = {}", rep.rmld)))
            }),
        ));
    } else {
        checks.push(Check::new("poincare", Status::Skipped, loop_note()));
    }

    checks.push(Check::from_result(
        "rmld-one-equivalence",
        classify_rmld_one(m).map(|rep| (true, format!("rmld = 1: {}", rep.value()))),
    ));

    for &d in ds.iter().filter(|&&d| d >= 1) {
        checks.push(solver_check(m, d, seed, config));
    }
    checks
}

fn method_agreement(m: &Matroid, d: u32) -> Result<(bool, String), Error> {
    let formula = score_count(m, d)?;
    if d == 0 {
        let mld = MLDegreeReport::compute(m, 0, false)?.mld;
        return Ok((formula == mld, format!("D(L, 0) = {formula}, |mu| = {mld}")));
    }
    let dc = score_count_dc(m, d)?;
    let via_chi = score_count_from_char_poly(m, d)?;
    let mut ok = formula == dc && formula == via_chi;
    let mut detail = format!("Tutte {formula}, deletion-contraction {dc}, charpoly {via_chi}");
    if d == 1 && m.n() >= 1 && m.loops().is_empty() && !formula.is_zero() {
        ok = false;
        detail.push_str("; expected 0 for d = 1");
    }
    Ok((ok, detail))
}

fn solver_check(m: &Matroid, d: u32, seed: u64, config: &OracleConfig) -> Check {
    let name = format!("solver d={d}");
    let Some(space) = m.subspace() else {
        return Check::new(name, Status::Skipped, "no realization available: input is an explicit list of bases");
    };
    let (n, r) = (m.n(), m.rank());
    if n > config.max_n || r > config.max_r || d > config.max_d {
        return Check::new(
            name,
            Status::Skipped,
            format!(
                "outside solver limits (n <= {}, r <= {}, d <= {}; got n = {n}, r = {r}, d = {d})",
                config.max_n, config.max_r, config.max_d
            ),
        );
    }
    match oracle_score_count(space, d, seed, config) {
        Ok(rep) => Check::new(
            name,
            if rep.passed() { Status::Pass } else { Status::Fail },
            format!(
                "count {} = predicted {} (seed {}, {} resamples)",
                rep.count, rep.predicted, rep.seed, rep.resamples
            ),
        ),
        Err(Error::Capacity(msg)) => Check::new(name, Status::Skipped, msg),
        Err(e) => Check::new(name, Status::Fail, e.to_string()),
    }
}

pub fn cmd_verify(m: &Matroid, ds: &[u32], seed: u64, config: &OracleConfig) -> Outcome {
    let checks = run_checks(m, ds, seed, config);
    let success = checks.iter().all(|c| c.status != Status::Fail);
    let list: Vec<Value> =
        checks.iter().map(|c| json!({ "name": c.name, "status": c.status.as_str(), "detail": c.detail })).collect();
    Outcome {
        json: json!({ "n": m.n().to_string(), "rank": m.rank().to_string(), "passed": success, "checks": list }),
        success,
    }
}

/// Replaces every JSON number with its decimal string.
pub fn stringify(value: Value) -> Value {
    match value {
        Value::Number(x) => Value::String(x.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, stringify(v))).collect()),
        other => other,
    }
}

fn render_table(value: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = value else {
        let _ = writeln!(out, "{value}");
        return out;
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (key, v) in map {
        match v {
            Value::Array(items) if items.iter().all(|c| c.get("status").is_some()) && !items.is_empty() => {
                let _ = writeln!(out, "{key}:");
                for c in items {
                    let field = |f: &str| c.get(f).and_then(Value::as_str).unwrap_or("");
                    let _ = writeln!(out, "  {:<8} {:<24} {}", field("status"), field("name"), field("detail"));
                }
            }
            _ => {
                let _ = writeln!(out, "{key:<width$}  {}", scalar_text(v));
            }
        }
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_become_strings() {
        let v = stringify(json!({ "a": 1, "b": [2, "x", { "c": -3 }], "d": true, "e": null }));
        assert_eq!(v, json!({ "a": "1", "b": ["2", "x", { "c": "-3" }], "d": true, "e": null }));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(Error::Capacity("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::CertificationFailure { seeds: vec![1], reason: "x".into() }).exit_code(), 4);
        assert_eq!(CliError::Core(Error::Parse("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(Error::Consistency("x".into())).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn uniform_reports() {
        let out = cmd_uniform(3, 2, Some(3)).unwrap();
        assert_eq!(out.json["rmld"], "3");
        assert_eq!(out.json["score_count"], "10");
        assert!(cmd_uniform(2, 3, None).is_err());
    }

    #[test]
    fn verify_u23_passes_every_check() {
        let m = Matroid::uniform(2, 3).unwrap();
        let out = cmd_verify(&m, &[0, 1, 2, 3], 1, &OracleConfig::default());
        assert!(out.success, "{}", out.json);
        let names: Vec<&str> =
            out.json["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
        assert_eq!(names[0], "tutte-oracle");
        let solver_status = |out: &Outcome| -> Vec<String> {
            out.json["checks"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|c| c["name"].as_str().unwrap().starts_with("solver"))
                .map(|c| c["status"].as_str().unwrap().to_string())
                .collect()
        };
        assert_eq!(solver_status(&out), ["pass", "pass", "pass"]);

        let bases = mldeg::io::matroid_from_str(r#"{"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]}"#).unwrap();
        let out = cmd_verify(&bases, &[0, 1, 2, 3], 1, &OracleConfig::default());
        assert!(out.success, "{}", out.json);
        assert_eq!(solver_status(&out), ["skipped", "skipped", "skipped"]);
    }

    #[test]
    fn table_rendering() {
        let out = cmd_uniform(6, 3, None).unwrap();
        let table = out.render(Format::Table);
        assert!(table.contains("rmld  31"), "{table}");
    }
}
