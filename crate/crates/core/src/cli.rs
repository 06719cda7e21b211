//! Command-line front end: argument parsing, report assembly and output.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input or map,
//! 3 budget exhausted (partial results still written), 4 a verified
//! property failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::dynamics::{
    bounds_analysis, components_analysis, degree_monomial, entropy_estimate, fmt_rational, hk_sequence,
    lambda_sequence, multiplicity, EntropyReport, HkEntropy, LambdaSequence,
};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::groebner::Ideal;
use crate::local::Endomorphism;
use crate::problem::{parse_problem, Problem};
use crate::verify::{verify, Fault, Status};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Set to `inflate-second-lambda` to corrupt λ(φ²) inside `verify`.
pub const FAULT_ENV: &str = "ENTROLIB_FAULT_INJECT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Check,
    Lambda,
    Entropy,
    Bounds,
    Hk,
    Components,
    Degree,
    Multiplicity,
    Verify,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "entrolib",
    version,
    about = "Length sequences and algebraic entropy of local ring self-maps"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem file (TOML).
    pub file: PathBuf,
    /// Prefix length n_max (overrides the file).
    #[arg(long = "n")]
    pub n: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write a CSV table here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Largest truncation level N for local colengths.
    #[arg(long = "budget-N")]
    pub budget_n: Option<u32>,
    /// Largest number of terms in any intermediate polynomial.
    #[arg(long = "budget-terms")]
    pub budget_terms: Option<usize>,
}

/// Everything a command produces; the caller decides where it goes.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub human: String,
    pub csv: Option<String>,
}

/// Round to 12 significant digits; non-finite values are not representable in JSON.
pub fn round12(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(0.0);
    }
    format!("{x:.11e}").parse().ok()
}

/// 12-significant-digit text form of a real.
pub fn fmt_real(x: f64) -> String {
    match round12(x) {
        Some(r) => format!("{r}"),
        None if x.is_nan() => "nan".into(),
        None if x > 0.0 => "inf".into(),
        None => "-inf".into(),
    }
}

fn round_reals(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            *v = n
                .as_f64()
                .and_then(round12)
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_reals),
        Value::Object(o) => o.values_mut().for_each(round_reals),
        _ => {}
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    let mut v = serde_json::to_value(x).expect("report serializes");
    round_reals(&mut v);
    v
}

fn exit_code_for(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INVALID
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "kind": e.kind(), "message": e.to_string() })
}

fn field_name(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => format!("F{p}"),
    }
}

struct Ctx<'a> {
    problem: &'a Problem,
    n_max: u32,
    budget: Budget,
}

type CmdResult = (i32, Value, String, Option<String>);

fn fail(e: Error) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    Err((e, None))
}

fn entropy_json(r: &EntropyReport, field: FieldSpec) -> Value {
    let mut v = to_json(r);
    let bits = std::f64::consts::LN_2;
    v["upper_bound_bits"] = to_json(&(r.upper_bound / bits));
    v["diff_estimate_bits"] = to_json(&(r.diff_estimate / bits));
    if let FieldSpec::PrimeField(p) = field {
        let lp = (p as f64).ln();
        v["upper_bound_log_p"] = to_json(&(r.upper_bound / lp));
        v["diff_estimate_log_p"] = to_json(&(r.diff_estimate / lp));
    }
    v
}

fn entropy_lines(out: &mut String, r: &EntropyReport, field: FieldSpec) {
    let _ = writeln!(
        out,
        "entropy upper bound (min h_n): {}  [{} bits]",
        fmt_real(r.upper_bound),
        fmt_real(r.upper_bound / std::f64::consts::LN_2)
    );
    let _ = writeln!(out, "entropy estimate (last difference): {}", fmt_real(r.diff_estimate));
    if let FieldSpec::PrimeField(p) = field {
        let _ = writeln!(
            out,
            "upper bound in base-{p} logarithm: {}",
            fmt_real(r.upper_bound / (p as f64).ln())
        );
    }
}

fn lambda_csv(values: &[u128], r: Option<&EntropyReport>) -> String {
    let mut s = String::from("n,lambda,h_n,running_min\n");
    for (i, v) in values.iter().enumerate() {
        let (h, m) = r.map_or((String::new(), String::new()), |r| {
            (fmt_real(r.per_n[i]), fmt_real(r.running_min[i]))
        });
        let _ = writeln!(s, "{},{v},{h},{m}", i + 1);
    }
    s
}

fn sequence_status(seq: &LambdaSequence) -> i32 {
    if seq.is_complete() {
        EXIT_OK
    } else if seq.budget_exhausted() {
        EXIT_BUDGET
    } else {
        EXIT_INVALID
    }
}

fn cmd_check(c: &Ctx) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let p = c.problem;
    let ring = &p.ring;
    let mut rep = json!({
        "dim": ring.dim(),
        "dim_status": to_json(&ring.dim_status()),
        "quotient_monomial": ring.quotient().is_monomial(),
    });
    let mut human = String::new();
    let phi = match Endomorphism::validate(ring.clone(), p.images.clone(), &c.budget) {
        Ok(phi) => {
            rep["local"] = json!(true);
            rep["well_defined"] = json!(true);
            phi
        }
        Err(e) => {
            rep["local"] = json!(!matches!(e, Error::NotLocal { .. }));
            rep["well_defined"] = if matches!(e, Error::NotLocal { .. }) {
                Value::Null
            } else {
                json!(false)
            };
            rep["finite_length"] = Value::Null;
            return Err((e, Some(rep)));
        }
    };
    let _ = writeln!(human, "local: true\nwell defined: true");
    match phi.lambda_n(1, &c.budget) {
        Ok(l) => {
            rep["finite_length"] = json!(true);
            rep["lambda_1"] = json!(l);
            let _ = writeln!(human, "finite length: true (lambda = {l})");
        }
        Err(e) => {
            rep["finite_length"] = if e.is_budget() { Value::Null } else { json!(false) };
            return Err((e, Some(rep)));
        }
    }
    let edim = ring
        .embedding_dimension(&c.budget)
        .map_err(|e| (e, Some(rep.clone())))?;
    let contracting = phi.is_contracting(&c.budget).map_err(|e| (e, Some(rep.clone())))?;
    rep["edim"] = json!(edim);
    rep["contracting"] = json!(contracting);
    let _ = writeln!(human, "embedding dimension: {edim}\ncontracting: {contracting}");
    match ring.dim() {
        Some(d) => {
            let _ = writeln!(
                human,
                "dimension: {d} ({})",
                to_json(&ring.dim_status()).as_str().unwrap_or("")
            );
        }
        None => {
            let _ = writeln!(human, "dimension: unknown");
        }
    }
    let mut csv = String::from("key,value\n");
    for k in [
        "local",
        "well_defined",
        "finite_length",
        "lambda_1",
        "edim",
        "contracting",
        "dim",
    ] {
        let _ = writeln!(csv, "{k},{}", rep.get(k).map_or(String::new(), |v| v.to_string()));
    }
    Ok((EXIT_OK, rep, human, Some(csv)))
}

fn cmd_lambda(
    c: &Ctx,
    phi: &Endomorphism,
    with_entropy: bool,
) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let seq = match lambda_sequence(phi, c.n_max, &c.budget) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    for (i, v) in seq.values.iter().enumerate() {
        let _ = writeln!(human, "lambda(phi^{}) = {v}", i + 1);
    }
    for (i, st) in seq.statuses.iter().enumerate().skip(seq.values.len()) {
        let _ = writeln!(
            human,
            "lambda(phi^{}) not computed: {}",
            i + 1,
            to_json(st)["reason"].as_str().unwrap_or("")
        );
    }
    let mut rep = to_json(&seq);
    let ent = entropy_estimate(&seq.values).ok();
    if with_entropy {
        if let Some(r) = &ent {
            rep["entropy"] = entropy_json(r, phi.ctx().field());
            entropy_lines(&mut human, r, phi.ctx().field());
        }
    }
    let csv = lambda_csv(&seq.values, ent.as_ref());
    Ok((sequence_status(&seq), rep, human, Some(csv)))
}

fn cmd_bounds(c: &Ctx, phi: &Endomorphism) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let r = match bounds_analysis(phi, c.n_max, &c.budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    let mut csv = String::from("n,lambda,v,w,log_v_over_n,log_w_over_n,lower_ok,upper_ok\n");
    for i in 0..r.lambda.len() {
        let vh = r.v_h[i].map_or("unbounded".to_string(), fmt_real);
        let _ = writeln!(
            human,
            "n = {}: lambda = {}, v = {}, w = {}, log v/n = {vh}, log w/n = {}",
            i + 1,
            r.lambda[i],
            r.v_seq[i],
            r.w_seq[i],
            fmt_real(r.w_h[i])
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{vh},{},{},{}",
            i + 1,
            r.lambda[i],
            r.v_seq[i],
            r.w_seq[i],
            fmt_real(r.w_h[i]),
            r.lower_ok[i],
            r.upper_ok[i]
        );
    }
    let ok = r.lower_ok.iter().chain(&r.upper_ok).all(|&b| b);
    let _ = writeln!(
        human,
        "sandwich d*log v/n <= h <= d*log w/n (d = {}): {}",
        r.dim,
        if ok { "holds" } else { "VIOLATED" }
    );
    entropy_lines(&mut human, &r.entropy, phi.ctx().field());
    Ok((EXIT_OK, to_json(&r), human, Some(csv)))
}

fn cmd_hk(c: &Ctx, phi: &Endomorphism, q: Option<&Ideal>) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let r = match hk_sequence(phi, c.n_max, HkEntropy::Estimate, q, &c.budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    let mut csv = String::from("n,value,ratio,ratio_exact\n");
    for i in 0..r.values.len() {
        let exact = r.ratios_exact.as_ref().map_or(String::new(), |ex| fmt_rational(&ex[i]));
        let _ = writeln!(
            human,
            "n = {}: value = {}, ratio = {}",
            i + 1,
            r.values[i],
            fmt_real(r.ratios[i])
        );
        let _ = writeln!(csv, "{},{},{},{exact}", i + 1, r.values[i], fmt_real(r.ratios[i]));
    }
    let _ = writeln!(human, "entropy used: {} ({})", fmt_real(r.h_used), r.h_kind);
    if let Some(p) = r.p_root {
        let _ = writeln!(human, "p(phi, R) = exp(h / dim): {}", fmt_real(p));
    }
    match &r.limit {
        Some(l) => {
            let _ = writeln!(human, "lambda is geometric; limit = {}", fmt_rational(l));
        }
        None => {
            let _ = writeln!(human, "no limit claimed");
        }
    }
    Ok((EXIT_OK, to_json(&r), human, Some(csv)))
}

fn cmd_components(c: &Ctx, phi: &Endomorphism) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let r = match components_analysis(phi, c.n_max, &c.budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    let mut csv = String::from("component,n,lambda,h_n,running_min\n");
    let mut rows = vec![("whole".to_string(), &r.whole)];
    for comp in &r.components {
        rows.push((format!("({})", comp.prime.join(" ")), &comp.entropy));
    }
    for (label, e) in &rows {
        let _ = writeln!(
            human,
            "{label}: lambda = {:?}, upper bound = {}, estimate = {}",
            e.values,
            fmt_real(e.upper_bound),
            fmt_real(e.diff_estimate)
        );
        for i in 0..e.values.len() {
            let _ = writeln!(
                csv,
                "{label},{},{},{},{}",
                i + 1,
                e.values[i],
                fmt_real(e.per_n[i]),
                fmt_real(e.running_min[i])
            );
        }
    }
    let _ = writeln!(
        human,
        "max over components: upper bound {}, estimate {}; gap to whole estimate {}",
        fmt_real(r.max_upper_bound),
        fmt_real(r.max_diff_estimate),
        fmt_real(r.diff_gap)
    );
    Ok((EXIT_OK, to_json(&r), human, Some(csv)))
}

fn cmd_degree(c: &Ctx, phi: &Endomorphism) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let r = match degree_monomial(phi, &c.budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let seq = match lambda_sequence(phi, c.n_max, &c.budget) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mut human = format!("degree = {}\nlog degree = {}\n", r.degree, fmt_real(r.log_degree));
    let mut csv = String::from("n,lambda,degree_power,equal\n");
    let mut all = true;
    let mut pow: Option<u128> = Some(1);
    let mut rows = Vec::new();
    for (i, &l) in seq.values.iter().enumerate() {
        pow = pow.and_then(|p| p.checked_mul(r.degree));
        let eq = pow == Some(l);
        all &= eq;
        let ps = pow.map_or("overflow".to_string(), |p| p.to_string());
        let _ = writeln!(csv, "{},{l},{ps},{eq}", i + 1);
        rows.push(json!({ "n": i + 1, "lambda": l, "degree_power": ps, "equal": eq }));
    }
    let _ = writeln!(human, "lambda(phi^n) = degree^n for n <= {}: {all}", seq.values.len());
    let mut rep = to_json(&r);
    rep["lambda"] = to_json(&seq);
    rep["identity"] = json!({ "holds": all, "rows": rows });
    Ok((sequence_status(&seq), rep, human, Some(csv)))
}

fn cmd_multiplicity(
    c: &Ctx,
    phi: &Endomorphism,
    q: Option<&Ideal>,
) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let ring = phi.ring();
    let m = Ideal::maximal(phi.ctx());
    let q = q.unwrap_or(&m);
    let s_max = c.problem.options.s_max;
    let base = match multiplicity(ring, q, s_max, &c.budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut human = format!(
        "e(q) = {} from {} samples (tail {})\n",
        base.multiplicity, s_max, base.tail_len
    );
    let mut csv = String::from("n,s,length\n");
    for (s, l) in base.samples.iter().enumerate() {
        let _ = writeln!(csv, "0,{},{l}", s + 1);
    }
    let degree = degree_monomial(phi, &c.budget).ok().map(|d| d.degree);
    let mut transformed = Vec::new();
    for n in 1..=c.n_max {
        let qn = match phi.iterate(n, &c.budget).and_then(|imgs| {
            let gens = q
                .generators()
                .iter()
                .map(|g| g.substitute(&imgs, &c.budget))
                .collect::<crate::Result<Vec<_>>>()?;
            Ideal::new(phi.ctx(), gens)
        }) {
            Ok(i) => i,
            Err(e) => return fail(e),
        };
        let r = match multiplicity(ring, &qn, s_max, &c.budget) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let predicted = degree.and_then(|d| {
            d.checked_pow(n)
                .and_then(|p| (base.multiplicity as u128).checked_mul(p))
        });
        let _ = write!(human, "e(phi^{n}(q)R) = {}", r.multiplicity);
        if let Some(p) = predicted {
            let _ = write!(human, " (e(q)*deg^{n} = {p})");
        }
        human.push('\n');
        for (s, l) in r.samples.iter().enumerate() {
            let _ = writeln!(csv, "{n},{},{l}", s + 1);
        }
        transformed.push(json!({
            "n": n,
            "report": to_json(&r),
            "predicted": predicted.map(|p| p.to_string()),
            "matches": predicted.map(|p| p == r.multiplicity as u128),
        }));
    }
    let rep = json!({ "base": to_json(&base), "degree": degree.map(|d| d.to_string()), "transformed": transformed });
    Ok((EXIT_OK, rep, human, Some(csv)))
}

fn cmd_verify(c: &Ctx, phi: &Endomorphism) -> std::result::Result<CmdResult, (Error, Option<Value>)> {
    let fault = match std::env::var(FAULT_ENV).ok().as_deref() {
        Some("inflate-second-lambda") => Some(Fault::InflateSecondLambda),
        _ => None,
    };
    let r = match verify(phi, c.n_max, c.problem.options.k, &c.budget, fault) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut human = String::new();
    let mut csv = String::from("property,status,detail\n");
    for p in &r.properties {
        let st = to_json(&p.status);
        let st = st.as_str().unwrap_or("");
        let _ = writeln!(human, "{:<32} {:<8} {}", p.name, st, p.detail);
        let _ = writeln!(csv, "{},{st},\"{}\"", p.name, p.detail.replace('"', "\"\""));
    }
    let code = if r.any_failed() {
        EXIT_VERIFY
    } else if r.any_budget() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    let passed = r.properties.iter().filter(|p| p.status == Status::Pass).count();
    let _ = writeln!(human, "{passed} of {} properties passed", r.properties.len());
    Ok((code, to_json(&r), human, Some(csv)))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Run one command on already-read file contents.
pub fn run_source(args: &Args, source: &str) -> Outcome {
    let name = args
        .file
        .file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": to_json(&args.command),
        "input": { "file": name, "sha256": sha256_hex(source.as_bytes()) },
    });
    let finish = |mut report: Value,
                  code: i32,
                  result: Option<Value>,
                  err: Option<&Error>,
                  human: String,
                  csv: Option<String>| {
        report["status"] = json!(match code {
            EXIT_OK => "ok",
            EXIT_BUDGET => "budget_exceeded",
            EXIT_VERIFY => "verify_failed",
            _ => "invalid",
        });
        report["result"] = result.unwrap_or(Value::Null);
        report["error"] = err.map_or(Value::Null, error_json);
        Outcome {
            exit_code: code,
            report,
            human,
            csv,
        }
    };
    let problem = match parse_problem(source) {
        Ok(p) => p,
        Err(e) => {
            let human = format!("error: {e}\n");
            return finish(report, exit_code_for(&e), None, Some(&e), human, None);
        }
    };
    let mut budget = problem.options.budget;
    if let Some(n) = args.budget_n {
        budget.max_truncation = n;
    }
    if let Some(t) = args.budget_terms {
        budget.max_terms = t;
    }
    let n_max = args.n.unwrap_or(problem.options.n_max);
    report["parameters"] = json!({
        "field": field_name(problem.ctx().field()),
        "vars": problem.ctx().names(),
        "n_max": n_max,
        "budget_N": budget.max_truncation,
        "budget_terms": budget.max_terms,
    });
    if n_max == 0 {
        let e = Error::InvalidArgument("--n must be at least 1".into());
        return finish(report, EXIT_INVALID, None, Some(&e), format!("error: {e}\n"), None);
    }
    let c = Ctx {
        problem: &problem,
        n_max,
        budget,
    };
    let res = if args.command == Command::Check {
        cmd_check(&c)
    } else {
        match Endomorphism::validate(problem.ring.clone(), problem.images.clone(), &budget) {
            Err(e) => Err((e, None)),
            Ok(phi) => {
                let q = match problem.q_ideal() {
                    Ok(q) => q,
                    Err(e) => {
                        let human = format!("error: {e}\n");
                        return finish(report, exit_code_for(&e), None, Some(&e), human, None);
                    }
                };
                match args.command {
                    Command::Lambda => cmd_lambda(&c, &phi, false),
                    Command::Entropy => cmd_lambda(&c, &phi, true),
                    Command::Bounds => cmd_bounds(&c, &phi),
                    Command::Hk => cmd_hk(&c, &phi, q.as_ref()),
                    Command::Components => cmd_components(&c, &phi),
                    Command::Degree => cmd_degree(&c, &phi),
                    Command::Multiplicity => cmd_multiplicity(&c, &phi, q.as_ref()),
                    Command::Verify => cmd_verify(&c, &phi),
                    Command::Check => unreachable!(),
                }
            }
        }
    };
    match res {
        Ok((code, result, human, csv)) => finish(report, code, Some(result), None, human, csv),
        Err((e, partial)) => {
            let human = format!("error: {e}\n");
            finish(report, exit_code_for(&e), partial, Some(&e), human, None)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let start = std::time::Instant::now();
    let source = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return EXIT_IO;
        }
    };
    let out = run_source(&args, &source);
    print!("{}", out.human);
    if out.exit_code != EXIT_OK {
        if let Some(err) = out.report.get("error").filter(|e| !e.is_null()) {
            eprintln!(
                "{}: {}",
                err["kind"].as_str().unwrap_or("error"),
                err["message"].as_str().unwrap_or("")
            );
        }
    }
    if let Some(p) = &args.json {
        let text = serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n";
        if let Err(e) = write_file(p, &text) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return EXIT_IO;
        }
    }
    if let Some(p) = &args.csv {
        let text = out.csv.clone().unwrap_or_default();
        if let Err(e) = write_file(p, &text) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return EXIT_IO;
        }
    }
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    out.exit_code
}
