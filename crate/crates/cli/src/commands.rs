use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use askzeta::ask::{
    ask, constant_rank_check, format_rational, orbital_equivalence_check, rank_distribution, rational_json,
    verify_prediction, CheckMode, Method, Verdict, DEFAULT_BUDGET,
};
use askzeta::boardgame::{is_admissible_game, rainbow, replay_certificate, FamilyKind, GameColouring, GameOptions};
use askzeta::colouring::is_admissible_rect;
use askzeta::finring::count_roots;
use askzeta::modrep::{alpha_rep, classic_rep, Classic, ModuleRepresentation};
use askzeta::nilpotent::{adjoint_rep, baer_group_cc, conjugacy_count_bch, free_nilpotent_lie};
use askzeta::predict::{predict, CATALOG};
use askzeta::{Error, Result, RingSpec};
use clap::Args;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::source::{build_module, load_grid, parse_free, parse_list, read_rep, ModuleArgs, RingArgs};
use crate::{Cli, Command, GlobalOpts};

/// Writes a line to stdout; a closed pipe is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Soft,
    Fail,
    Budget,
    Usage,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Soft => 2,
            Status::Usage => 3,
            Status::Budget => 4,
        }
    }
    pub fn from_code(code: u8) -> Option<Status> {
        [Status::Pass, Status::Fail, Status::Soft, Status::Usage, Status::Budget].into_iter().find(|s| s.code() == code)
    }
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Soft => "soft-fail",
            Status::Fail => "fail",
            Status::Budget => "budget-exceeded",
            Status::Usage => "usage-error",
        }
    }
    fn of_verdict(v: Verdict) -> Status {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::SoftFail => Status::Soft,
            Verdict::Fail => Status::Fail,
        }
    }
    fn of_error(err: &Error) -> Status {
        match err {
            Error::BudgetExceeded { .. } | Error::LevelTooLarge { .. } => Status::Budget,
            _ => Status::Usage,
        }
    }
}

/// A finished command: JSON body and text rendering.
struct Report {
    status: Status,
    body: Value,
    text: String,
}

impl Report {
    fn new(status: Status, body: Value, text: impl Into<String>) -> Self {
        Report { status, body, text: text.into() }
    }
}

fn print(global: &GlobalOpts, command: &str, report: &Report) {
    if global.json {
        let mut body = match &report.body {
            Value::Object(m) => m.clone(),
            other => {
                let mut m = serde_json::Map::new();
                m.insert("result".into(), other.clone());
                m
            }
        };
        body.insert("command".into(), json!(command));
        body.insert("seed".into(), json!(global.seed));
        body.insert("status".into(), json!(report.status.name()));
        out!("{}", Value::Object(body));
    } else {
        out!("{}", report.text.trim_end());
        out!("status: {}", report.status.name());
    }
}

pub fn dispatch(cli: &Cli, depth: usize) -> Status {
    let global = &cli.global;
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let budget = global.budget.unwrap_or(DEFAULT_BUDGET);
    let (name, outcome) = match &cli.command {
        Command::CheckAdmissible(a) => ("check-admissible", check_admissible(a, &mut rng)),
        Command::Ask(a) => ("ask", ask_cmd(a, &mut rng, budget)),
        Command::ZetaVerify(a) => ("zeta-verify", zeta_verify(a, global.seed, budget)),
        Command::RankDist(a) => ("rank-dist", rank_dist(a, &mut rng, budget)),
        Command::ConstantRank(a) => ("constant-rank", constant_rank(a, &mut rng, budget)),
        Command::OrbitalCheck(a) => ("orbital-check", orbital_check(a, &mut rng, budget)),
        Command::Cc(a) => ("cc", cc(a, budget)),
        Command::DumpRep(a) => ("dump-rep", dump_rep(a, &mut rng)),
        Command::Batch(a) => return batch(a, global, depth),
    };
    match outcome {
        Ok(report) => {
            print(global, name, &report);
            report.status
        }
        Err(err) => {
            let status = Status::of_error(&err);
            eprintln!("askzeta {name}: {err}");
            if global.json {
                print(global, name, &Report::new(status, json!({"error": err.to_string()}), ""));
            }
            status
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("{s:?} is not a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn small_prime(p: u64) -> bool {
    p == 2 || p == 3
}

// ---------------------------------------------------------------- check-admissible

#[derive(Args, Debug)]
pub struct CheckAdmissibleArgs {
    /// Grid file holding the master colouring.
    pub grid: Option<String>,
    /// Built-in grid instead of a file.
    #[arg(long)]
    pub named: Option<String>,
    /// Rainbow colouring "b,d" of the gamma grid on [d].
    #[arg(long)]
    pub rainbow: Option<String>,
    /// rho, gamma or sigma (default: the file header, else rho).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// Row labels of the subgrid (default: all).
    #[arg(long)]
    pub rows: Option<String>,
    /// Column labels of the subgrid (default: all).
    #[arg(long)]
    pub cols: Option<String>,
    /// Sample this many row subsets instead of enumerating all of them.
    #[arg(long)]
    pub sample: Option<usize>,
}

fn check_admissible(a: &CheckAdmissibleArgs, rng: &mut ChaCha8Rng) -> Result<Report> {
    let (master, rect) = if let Some(spec) = &a.rainbow {
        let v = parse_list(spec)?;
        let [b, d] = v[..] else { return Err(Error::InvalidParameter("--rainbow expects b,d".into())) };
        (rainbow(b, d)?, None)
    } else {
        let margs = ModuleArgs { grid: a.grid.clone(), named: a.named.clone(), ..Default::default() };
        let file = load_grid(&margs)?;
        let family = match a.family.as_deref().or(file.family.as_deref()) {
            Some(f) => FamilyKind::parse(f)?,
            None => FamilyKind::Rho,
        };
        let rect = (family == FamilyKind::Rho).then(|| is_admissible_rect(&file.colouring));
        (GameColouring::from_rect(family, &file.colouring)?, rect)
    };
    let grid = &master.grid;
    let rows = match &a.rows {
        Some(r) => parse_list(r)?,
        None => grid.rows.clone(),
    };
    let cols = match &a.cols {
        Some(c) => parse_list(c)?,
        None => grid.cols.clone(),
    };
    let opts = GameOptions { sample_rows: a.sample.map(|k| (k, rng.gen())), ..GameOptions::default() };
    let verdict = is_admissible_game(&master, &rows, &cols, a.level, &opts)?;
    let replayed = verdict.certificates.iter().all(|c| replay_certificate(&master, &cols, c));
    let full = rows == grid.rows && cols == grid.cols;
    let rect_agrees = match (&rect, a.level, full) {
        (Some(r), 0, true) => Some(r.admissible == verdict.admissible),
        _ => None,
    };
    let status = if !replayed || rect_agrees == Some(false) {
        Status::Fail
    } else if verdict.admissible {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut body = serde_json::to_value(&verdict).expect("verdict serialises");
    if let Some(r) = &rect {
        body["rectangular"] = json!(r);
    }
    body["certificates_replayed"] = json!(replayed);
    let mut text = format!(
        "{} admissible of level {}: {}{}\n",
        verdict.family.name(),
        verdict.level,
        if verdict.admissible { "yes" } else { "no" },
        if verdict.sampled { " (sampled row subsets)" } else { "" }
    );
    text += &format!("certificates: {} (replayed: {replayed})\n", verdict.certificates.len());
    if let Some(w) = &verdict.witness {
        text += &format!("stuck: H = {:?}, D = {:?}, surviving columns {:?}\n", w.h, w.d, w.surviving);
    }
    if let Some(r) = &rect {
        text += &format!("rectangular criterion: {}\n", if r.admissible { "admissible" } else { "not admissible" });
    }
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- ask

#[derive(Args, Debug)]
pub struct AskArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    #[command(flatten)]
    pub ring: RingArgs,
    /// direct, orbit or auto.
    #[arg(long, default_value = "auto")]
    pub method: String,
    /// Expected value; a mismatch is a failure.
    #[arg(long)]
    pub expect: Option<String>,
}

fn ask_cmd(a: &AskArgs, rng: &mut ChaCha8Rng, budget: u128) -> Result<Report> {
    let ring = a.ring.ring()?;
    let rep = build_module(&a.module, Some(ring.p()), rng)?;
    let method = Method::parse(&a.method)?;
    let res = ask(&rep, &ring, method, budget)?;
    let expected = a.expect.as_deref().map(parse_rational).transpose()?;
    let status = match &expected {
        Some(e) if *e != res.value => Status::Fail,
        _ => Status::Pass,
    };
    let body = json!({
        "ring": ring.label(),
        "method": res.method.name(),
        "value": rational_json(&res.value),
        "value_num": res.value.numer().to_string(),
        "value_den": res.value.denom().to_string(),
        "module_size": res.module_size.to_string(),
        "expected": expected.as_ref().map(rational_json),
    });
    let mut text = format!("{}\n", format_rational(&res.value));
    text += &format!("ring {}, method {}, |M| = {}\n", ring.label(), res.method.name(), res.module_size);
    if let Some(e) = &expected {
        text += &format!("expected {}\n", format_rational(e));
    }
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- zeta-verify

#[derive(Args, Debug)]
pub struct ZetaVerifyArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Catalog prediction name.
    #[arg(long)]
    pub against: String,
    /// Prediction parameter "name=value"; d and e default to the module shape.
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long)]
    pub prime: Option<u64>,
    /// Comma-separated primes (default 5,7 when --prime is absent).
    #[arg(long)]
    pub primes: Option<String>,
    /// Highest coefficient T^n checked (over Z/p^n).
    #[arg(long, default_value_t = 1)]
    pub terms: u32,
    #[arg(long, default_value = "auto")]
    pub method: String,
}

fn shape_hint(m: &ModuleArgs, rep: &ModuleRepresentation) -> (usize, usize) {
    let board = matches!(m.module.as_deref(), Some("board" | "board-last-pivot" | "altboard" | "symboard"));
    if board {
        if let Ok(g) = load_grid(m) {
            return (g.colouring.rows(), g.colouring.cols());
        }
    }
    (rep.num_rows(), rep.num_cols())
}

fn zeta_verify(a: &ZetaVerifyArgs, seed: u64, budget: u128) -> Result<Report> {
    if !CATALOG.iter().any(|(n, _)| *n == a.against) {
        return Err(Error::UnknownPrediction(a.against.clone()));
    }
    let primes: Vec<u64> = match (&a.prime, &a.primes) {
        (Some(p), None) => vec![*p],
        (None, Some(list)) => parse_list(list)?.into_iter().map(|p| p as u64).collect(),
        (None, None) => vec![5, 7],
        _ => return Err(Error::InvalidParameter("give --prime or --primes, not both".into())),
    };
    let method = Method::parse(&a.method)?;
    let mut params = BTreeMap::new();
    for kv in &a.params {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::InvalidParameter(format!("--param {kv:?} needs name=value")))?;
        let v = v.trim().parse::<i64>().map_err(|_| Error::InvalidParameter(format!("--param {kv:?} needs an integer")))?;
        params.insert(k.trim().to_string(), v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    let mut status = Status::Pass;
    let mut text = String::new();
    for &p in &primes {
        let rep = build_module(&a.module, Some(p), &mut rng)?;
        let (d, e) = shape_hint(&a.module, &rep);
        let mut params = params.clone();
        params.entry("d".into()).or_insert(d as i64);
        params.entry("e".into()).or_insert(e as i64);
        let pred = predict(&a.against, &params)?;
        let report = verify_prediction(&rep, &pred, p, a.terms, method, budget)?;
        status = status.max(Status::of_verdict(report.verdict));
        text += &format!("p = {p}: {} against {} = {pred}\n", report.verdict.name(), a.against);
        for c in &report.coefficients {
            text += &format!(
                "  T^{} over {}: brute {} predicted {}{}\n",
                c.n,
                c.ring,
                format_rational(&c.brute),
                format_rational(&c.predicted),
                if c.matches() { "" } else { "  MISMATCH" }
            );
        }
        if report.verdict == Verdict::SoftFail {
            text += "  (the formula is only claimed for sufficiently large residue characteristic)\n";
        }
        let mut v = report.to_json();
        v["prime"] = json!(p);
        reports.push(v);
    }
    let body = json!({"against": a.against, "reports": reports});
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- rank-dist

#[derive(Args, Debug)]
pub struct RankDistArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Check count(rank 1) = (roots + 1)(q − 1) for this polynomial,
    /// coefficients constant term first, e.g. 1,0,0,0,1 for X^4 + 1.
    #[arg(long, allow_hyphen_values = true)]
    pub rank1_roots: Option<String>,
}

fn rank_dist(a: &RankDistArgs, rng: &mut ChaCha8Rng, budget: u128) -> Result<Report> {
    let ring = a.ring.ring()?;
    let rep = build_module(&a.module, Some(ring.p()), rng)?;
    let rd = rank_distribution(&rep, &ring, budget)?;
    let value = rd.ask(rep.num_rows());
    let mut text = format!("rank distribution over {} (dim {}):\n", ring.label(), rd.dim);
    for (r, c) in &rd.counts {
        text += &format!("  rank {r}: {c}\n");
    }
    text += &format!("ask = {}\n", format_rational(&value));
    let mut body = rd.to_json();
    body["ring"] = json!(ring.label());
    body["ask"] = rational_json(&value);
    let mut status = Status::Pass;
    if let Some(poly) = &a.rank1_roots {
        let coeffs: Vec<i64> = poly
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::InvalidParameter(format!("{s:?} is not an integer"))))
            .collect::<Result<_>>()?;
        let roots = count_roots(&coeffs, &ring)?;
        let want = num_bigint::BigUint::from((roots + 1) * (rd.q - 1));
        let got = rd.count(1);
        if got != want {
            status = if small_prime(ring.p()) { Status::Soft } else { Status::Fail };
        }
        text += &format!("rank-1 check: {roots} roots, expected {want}, found {got}\n");
        body["rank1_check"] = json!({"roots": roots, "expected": want.to_string(), "found": got.to_string()});
    }
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- constant-rank / orbital-check

fn check_mode(samples: Option<usize>, rng: &mut ChaCha8Rng) -> CheckMode {
    match samples {
        Some(count) => CheckMode::Sample { count, seed: rng.gen() },
        None => CheckMode::Exhaustive,
    }
}

#[derive(Args, Debug)]
pub struct ConstantRankArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Expected cokernel rank ℓ.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// Sample this many points instead of enumerating all of them.
    #[arg(long)]
    pub samples: Option<usize>,
}

fn constant_rank(a: &ConstantRankArgs, rng: &mut ChaCha8Rng, budget: u128) -> Result<Report> {
    let ring = a.ring.ring()?;
    let rep = build_module(&a.module, Some(ring.p()), rng)?;
    let mode = check_mode(a.samples, rng);
    let r = constant_rank_check(&rep, &ring, a.level, mode, budget)?;
    let status = if r.passed() { Status::Pass } else { Status::Fail };
    let text = format!(
        "constant rank of level {} over {}: {} points tested, {} violations{}\n",
        a.level,
        ring.label(),
        r.tested,
        r.violation_count,
        r.violations.first().map(|x| format!(", first at {x:?}")).unwrap_or_default()
    );
    let mut body = r.to_json();
    body["level"] = json!(a.level);
    body["sampled"] = json!(a.samples.is_some());
    Ok(Report::new(status, body, text))
}

#[derive(Args, Debug)]
pub struct OrbitalCheckArgs {
    /// The submodule.
    #[command(flatten)]
    pub module: ModuleArgs,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Ambient module: "mat" (all |I|×|J| matrices), "alpha" (needs --d)
    /// or a representation JSON file.
    #[arg(long, default_value = "mat")]
    pub ambient: String,
    #[arg(long)]
    pub samples: Option<usize>,
}

fn orbital_check(a: &OrbitalCheckArgs, rng: &mut ChaCha8Rng, budget: u128) -> Result<Report> {
    let ring = a.ring.ring()?;
    let sub = build_module(&a.module, Some(ring.p()), rng)?;
    let big = match a.ambient.as_str() {
        "mat" => classic_rep(Classic::Mat, sub.num_rows(), sub.num_cols()),
        "alpha" => alpha_rep(a.module.d.ok_or_else(|| Error::InvalidParameter("--ambient alpha needs --d".into()))?),
        path => read_rep(path)?,
    };
    let mode = check_mode(a.samples, rng);
    let r = orbital_equivalence_check(&big, &sub, &ring, mode, budget)?;
    let status = if r.passed() { Status::Pass } else { Status::Fail };
    let text = format!(
        "orbit-module profiles over {}: {} points tested, {} differ{}\n",
        ring.label(),
        r.tested,
        r.violation_count,
        r.violations.first().map(|x| format!(", first at {x:?}")).unwrap_or_default()
    );
    let mut body = r.to_json();
    body["ambient"] = json!(a.ambient);
    body["sampled"] = json!(a.samples.is_some());
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- cc

#[derive(Args, Debug)]
pub struct CcArgs {
    /// Free nilpotent Lie algebra "class,generators".
    #[arg(long)]
    pub free_nilpotent: Option<String>,
    /// Representation JSON of a module of alternating matrices.
    #[arg(long)]
    pub baer: Option<String>,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Expected class number; a mismatch is a failure.
    #[arg(long)]
    pub expect: Option<u64>,
}

fn cc(a: &CcArgs, budget: u128) -> Result<Report> {
    let ring = RingSpec::padic(a.prime, a.n)?;
    let (kind, brute, ask_side) = match (&a.free_nilpotent, &a.baer) {
        (Some(spec), None) => {
            let (c, d) = parse_free(spec)?;
            let g = free_nilpotent_lie(d, c)?;
            let brute = conjugacy_count_bch(&g, &ring, budget);
            let side = ask(&adjoint_rep(&g), &ring, Method::Auto, budget).map(|r| r.value);
            (format!("F_({c},{d})"), brute, side)
        }
        (None, Some(path)) => {
            let m = read_rep(path)?;
            let brute = baer_group_cc(&m, &ring, budget);
            let scale = BigRational::from_integer(BigInt::from(ring.cardinality()).pow(m.num_gens() as u32));
            let side = ask(&m, &ring, Method::Auto, budget).map(|r| r.value * scale);
            (format!("Baer group of {path}"), brute, side)
        }
        _ => return Err(Error::InvalidParameter("give exactly one of --free-nilpotent and --baer".into())),
    };
    for err in [brute.as_ref().err(), ask_side.as_ref().err()].into_iter().flatten() {
        if !matches!(err, Error::BudgetExceeded { .. }) {
            return Err(err.clone());
        }
    }
    let brute = brute.ok();
    let ask_side = ask_side.ok();
    if brute.is_none() && ask_side.is_none() {
        return Err(Error::BudgetExceeded { needed: u128::MAX, budget });
    }
    let agree = match (&brute, &ask_side) {
        (Some(b), Some(s)) => BigRational::from_integer(BigInt::from(*b)) == *s,
        _ => true,
    };
    let value = brute.map(|b| BigRational::from_integer(b.into())).or_else(|| ask_side.clone()).unwrap();
    let expect_ok = a.expect.is_none_or(|e| BigRational::from_integer(e.into()) == value);
    let status = if agree && expect_ok { Status::Pass } else { Status::Fail };
    let computed_by = match (&brute, &ask_side) {
        (Some(_), Some(_)) => "both",
        (Some(_), None) => "group",
        _ => "ask",
    };
    let mut text = format!("k({kind} over {}) = {}\n", ring.label(), format_rational(&value));
    text += &format!(
        "group orbit sweep: {}\nask side: {}\n",
        brute.map_or("over budget".to_string(), |b| b.to_string()),
        ask_side.as_ref().map_or("over budget".to_string(), format_rational)
    );
    let body = json!({
        "group": kind,
        "ring": ring.label(),
        "class_number": rational_json(&value),
        "group_count": brute.map(|b| b.to_string()),
        "ask_side": ask_side.as_ref().map(rational_json),
        "computed_by": computed_by,
        "agree": agree,
    });
    Ok(Report::new(status, body, text))
}

// ---------------------------------------------------------------- dump-rep

#[derive(Args, Debug)]
pub struct DumpRepArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Prime for --random-units.
    #[arg(long)]
    pub prime: Option<u64>,
}

fn dump_rep(a: &DumpRepArgs, rng: &mut ChaCha8Rng) -> Result<Report> {
    let rep = build_module(&a.module, a.prime, rng)?;
    let v = rep.to_json();
    let text = serde_json::to_string_pretty(&v).expect("json");
    Ok(Report::new(Status::Pass, json!({"rep": v}), text))
}

// ---------------------------------------------------------------- batch

#[derive(Args, Debug)]
pub struct BatchArgs {
    /// Manifest: one command line per line, "#" comments. A line may start
    /// with "expect-exit N" to require exit status N instead of 0.
    pub manifest: String,
}

const MAX_BATCH_DEPTH: usize = 2;

fn batch(a: &BatchArgs, global: &GlobalOpts, depth: usize) -> Status {
    if depth >= MAX_BATCH_DEPTH {
        eprintln!("askzeta batch: manifests nest too deeply");
        return Status::Usage;
    }
    let text = match std::fs::read_to_string(&a.manifest) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("askzeta batch: cannot read {}: {err}", a.manifest);
            return Status::Usage;
        }
    };
    let base = Path::new(&a.manifest).parent().map(Path::to_path_buf).unwrap_or_default();
    let previous = std::env::current_dir().ok();
    if !base.as_os_str().is_empty() && std::env::set_current_dir(&base).is_err() {
        eprintln!("askzeta batch: cannot enter {}", base.display());
        return Status::Usage;
    }
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut worst = Status::Pass;
    let mut lines = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(mut words) = shlex::split(line) else {
            eprintln!("askzeta batch: line {}: unbalanced quotes", lineno + 1);
            worst = worst.max(Status::Fail);
            *counts.entry("fail").or_default() += 1;
            continue;
        };
        let mut expected = Status::Pass;
        if words.first().map(String::as_str) == Some("expect-exit") && words.len() >= 2 {
            match words[1].parse::<u8>().ok().and_then(Status::from_code) {
                Some(s) => expected = s,
                None => {
                    eprintln!("askzeta batch: line {}: bad expected exit status", lineno + 1);
                    worst = worst.max(Status::Fail);
                    *counts.entry("fail").or_default() += 1;
                    continue;
                }
            }
            words.drain(..2);
        }
        if global.json && !words.iter().any(|w| w == "--json") {
            words.push("--json".into());
        }
        if !global.json {
            out!("# {}: {line}", lineno + 1);
        }
        let actual = crate::run(&words, depth + 1);
        let outcome = if actual == expected {
            Status::Pass
        } else if actual == Status::Soft && expected == Status::Pass {
            Status::Soft
        } else {
            Status::Fail
        };
        *counts.entry(outcome.name()).or_default() += 1;
        worst = worst.max(outcome);
        lines.push(json!({"line": lineno + 1, "expected": expected.code(), "actual": actual.code(), "outcome": outcome.name()}));
    }
    if let Some(dir) = previous {
        let _ = std::env::set_current_dir(dir);
    }
    let total: usize = counts.values().sum();
    let get = |k: &str| counts.get(k).copied().unwrap_or(0);
    if global.json {
        out!(
            "{}",
            json!({
                "command": "batch",
                "seed": global.seed,
                "checks": total,
                "pass": get("pass"),
                "soft_fail": get("soft-fail"),
                "fail": get("fail"),
                "lines": lines,
                "status": worst.name(),
            })
        );
    } else {
        out!("batch: {total} checks, {} pass, {} soft-fail, {} fail", get("pass"), get("soft-fail"), get("fail"));
    }
    // a failed line dominates; soft failures alone give the soft status
    if worst > Status::Soft {
        Status::Fail
    } else {
        worst
    }
}
