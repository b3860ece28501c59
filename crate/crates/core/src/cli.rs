//! The command layer behind the `rider-types` binary.
//!
//! Each command returns an [`Outcome`]: a JSON report for standard output, a
//! few summary lines for standard error, and an exit status.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::boards::Board;
use crate::cache::Cache;
use crate::census::{
    count_nonattacking, fours_witness, geometric_census, grid_census, random_census, stabilized_census, Census, Engine,
    StabilizeError,
};
use crate::error::Error;
use crate::finitefield::{torus_count, types_ff_with, FfOptions, FfResult};
use crate::formulas::{eval_quasipoly, find_period, fit_quasipoly, known_types, parse_bfile, t3_closed_form};
use crate::geometry::MoveSet;
use crate::signature::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Mismatch = 1,
    Usage = 2,
    Engine = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Exit status for an error: malformed input is a usage error, everything
/// else an engine error.
pub fn status_for(e: &Error) -> Status {
    match e {
        Error::ZeroMove
        | Error::EmptyMoveSet
        | Error::DuplicateSlope { .. }
        | Error::Parse(_)
        | Error::InvalidBoard(_)
        | Error::InvalidArgument(_)
        | Error::Io(_) => Status::Usage,
        _ => Status::Engine,
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub summary: Vec<String>,
}

impl Outcome {
    fn error(command: &str, e: &Error) -> Outcome {
        Outcome {
            status: status_for(e),
            report: json!({ "command": command, "error": e.to_string() }),
            summary: vec![format!("error: {e}")],
        }
    }
}

/// Parameters of the `types` and `count` commands.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub moves: String,
    pub board: String,
    pub q: usize,
    /// Single board order; for `types --engine grid` it skips stabilization.
    pub n: Option<u64>,
    /// Inclusive range of orders for `count`.
    pub n_range: Option<(u64, u64)>,
    pub n_max: u64,
    pub window: u64,
    pub engine: Engine,
    pub samples: u64,
    pub seed: u64,
    pub prime_floor: u64,
    pub refinement: usize,
    pub check: bool,
    pub cache_dir: Option<PathBuf>,
    /// Local b-file to compare `count` output against.
    pub compare: Option<PathBuf>,
    /// Use labelled counts in b-file output and comparison.
    pub labelled: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            moves: "queen".into(),
            board: "square".into(),
            q: 2,
            n: None,
            n_range: None,
            n_max: 24,
            window: 8,
            engine: Engine::Geometric,
            samples: 100_000,
            seed: 0,
            prime_floor: 11,
            refinement: 1,
            check: false,
            cache_dir: None,
            compare: None,
            labelled: false,
        }
    }
}

fn open_cache(dir: &Option<PathBuf>) -> Result<Option<Cache>, Error> {
    match dir {
        Some(d) => Cache::new(d).map(Some),
        None => Cache::from_env().transpose(),
    }
}

fn big(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(v) => json!(v),
        Err(_) => json!(v.to_string()),
    }
}

fn verdict(q: usize, r: usize, size: u64) -> (Value, Option<bool>) {
    match known_types(q, r) {
        Some(k) => (
            json!({ "value": k.value, "annotation": k.annotation }),
            Some(k.value == size),
        ),
        None => (Value::Null, None),
    }
}

fn run_ff(ms: &MoveSet, q: usize, floor: u64, cache: Option<&Cache>) -> Result<FfResult, Error> {
    let opts = FfOptions {
        prime_floor: floor,
        ..FfOptions::default()
    };
    types_ff_with(ms, q, &opts, &mut |ms, q, p| match cache {
        Some(c) => c.prime_count(ms, q, p),
        None => torus_count(ms, q, p),
    })
}

fn census_key(spec: &RunSpec, ms: &MoveSet, board: &Board) -> String {
    let mut parts = vec![
        "census".to_string(),
        spec.engine.to_string(),
        ms.to_string(),
        spec.q.to_string(),
    ];
    match spec.engine {
        Engine::Grid => parts.extend([
            board.to_string(),
            format!("{:?}", spec.n),
            spec.n_max.to_string(),
            spec.window.to_string(),
        ]),
        Engine::Geometric => parts.push(spec.refinement.to_string()),
        Engine::Random => parts.extend([spec.samples.to_string(), spec.seed.to_string()]),
        Engine::Ff => {}
    }
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    Cache::key(&refs)
}

pub fn cmd_types(spec: &RunSpec) -> Outcome {
    match types_inner(spec) {
        Ok(o) => o,
        Err(e) => Outcome::error("types", &e),
    }
}

fn types_inner(spec: &RunSpec) -> Result<Outcome, Error> {
    let ms = MoveSet::parse(&spec.moves)?;
    let board = Board::parse(&spec.board)?;
    if spec.q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let cache = open_cache(&spec.cache_dir)?;
    let r = ms.r();
    let mut report = json!({
        "command": "types",
        "engine": spec.engine,
        "moves": ms.to_string(),
        "q": spec.q,
        "r": r,
    });
    let mut status = Status::Pass;
    let mut summary = Vec::new();
    let size: u64;
    if spec.engine == Engine::Ff {
        let res = run_ff(&ms, spec.q, spec.prime_floor, cache.as_ref())?;
        size = res
            .unlabelled
            .to_u64()
            .ok_or_else(|| Error::Unsupported("type count exceeds u64".into()))?;
        report["size"] = json!(size);
        report["labelled"] = json!(res.labelled.to_string());
        report["exact"] = json!(true);
        report["ff"] = serde_json::to_value(&res)?;
    } else {
        let key = census_key(spec, &ms, &board);
        let cached: Option<(Census, Value)> = cache.as_ref().and_then(|c| c.get(&key));
        let (census, extra) = match cached {
            Some(hit) => hit,
            None => {
                let computed = match spec.engine {
                    Engine::Geometric => (geometric_census(&ms, spec.q, spec.refinement)?, Value::Null),
                    Engine::Random => (random_census(&ms, spec.q, spec.samples, spec.seed)?, Value::Null),
                    Engine::Grid => match spec.n {
                        Some(n) => (grid_census(&ms, &board, n, spec.q)?, Value::Null),
                        None => match stabilized_census(&ms, &board, spec.q, 1, spec.n_max, spec.window) {
                            Ok((c, rep)) => (c, json!({ "stabilization": rep })),
                            Err(StabilizeError::Engine(e)) => return Err(e),
                            Err(StabilizeError::Unstable { partial, report: rep }) => {
                                status = Status::Engine;
                                summary.push(format!("census still growing at n={}", spec.n_max));
                                (*partial, json!({ "stabilization": rep, "unstable": true }))
                            }
                        },
                    },
                    Engine::Ff => unreachable!(),
                };
                if let (Some(c), Status::Pass) = (&cache, status) {
                    c.put(&key, &computed)?;
                }
                computed
            }
        };
        size = census.size as u64;
        report["size"] = json!(census.size);
        report["labelled"] = json!(census.labelled_count);
        report["exact"] = json!(census.exact);
        report["meta"] = serde_json::to_value(&census.meta)?;
        report["types"] = serde_json::to_value(&census.types)?;
        if let Value::Object(extra) = extra {
            for (k, v) in extra {
                report[k] = v;
            }
        }
    }
    let (known, agrees) = verdict(spec.q, r, size);
    report["known"] = known;
    report["verdict"] = json!(match agrees {
        Some(true) => "match",
        Some(false) => "mismatch",
        None => "unknown",
    });
    summary.push(format!(
        "{} types of {} pieces with moves {} ({} engine)",
        size, spec.q, ms, spec.engine
    ));
    if spec.check && agrees == Some(false) && status == Status::Pass {
        status = Status::Mismatch;
        summary.push("golden table disagrees".into());
    }
    Ok(Outcome {
        status,
        report,
        summary,
    })
}

pub fn cmd_count(spec: &RunSpec) -> Outcome {
    match count_inner(spec) {
        Ok(o) => o,
        Err(e) => Outcome::error("count", &e),
    }
}

fn count_inner(spec: &RunSpec) -> Result<Outcome, Error> {
    let ms = MoveSet::parse(&spec.moves)?;
    let board = Board::parse(&spec.board)?;
    let (lo, hi) = match (spec.n_range, spec.n) {
        (Some(range), _) => range,
        (None, Some(n)) => (n, n),
        (None, None) => return Err(Error::InvalidArgument("count needs --n or --range".into())),
    };
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
    }
    let mut rows = Vec::new();
    let mut bfile = String::new();
    let mut values = Vec::new();
    for n in lo..=hi {
        let c = count_nonattacking(&ms, &board, n, spec.q)?;
        let v = if spec.labelled { c.labelled } else { c.unlabelled };
        bfile.push_str(&format!("{n} {v}\n"));
        values.push((n as i64, BigInt::from(v)));
        rows.push(json!({ "n": n, "labelled": big(c.labelled), "unlabelled": big(c.unlabelled) }));
    }
    let mut report = json!({
        "command": "count",
        "moves": ms.to_string(),
        "board": board.to_string(),
        "q": spec.q,
        "counts": rows,
        "bfile": bfile,
    });
    let mut status = Status::Pass;
    let mut summary = vec![format!("counted n = {lo}..={hi}")];
    if let Some(path) = &spec.compare {
        let text = std::fs::read_to_string(path)?;
        let reference = parse_bfile(&text)?;
        let mut compared = 0;
        let mut mismatches = Vec::new();
        for (n, v) in &values {
            if let Some((_, w)) = reference.iter().find(|(m, _)| m == n) {
                compared += 1;
                if v != w {
                    mismatches.push(json!({ "n": n, "computed": v.to_string(), "reference": w.to_string() }));
                }
            }
        }
        if !mismatches.is_empty() {
            status = Status::Mismatch;
        }
        summary.push(format!("{compared} terms compared, {} mismatches", mismatches.len()));
        report["comparison"] = json!({ "compared": compared, "mismatches": mismatches });
    }
    Ok(Outcome {
        status,
        report,
        summary,
    })
}

/// Parameters of the `fit` command.
#[derive(Debug, Clone)]
pub struct FitSpec {
    pub data: PathBuf,
    /// `None` searches periods up to `max_period`.
    pub period: Option<usize>,
    pub max_period: usize,
    pub q: usize,
    /// Polynomial degree; defaults to `2q`.
    pub degree: Option<usize>,
    /// The data counts unordered placements.
    pub unlabelled: bool,
    /// Move set, for comparison with the table of known values.
    pub moves: Option<String>,
}

pub fn cmd_fit(spec: &FitSpec) -> Outcome {
    match fit_inner(spec) {
        Ok(o) => o,
        Err(e @ (Error::InconsistentData { .. } | Error::InsufficientData { .. })) => {
            let mut o = Outcome::error("fit", &e);
            o.status = Status::Engine;
            o.report["residual"] = json!(match &e {
                Error::InconsistentData { n, residual } => json!({ "n": n, "residual": residual }),
                _ => Value::Null,
            });
            o
        }
        Err(e) => Outcome::error("fit", &e),
    }
}

fn fit_inner(spec: &FitSpec) -> Result<Outcome, Error> {
    if spec.q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let text = std::fs::read_to_string(&spec.data)?;
    let mut data = parse_bfile(&text)?;
    let qf = BigInt::from(factorial(spec.q));
    if spec.unlabelled {
        for (_, v) in data.iter_mut() {
            *v *= &qf;
        }
    }
    let degree = spec.degree.unwrap_or(2 * spec.q);
    let qp = match spec.period {
        Some(period) => fit_quasipoly(&data, period, degree)?,
        None => find_period(&data, degree, spec.max_period)
            .ok_or_else(|| Error::Unsupported(format!("no period up to {} fits the data", spec.max_period)))?,
    };
    let at = eval_quasipoly(&qp, -1);
    if !at.is_integer() {
        return Err(Error::InexactDivision {
            value: at.to_string(),
            divisor: "1".into(),
        });
    }
    let labelled = at.to_integer();
    let unlabelled = &labelled / &qf;
    if &unlabelled * &qf != labelled {
        return Err(Error::InexactDivision {
            value: labelled.to_string(),
            divisor: qf.to_string(),
        });
    }
    let mut report = json!({
        "command": "fit",
        "q": spec.q,
        "period": qp.period,
        "degree": qp.degree,
        "points": data.len(),
        "quasipolynomial": qp,
        "labelled": labelled.to_string(),
        "unlabelled": unlabelled.to_string(),
    });
    let mut status = Status::Pass;
    let mut summary = vec![format!("value at -1: {labelled} labelled, {unlabelled} unlabelled")];
    if let Some(m) = &spec.moves {
        let ms = MoveSet::parse(m)?;
        let (known, agrees) = verdict(spec.q, ms.r(), unlabelled.to_u64().unwrap_or(u64::MAX));
        report["known"] = known;
        report["verdict"] = json!(match agrees {
            Some(true) => "match",
            Some(false) => "mismatch",
            None => "unknown",
        });
        if agrees == Some(false) {
            status = Status::Mismatch;
            summary.push("golden table disagrees".into());
        }
    }
    Ok(Outcome {
        status,
        report,
        summary,
    })
}

/// Distinct move sets with `r` moves: a queen-subset pencil, a nightrider
/// pencil, a trident-first pencil, then seeded random pencils with small
/// coordinates.
pub fn move_set_family(r: usize, count: usize) -> Vec<MoveSet> {
    const QUEENISH: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];
    const NIGHTRIDER: [(i64, i64); 6] = [(1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1)];
    const TRIDENT: [(i64, i64); 6] = [(0, 1), (1, 1), (1, -1), (2, 1), (1, -3), (3, 2)];
    let mut out: Vec<MoveSet> = Vec::new();
    let push = |ms: MoveSet, out: &mut Vec<MoveSet>| {
        if out.len() < count && !out.contains(&ms) {
            out.push(ms);
        }
    };
    if r <= 6 {
        for base in [&QUEENISH, &NIGHTRIDER, &TRIDENT] {
            push(MoveSet::from_pairs(&base[..r]).expect("distinct slopes"), &mut out);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(r as u64);
    while out.len() < count {
        let mut pairs: Vec<(i64, i64)> = Vec::new();
        while pairs.len() < r {
            let c = rng.gen_range(-3..=3);
            let d = rng.gen_range(-3..=3);
            let mut candidate = pairs.clone();
            candidate.push((c, d));
            if MoveSet::from_pairs(&candidate).is_ok() {
                pairs = candidate;
            }
        }
        push(MoveSet::from_pairs(&pairs).expect("checked"), &mut out);
    }
    out
}

/// Witness search budget used by `verify fours`.
pub const FOURS_BUDGET: usize = 20_000;

/// The `r = 3` move sets checked by `verify thm-3move` and `verify fours`.
pub fn three_move_sets() -> Vec<MoveSet> {
    vec![
        MoveSet::named("semiqueen").expect("named"),
        MoveSet::named("trident").expect("named"),
        MoveSet::from_pairs(&[(1, 0), (1, 2), (1, -2)]).expect("distinct slopes"),
    ]
}

struct Checks {
    rows: Vec<Value>,
    failed: usize,
}

impl Checks {
    fn new() -> Self {
        Checks {
            rows: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, name: String, pass: bool, detail: Value) {
        if !pass {
            self.failed += 1;
        }
        self.rows.push(json!({ "check": name, "pass": pass, "detail": detail }));
    }

    fn compare(&mut self, name: String, got: Result<u64, Error>, expected: u64) {
        match got {
            Ok(v) => self.record(name, v == expected, json!({ "got": v, "expected": expected })),
            Err(e) => self.record(name, false, json!({ "error": e.to_string(), "expected": expected })),
        }
    }
}

fn ff_size(ms: &MoveSet, q: usize, cache: Option<&Cache>) -> Result<u64, Error> {
    let res = run_ff(ms, q, 11, cache)?;
    res.unlabelled
        .to_u64()
        .ok_or_else(|| Error::Unsupported("type count exceeds u64".into()))
}

fn geo_size(ms: &MoveSet, q: usize) -> Result<u64, Error> {
    geometric_census(ms, q, 1).map(|c| c.size as u64)
}

pub fn cmd_verify(name: &str, cache_dir: &Option<PathBuf>) -> Outcome {
    let cache = match open_cache(cache_dir) {
        Ok(c) => c,
        Err(e) => return Outcome::error("verify", &e),
    };
    let cache = cache.as_ref();
    let mut checks = Checks::new();
    let mut extra = Value::Null;
    match name {
        "table1" => {
            for q in 1..=4 {
                for r in 1..=6 {
                    let Some(k) = known_types(q, r) else { continue };
                    let ms = &move_set_family(r, 1)[0];
                    if q <= 3 {
                        checks.compare(format!("geometric q={q} r={r} [{ms}]"), geo_size(ms, q), k.value);
                    }
                    checks.compare(format!("ff q={q} r={r} [{ms}]"), ff_size(ms, q, cache), k.value);
                }
            }
            // larger cells take minutes; q=6, r=2 alone needs about 80 s
            for (q, r) in [(5, 1), (5, 2), (6, 1)] {
                let Some(k) = known_types(q, r) else { continue };
                let ms = &move_set_family(r, 1)[0];
                checks.compare(format!("geometric q={q} r={r} [{ms}]"), geo_size(ms, q), k.value);
            }
        }
        "thm-q3" => {
            for r in 1..=6 {
                let expected = t3_closed_form(r as u64).expect("r ≥ 1");
                for ms in move_set_family(r, 5) {
                    checks.compare(format!("geometric r={r} [{ms}]"), geo_size(&ms, 3), expected);
                    checks.compare(format!("ff r={r} [{ms}]"), ff_size(&ms, 3, cache), expected);
                }
            }
        }
        "thm-3move" => {
            for q in 1..=4 {
                let expected = known_types(q, 3).expect("r=3 column is known for q ≤ 4").value;
                for ms in three_move_sets() {
                    checks.compare(format!("ff q={q} [{ms}]"), ff_size(&ms, q, cache), expected);
                }
            }
        }
        "fours" => {
            let mut found = Vec::new();
            let queen = MoveSet::named("queen").expect("named");
            let mut sets = vec![(queen, true)];
            sets.extend(three_move_sets().into_iter().map(|ms| (ms, false)));
            for (ms, want) in sets {
                match fours_witness(&ms, FOURS_BUDGET) {
                    Ok(w) => {
                        let detail = json!({ "witness": w, "expected_witness": want });
                        checks.record(format!("witness [{ms}]"), w.is_some() == want, detail);
                        if let Some(w) = w {
                            found.push(json!({ "moves": ms.to_string(), "witness": w }));
                        }
                    }
                    Err(e) => checks.record(format!("witness [{ms}]"), false, json!({ "error": e.to_string() })),
                }
            }
            extra = json!({ "budget": FOURS_BUDGET, "witnesses": found });
        }
        other => {
            return Outcome::error(
                "verify",
                &Error::InvalidArgument(format!(
                    "unknown check {other:?}; expected table1, thm-q3, thm-3move or fours"
                )),
            )
        }
    }
    let total = checks.rows.len();
    let summary: Vec<String> = checks
        .rows
        .iter()
        .map(|row| {
            format!(
                "{} {}",
                if row["pass"] == json!(true) { "PASS" } else { "FAIL" },
                row["check"].as_str().unwrap_or_default()
            )
        })
        .chain(std::iter::once(format!(
            "{}/{} checks passed",
            total - checks.failed,
            total
        )))
        .collect();
    let mut report = json!({
        "command": "verify",
        "name": name,
        "checks": checks.rows,
        "passed": total - checks.failed,
        "failed": checks.failed,
    });
    if !extra.is_null() {
        report["extra"] = extra;
    }
    Outcome {
        status: if checks.failed == 0 {
            Status::Pass
        } else {
            Status::Mismatch
        },
        report,
        summary,
    }
}

/// Distinct move-set strings in a family, for reports.
pub fn family_names(sets: &[MoveSet]) -> BTreeSet<String> {
    sets.iter().map(MoveSet::to_string).collect()
}
