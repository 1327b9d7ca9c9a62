//! Grid scans of `x^5 + a x^2 + b`: configuration, parallel evaluation and
//! the CSV, JSON and discrepancy outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::DEFAULT_SEED;
use crate::ore::{index_divisor_verdict_seeded, Divides};
use crate::quintic::{
    quintic_verdict_with, thm_p2_condition, thm_p3_condition, ClosedForm, QuinticOptions,
    QuinticVerdict, Reading, Readings, ResidueReading,
};
use crate::zx::{IntPoly, Prime};

pub const SCAN_SCHEMA: &str = "oreindex.scan/1";
pub const LEDGER_SCHEMA: &str = "oreindex.discrepancies/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub a_range: (i64, i64),
    pub b_range: (i64, i64),
    pub primes: Vec<u64>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub ledger: Option<PathBuf>,
    pub jobs: usize,
    pub seed: u64,
    pub readings: Readings,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            a_range: (-20, 20),
            b_range: (-20, 20),
            primes: vec![2, 3, 5],
            csv: None,
            json: None,
            ledger: None,
            jobs: 1,
            seed: DEFAULT_SEED,
            readings: Readings::default(),
        }
    }
}

fn config_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

fn parse_range(v: &str) -> Option<(i64, i64)> {
    let (lo, hi) = v.split_once("..")?;
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

fn parse_reading(v: &str) -> Option<Reading> {
    match v {
        "printed" => Some(Reading::Printed),
        "proof" => Some(Reading::Proof),
        _ => None,
    }
}

impl ScanConfig {
    /// Parse `key = value` lines; `#` starts a comment. Keys: `a`, `b`
    /// (ranges `lo..hi`, inclusive), `primes` (comma separated), `csv`,
    /// `json`, `ledger`, `jobs`, `seed`, `residue` (`mod27`, `mod9`, `mod3`),
    /// `two_adic`, `congruence`, `linear_term` (`printed` or `proof`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ScanConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let n = i + 1;
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(n, "expected key = value"))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = || config_err(n, format!("invalid value for {k}: {v:?}"));
            match k {
                "a" => cfg.a_range = parse_range(v).ok_or_else(bad)?,
                "b" => cfg.b_range = parse_range(v).ok_or_else(bad)?,
                "primes" => {
                    cfg.primes = v
                        .split(',')
                        .map(|s| s.trim().parse::<u64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad())?
                }
                "csv" => cfg.csv = Some(PathBuf::from(v)),
                "json" => cfg.json = Some(PathBuf::from(v)),
                "ledger" => cfg.ledger = Some(PathBuf::from(v)),
                "jobs" => cfg.jobs = v.parse().map_err(|_| bad())?,
                "seed" => cfg.seed = v.parse().map_err(|_| bad())?,
                "residue" => {
                    cfg.readings.residue = match v {
                        "mod27" => ResidueReading::Mod27,
                        "mod9" => ResidueReading::Mod9,
                        "mod3" => ResidueReading::Mod3,
                        _ => return Err(bad()),
                    }
                }
                "two_adic" => cfg.readings.two_adic = parse_reading(v).ok_or_else(bad)?,
                "congruence" => cfg.readings.congruence = parse_reading(v).ok_or_else(bad)?,
                "linear_term" => cfg.readings.linear_term = parse_reading(v).ok_or_else(bad)?,
                _ => return Err(config_err(n, format!("unknown key {k:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("a", self.a_range), ("b", self.b_range)] {
            if lo > hi {
                return Err(Error::Config(format!("empty range for {name}: {lo}..{hi}")));
            }
        }
        if self.primes.is_empty() {
            return Err(Error::Config("no primes given".into()));
        }
        if let Some(p) = self.primes.iter().find(|p| ![2, 3, 5].contains(*p)) {
            return Err(Error::Config(format!("prime {p} is not one of 2, 3, 5")));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: i64,
    pub b: i64,
    pub irreducible: bool,
    pub t2_condition: String,
    pub t2_engine: String,
    pub t3_condition: String,
    pub t3_engine: String,
    pub consistent: bool,
    pub notes: String,
}

fn condition_cell(c: Option<&ClosedForm>) -> String {
    match c {
        None => String::new(),
        Some(c) => match (c.matched_condition, c.divides) {
            (Some(t), _) => t.to_string(),
            (None, Divides::Undetermined) => "undetermined".into(),
            (None, _) => "none".into(),
        },
    }
}

impl ScanRow {
    pub fn from_verdict(v: &QuinticVerdict) -> Self {
        let engine = |p: u64| {
            v.by_engine
                .get(&p)
                .map(|e| e.divides.to_string())
                .unwrap_or_default()
        };
        ScanRow {
            a: i64::try_from(&v.a).unwrap(),
            b: i64::try_from(&v.b).unwrap(),
            irreducible: v.irreducible,
            t2_condition: condition_cell(v.by_theorem.get(&2)),
            t2_engine: engine(2),
            t3_condition: condition_cell(v.by_theorem.get(&3)),
            t3_engine: engine(3),
            consistent: v.consistent,
            notes: v.notes.join("; "),
        }
    }
}

/// A disagreement between the closed form and the engine, with the closed
/// form re-evaluated under the other readings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub a: i64,
    pub b: i64,
    pub p: u64,
    pub engine: String,
    pub engine_witness: Option<String>,
    /// Closed-form verdict under each reading, keyed by the reading's name.
    pub readings: BTreeMap<String, String>,
    /// Readings whose closed form agrees with the engine.
    pub agreeing_readings: Vec<String>,
    /// The engine verdict recomputed with an unrelated factorization seed
    /// matches `engine`.
    pub reproduced: bool,
    pub classification: String,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub schema: String,
    pub a_range: (i64, i64),
    pub b_range: (i64, i64),
    pub primes: Vec<u64>,
    pub readings: String,
    pub seed: u64,
    pub pairs: u64,
    pub irreducible: u64,
    /// Engine verdict counts per prime, such as `"2:yes"`.
    pub engine_counts: BTreeMap<String, u64>,
    /// Rows per matched closed-form condition.
    pub condition_counts: BTreeMap<String, u64>,
    pub inconsistent: u64,
    pub engine_undetermined: u64,
    pub discrepancies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
    pub ledger: Vec<Discrepancy>,
}

fn alternative_readings(p: u64) -> Vec<Readings> {
    let mut out = vec![Readings::default(), Readings::proof()];
    if p == 3 {
        for residue in [ResidueReading::Mod9, ResidueReading::Mod3] {
            for base in [Readings::default(), Readings::proof()] {
                out.push(Readings { residue, ..base });
            }
        }
    }
    out
}

fn reading_name(p: u64, r: &Readings) -> String {
    if p == 2 {
        match r.two_adic {
            Reading::Printed => "two-adic=printed".into(),
            Reading::Proof => "two-adic=proof".into(),
        }
    } else {
        r.to_string()
            .split(',')
            .filter(|s| !s.starts_with("two-adic"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Seed used to recompute engine verdicts for ledger entries.
const REPRODUCE_SEED: u64 = 0x5eed_0f2e_7e57;

fn classify(engine: Divides, agreeing: &[String]) -> String {
    if engine == Divides::Undetermined {
        "engine undetermined".into()
    } else if agreeing.is_empty() {
        "closed-form erratum: no reading agrees with the engine".into()
    } else {
        format!("closed-form erratum: resolved by {}", agreeing.join(" | "))
    }
}

fn discrepancies(v: &QuinticVerdict) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for (&p, closed) in &v.by_theorem {
        if p >= 5 {
            continue;
        }
        let e = &v.by_engine[&p];
        if closed.divides == e.divides && e.divides != Divides::Undetermined {
            continue;
        }
        let mut readings = BTreeMap::new();
        let mut agreeing = Vec::new();
        for r in alternative_readings(p) {
            let c = if p == 2 {
                thm_p2_condition(&v.a, &v.b, r.two_adic)
            } else {
                thm_p3_condition(&v.a, &v.b, r)
            };
            let name = reading_name(p, &r);
            let cell = match c.matched_condition {
                Some(t) => format!("{} ({t})", c.divides),
                None => c.divides.to_string(),
            };
            if c.divides == e.divides && !agreeing.contains(&name) {
                agreeing.push(name.clone());
            }
            readings.insert(name, cell);
        }
        let f = IntPoly::quintic_trinomial(&v.a, &v.b);
        let again = Prime::new(p)
            .and_then(|pp| index_divisor_verdict_seeded(&f, pp, REPRODUCE_SEED))
            .map(|r| r.divides);
        out.push(Discrepancy {
            a: i64::try_from(&v.a).unwrap(),
            b: i64::try_from(&v.b).unwrap(),
            p,
            engine: e.divides.to_string(),
            engine_witness: e
                .witness_f
                .map(|f| format!("P_{f} = {} > N_{f} = {}", e.p_f.unwrap(), e.n_f.unwrap())),
            readings,
            reproduced: again == Ok(e.divides),
            classification: classify(e.divides, &agreeing),
            agreeing_readings: agreeing,
            trace: e.trace.clone(),
        });
    }
    out
}

/// Evaluate every `(a, b)` in the configured grid. Results are merged in
/// `(a, b)` order, so the output does not depend on `jobs`.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutput> {
    cfg.validate()?;
    let pairs: Vec<(i64, i64)> = (cfg.a_range.0..=cfg.a_range.1)
        .flat_map(|a| (cfg.b_range.0..=cfg.b_range.1).map(move |b| (a, b)))
        .collect();
    let opts = QuinticOptions {
        readings: cfg.readings,
        primes: cfg.primes.clone(),
        seed: cfg.seed,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let verdicts: Vec<QuinticVerdict> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(a, b)| quintic_verdict_with(&BigInt::from(a), &BigInt::from(b), &opts))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut summary = ScanSummary {
        schema: SCAN_SCHEMA.into(),
        a_range: cfg.a_range,
        b_range: cfg.b_range,
        primes: cfg.primes.clone(),
        readings: cfg.readings.to_string(),
        seed: cfg.seed,
        pairs: pairs.len() as u64,
        irreducible: 0,
        engine_counts: BTreeMap::new(),
        condition_counts: BTreeMap::new(),
        inconsistent: 0,
        engine_undetermined: 0,
        discrepancies: 0,
    };
    let mut rows = Vec::new();
    let mut ledger = Vec::new();
    for v in verdicts.iter().filter(|v| v.irreducible) {
        summary.irreducible += 1;
        for (p, e) in &v.by_engine {
            *summary
                .engine_counts
                .entry(format!("{p}:{}", e.divides))
                .or_default() += 1;
            if e.divides == Divides::Undetermined {
                summary.engine_undetermined += 1;
            }
        }
        for c in v.by_theorem.values() {
            if let Some(t) = c.matched_condition {
                *summary.condition_counts.entry(t.to_string()).or_default() += 1;
            }
        }
        if !v.consistent {
            summary.inconsistent += 1;
        }
        ledger.extend(discrepancies(v));
        rows.push(ScanRow::from_verdict(v));
    }
    summary.discrepancies = ledger.len() as u64;
    Ok(ScanOutput {
        rows,
        summary,
        ledger,
    })
}

pub fn rows_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Config(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).unwrap())
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ScanRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    schema: &'static str,
    summary: &'a ScanSummary,
    rows: &'a [ScanRow],
}

#[derive(Serialize)]
struct LedgerDoc<'a> {
    schema: &'static str,
    entries: &'a [Discrepancy],
}

pub fn rows_to_json(out: &ScanOutput) -> String {
    let doc = JsonDoc {
        schema: SCAN_SCHEMA,
        summary: &out.summary,
        rows: &out.rows,
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

pub fn ledger_to_json(entries: &[Discrepancy]) -> String {
    let doc = LedgerDoc {
        schema: LEDGER_SCHEMA,
        entries,
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

/// Human-readable summary.
pub fn render_summary(s: &ScanSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "grid a in {}..{}, b in {}..{}: {} pairs, {} irreducible",
        s.a_range.0, s.a_range.1, s.b_range.0, s.b_range.1, s.pairs, s.irreducible
    );
    let _ = writeln!(out, "readings: {}", s.readings);
    for (k, n) in &s.engine_counts {
        let _ = writeln!(out, "engine {k}: {n}");
    }
    for (k, n) in &s.condition_counts {
        let _ = writeln!(out, "condition {k}: {n}");
    }
    let _ = writeln!(
        out,
        "inconsistent rows: {}, engine undetermined: {}, discrepancies: {}",
        s.inconsistent, s.engine_undetermined, s.discrepancies
    );
    out
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Write whichever outputs the configuration names.
pub fn write_outputs(cfg: &ScanConfig, out: &ScanOutput) -> Result<()> {
    if let Some(p) = &cfg.csv {
        write_file(p, &rows_to_csv(&out.rows)?)?;
    }
    if let Some(p) = &cfg.json {
        write_file(p, &rows_to_json(out))?;
    }
    if let Some(p) = &cfg.ledger {
        write_file(p, &ledger_to_json(&out.ledger))?;
    }
    Ok(())
}
