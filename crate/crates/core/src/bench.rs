//! Benchmark suites over the random graph families.
//!
//! A suite is a TOML file:
//!
//! ```toml
//! timeout_ms = 1000000
//!
//! [[row]]
//! label = "rare-50"
//! family = "rare"          # or "grunert", which also takes min_p and b
//! k = 50
//! max_p = 50
//! a = 0.1
//! seeds = [0, 1, 2, 3, 4]
//! algorithms = ["kpkc", "findclique"]
//! mode = "any"             # first, any or all
//! ```
//!
//! Each (row, seed, algorithm) gives one CSV record. Only the search is
//! timed; a timed-out search reports `nan` milliseconds.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::bitgraph::KPartiteGraph;
use crate::engines::{search, Algorithm, BruteError};
use crate::randgen::{gen_grunert, gen_rare, GrunertParams, ParamsError, RareAttractionParams};

pub const CSV_HEADER: &str = "label,family,params,algorithm,mode,outcome,millis,cliques";

/// Timeout used when the suite does not set one.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(1000);

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("suite file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("row {label:?}: {msg}")]
    Row { label: String, msg: String },
    #[error("row {label:?}: {source}")]
    Params { label: String, source: ParamsError },
    #[error(transparent)]
    Search(#[from] BruteError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first clique and keep it.
    First,
    /// Stop at the first clique, only its existence matters.
    Any,
    /// Enumerate and count every clique.
    All,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::First => "first",
            Mode::Any => "any",
            Mode::All => "all",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(Mode::First),
            "any" => Ok(Mode::Any),
            "all" => Ok(Mode::All),
            other => Err(format!("unknown mode {other:?} (expected first, any or all)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Grunert { k: usize, min_p: usize, max_p: usize, a: f64, b: f64 },
    Rare { k: usize, max_p: usize, a: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grunert { .. } => "grunert",
            Family::Rare { .. } => "rare",
        }
    }

    pub fn generate(&self, seed: u64) -> Result<KPartiteGraph, ParamsError> {
        match *self {
            Family::Grunert { k, min_p, max_p, a, b } => gen_grunert(&GrunertParams { k, min_p, max_p, a, b, seed }),
            Family::Rare { k, max_p, a } => gen_rare(&RareAttractionParams { k, max_p, a, seed }),
        }
    }

    pub fn params(&self, seed: u64) -> String {
        match *self {
            Family::Grunert { k, min_p, max_p, a, b } => GrunertParams { k, min_p, max_p, a, b, seed }.to_string(),
            Family::Rare { k, max_p, a } => RareAttractionParams { k, max_p, a, seed }.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub label: String,
    pub family: Family,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    pub mode: Mode,
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub timeout: Duration,
    pub rows: Vec<SuiteRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    timeout_ms: Option<u64>,
    #[serde(default)]
    row: Vec<RowFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RowFile {
    label: String,
    family: String,
    k: usize,
    min_p: Option<usize>,
    max_p: usize,
    a: f64,
    b: Option<f64>,
    seeds: Vec<u64>,
    algorithms: Vec<String>,
    mode: String,
}

impl RowFile {
    fn into_row(self) -> Result<SuiteRow, BenchError> {
        let label = self.label;
        let err = |msg: String| BenchError::Row { label: label.clone(), msg };
        let family = match self.family.as_str() {
            "grunert" => {
                let min_p = self.min_p.ok_or_else(|| err("grunert rows need min_p".into()))?;
                let b = self.b.ok_or_else(|| err("grunert rows need b".into()))?;
                Family::Grunert { k: self.k, min_p, max_p: self.max_p, a: self.a, b }
            }
            "rare" => {
                if self.min_p.is_some() || self.b.is_some() {
                    return Err(err("rare rows take only k, max_p and a".into()));
                }
                Family::Rare { k: self.k, max_p: self.max_p, a: self.a }
            }
            other => return Err(err(format!("unknown family {other:?}"))),
        };
        let algorithms =
            self.algorithms.iter().map(|a| a.parse::<Algorithm>()).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let mode = self.mode.parse::<Mode>().map_err(err)?;
        if self.seeds.is_empty() || algorithms.is_empty() {
            return Err(err("a row needs at least one seed and one algorithm".into()));
        }
        Ok(SuiteRow { label, family, seeds: self.seeds, algorithms, mode })
    }
}

pub fn parse_suite(text: &str) -> Result<Suite, BenchError> {
    let file: SuiteFile = toml::from_str(text)?;
    let timeout = file.timeout_ms.map(Duration::from_millis).unwrap_or(DEFAULT_TIMEOUT);
    let rows = file.row.into_iter().map(RowFile::into_row).collect::<Result<Vec<_>, _>>()?;
    Ok(Suite { timeout, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Found,
    None,
    Timeout,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Found => "found",
            Outcome::None => "none",
            Outcome::Timeout => "timeout",
        }
    }
}

/// One timed search: what it found, how long it took (`None` on timeout)
/// and, in `all` mode, how many cliques it counted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub outcome: Outcome,
    pub millis: Option<f64>,
    pub cliques: Option<u64>,
}

pub fn measure(g: &KPartiteGraph, algorithm: Algorithm, mode: Mode, timeout: Duration) -> Result<Measurement, BruteError> {
    let started = Instant::now();
    let mut it = search(g, algorithm, Some(started + timeout))?;
    let (found, cliques) = match mode {
        Mode::First | Mode::Any => (it.next().is_some(), None),
        Mode::All => {
            let count = it.by_ref().count() as u64;
            (count > 0, Some(count))
        }
    };
    let elapsed = started.elapsed();
    if it.timed_out() {
        return Ok(Measurement { outcome: Outcome::Timeout, millis: None, cliques: None });
    }
    let outcome = if found { Outcome::Found } else { Outcome::None };
    Ok(Measurement { outcome, millis: Some(elapsed.as_secs_f64() * 1e3), cliques })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub label: String,
    pub family: &'static str,
    pub params: String,
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub measurement: Measurement,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let m = &self.measurement;
        let millis = m.millis.map_or("nan".to_string(), |x| format!("{x:.3}"));
        let cliques = m.cliques.map_or(String::new(), |c| c.to_string());
        format!(
            "{},{},{},{},{},{},{},{}",
            csv_field(&self.label),
            self.family,
            csv_field(&self.params),
            self.algorithm,
            self.mode.name(),
            m.outcome.name(),
            millis,
            cliques
        )
    }
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.csv_row())
    }
}

/// Runs every (row, seed, algorithm) of the suite on `jobs` threads. Each
/// search stays single-threaded; records come back in suite order.
pub fn run_suite(suite: &Suite, jobs: usize) -> Result<Vec<BenchRecord>, BenchError> {
    let tasks: Vec<(&SuiteRow, u64, Algorithm)> = suite
        .rows
        .iter()
        .flat_map(|row| row.seeds.iter().flat_map(move |&s| row.algorithms.iter().map(move |&a| (row, s, a))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|&(row, seed, algorithm)| {
                let g = row
                    .family
                    .generate(seed)
                    .map_err(|source| BenchError::Params { label: row.label.clone(), source })?;
                let measurement = measure(&g, algorithm, row.mode, suite.timeout)?;
                Ok(BenchRecord {
                    label: row.label.clone(),
                    family: row.family.name(),
                    params: row.family.params(seed),
                    algorithm,
                    mode: row.mode,
                    measurement,
                })
            })
            .collect()
    })
}

/// Median of the measured times, with timeouts counted as infinite.
pub fn median_millis(records: &[&BenchRecord]) -> f64 {
    let mut xs: Vec<f64> = records.iter().map(|r| r.measurement.millis.unwrap_or(f64::INFINITY)).collect();
    xs.sort_by(f64::total_cmp);
    match xs.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => xs[n / 2],
        n => (xs[n / 2 - 1] + xs[n / 2]) / 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUITE: &str = r#"
timeout_ms = 5000

[[row]]
label = "small"
family = "grunert"
k = 3
min_p = 2
max_p = 4
a = 0.5
b = 0.9
seeds = [1, 2]
algorithms = ["kpkc", "brute"]
mode = "all"

[[row]]
label = "rare"
family = "rare"
k = 4
max_p = 5
a = 0.3
seeds = [7]
algorithms = ["findclique"]
mode = "any"
"#;

    #[test]
    fn parses_and_runs_a_suite() {
        let suite = parse_suite(SUITE).unwrap();
        assert_eq!(suite.timeout, Duration::from_millis(5000));
        assert_eq!(suite.rows.len(), 2);
        let records = run_suite(&suite, 2).unwrap();
        assert_eq!(records.len(), 5);
        assert_eq!(records[0].measurement.cliques, records[1].measurement.cliques);
        assert!(records.iter().all(|r| r.measurement.outcome != Outcome::Timeout));
        assert_eq!(records[4].csv_row().split(',').count(), 8);
    }

    #[test]
    fn rejects_bad_rows() {
        let missing_b = SUITE.replace("b = 0.9\n", "");
        assert!(matches!(parse_suite(&missing_b), Err(BenchError::Row { .. })));
        let bad_alg = SUITE.replace("\"brute\"", "\"cliquer\"");
        assert!(matches!(parse_suite(&bad_alg), Err(BenchError::Row { .. })));
        assert!(matches!(parse_suite("row = 3"), Err(BenchError::Toml(_))));
    }

    #[test]
    fn timeout_prints_nan() {
        let r = BenchRecord {
            label: "x,y".into(),
            family: "rare",
            params: "k=1".into(),
            algorithm: Algorithm::Kpkc,
            mode: Mode::Any,
            measurement: Measurement { outcome: Outcome::Timeout, millis: None, cliques: None },
        };
        assert_eq!(r.csv_row(), "\"x,y\",rare,k=1,kpkc,any,timeout,nan,");
    }

    #[test]
    fn median_counts_timeouts_as_slowest() {
        let mk = |millis| BenchRecord {
            label: String::new(),
            family: "rare",
            params: String::new(),
            algorithm: Algorithm::Kpkc,
            mode: Mode::Any,
            measurement: Measurement { outcome: Outcome::Found, millis, cliques: None },
        };
        let rs = [mk(Some(3.0)), mk(None), mk(Some(1.0))];
        assert_eq!(median_millis(&rs.iter().collect::<Vec<_>>()), 3.0);
    }
}
