//! Benchmark harness: run reducers over a manifest of datasets and report
//! reduct size, spatial similarity, rule count and runtime per run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::dataset::{read_csv, ColumnRef, DecisionTable, LoadOptions};
use crate::discern::DEFAULT_REDUCT_LIMIT;
use crate::error::{Error, Result};
use crate::metrics::{self, SpsParams};
use crate::partition::Partition;
use crate::reducers::{self, Algorithm, InconsistencyPolicy, ReduceOptions};
use crate::sets::AttrSet;

/// Exact CSV header of an emitted report.
pub const CSV_HEADER: [&str; 7] = [
    "dataset",
    "algorithm",
    "alpha",
    "n_attributes",
    "spatial_similarity",
    "rule_count",
    "runtime_ms",
];

const SIMILARITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_alphas")]
    alphas: Vec<f64>,
    #[serde(default = "default_limit")]
    discern_limit: usize,
    #[serde(default, rename = "dataset")]
    datasets: Vec<RawDataset>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    name: String,
    path: PathBuf,
    decision: Option<String>,
    id_column: Option<String>,
    #[serde(default)]
    policy: Option<String>,
    sha256: Option<String>,
    objects: Option<usize>,
    conditions: Option<usize>,
    algorithms: Option<Vec<String>>,
    #[serde(default)]
    expect: Vec<RawExpectation>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpectation {
    algorithm: String,
    n_attributes: Option<usize>,
    #[serde(default)]
    attributes_tolerance: usize,
    similarity: Option<f64>,
    #[serde(default = "default_similarity_tolerance")]
    similarity_tolerance: f64,
    min_similarity: Option<f64>,
}

fn default_alphas() -> Vec<f64> {
    vec![0.5]
}

fn default_limit() -> usize {
    DEFAULT_REDUCT_LIMIT
}

fn default_similarity_tolerance() -> f64 {
    0.01
}

/// A reference result a dataset's runs are compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub algorithm: Algorithm,
    pub n_attributes: Option<usize>,
    pub attributes_tolerance: usize,
    pub similarity: Option<f64>,
    pub similarity_tolerance: f64,
    pub min_similarity: Option<f64>,
}

impl Expectation {
    pub fn matches(&self, row: &BenchRow) -> bool {
        let size_ok = self
            .n_attributes
            .is_none_or(|n| row.n_attributes.abs_diff(n) <= self.attributes_tolerance);
        let sim_ok = self.similarity.is_none_or(|s| {
            (row.spatial_similarity - s).abs() <= self.similarity_tolerance + SIMILARITY_SLACK
        });
        let min_ok = self
            .min_similarity
            .is_none_or(|m| row.spatial_similarity >= m - SIMILARITY_SLACK);
        size_ok && sim_ok && min_ok
    }

    /// Lexicographic gap: attribute-count excess first, then similarity.
    fn gap(&self, row: &BenchRow) -> (usize, f64) {
        let size = self.n_attributes.map_or(0, |n| {
            row.n_attributes
                .abs_diff(n)
                .saturating_sub(self.attributes_tolerance)
        });
        let mut sim = 0.0f64;
        if let Some(s) = self.similarity {
            sim = sim.max((row.spatial_similarity - s).abs() - self.similarity_tolerance);
        }
        if let Some(m) = self.min_similarity {
            sim = sim.max(m - row.spatial_similarity);
        }
        (size, sim.max(0.0))
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n_attributes {
            if self.attributes_tolerance == 0 {
                parts.push(format!("{n} attributes"));
            } else {
                parts.push(format!("{n}±{} attributes", self.attributes_tolerance));
            }
        }
        if let Some(s) = self.similarity {
            parts.push(format!(
                "similarity {s:.2}±{:.2}",
                self.similarity_tolerance
            ));
        }
        if let Some(m) = self.min_similarity {
            parts.push(format!("similarity ≥ {m:.2}"));
        }
        parts.join(", ")
    }
}

#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub name: String,
    /// Resolved against the config file's directory.
    pub path: PathBuf,
    pub options: LoadOptions,
    pub policy: InconsistencyPolicy,
    pub sha256: Option<String>,
    pub objects: Option<usize>,
    pub conditions: Option<usize>,
    pub algorithms: Vec<Algorithm>,
    pub expectations: Vec<Expectation>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub datasets: Vec<DatasetSpec>,
    /// α values for SRS runs.
    pub alphas: Vec<f64>,
    pub discern_limit: usize,
}

fn parse_with<T: FromStr<Err = Error>>(s: &str) -> Result<T> {
    s.parse()
}

fn check_alphas(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::Config("alpha grid is empty".into()));
    }
    if let Some(bad) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::Config(format!("alpha {bad} outside [0, 1]")));
    }
    Ok(())
}

impl BenchConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml(&text, base)
    }

    /// Parses a TOML manifest; relative dataset paths are joined to `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        check_alphas(&raw.alphas)?;
        let mut datasets = Vec::with_capacity(raw.datasets.len());
        for d in raw.datasets {
            if datasets.iter().any(|s: &DatasetSpec| s.name == d.name) {
                return Err(Error::Config(format!("dataset `{}` listed twice", d.name)));
            }
            let options = LoadOptions {
                decision: d
                    .decision
                    .as_deref()
                    .map(|c| ColumnRef::from_str(c).unwrap()),
                id_column: d
                    .id_column
                    .as_deref()
                    .map(|c| ColumnRef::from_str(c).unwrap()),
            };
            let algorithms = match &d.algorithms {
                Some(list) => list
                    .iter()
                    .map(|a| parse_with::<Algorithm>(a))
                    .collect::<Result<Vec<_>>>()?,
                None => Algorithm::GREEDY.to_vec(),
            };
            let expectations = d
                .expect
                .iter()
                .map(|e| {
                    Ok(Expectation {
                        algorithm: parse_with(&e.algorithm)?,
                        n_attributes: e.n_attributes,
                        attributes_tolerance: e.attributes_tolerance,
                        similarity: e.similarity,
                        similarity_tolerance: e.similarity_tolerance,
                        min_similarity: e.min_similarity,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            datasets.push(DatasetSpec {
                path: base.join(&d.path),
                options,
                policy: d
                    .policy
                    .as_deref()
                    .map(parse_with)
                    .transpose()?
                    .unwrap_or_default(),
                sha256: d.sha256.map(|s| s.to_ascii_lowercase()),
                objects: d.objects,
                conditions: d.conditions,
                algorithms,
                expectations,
                name: d.name,
            });
        }
        Ok(BenchConfig {
            datasets,
            alphas: raw.alphas,
            discern_limit: raw.discern_limit,
        })
    }

    /// Keeps only the named datasets, in config order.
    pub fn select<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        for n in names {
            if !self.datasets.iter().any(|d| d.name == n.as_ref()) {
                return Err(Error::Config(format!("no dataset named `{}`", n.as_ref())));
            }
        }
        self.datasets
            .retain(|d| names.iter().any(|n| n.as_ref() == d.name));
        Ok(self)
    }
}

/// Hex SHA-256 of a file's bytes.
pub fn sha256_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Loads a dataset, verifying its checksum and shape when the spec gives them.
pub fn load_dataset(spec: &DatasetSpec) -> Result<DecisionTable> {
    let bytes = fs::read(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    if let Some(expected) = &spec.sha256 {
        let found = hex::encode(Sha256::digest(&bytes));
        if &found != expected {
            return Err(Error::ChecksumMismatch {
                path: spec.path.clone(),
                expected: expected.clone(),
                found,
            });
        }
    }
    let table = read_csv(bytes.as_slice(), &spec.options)?;
    let shape = |what: &str, expected: Option<usize>, found: usize| match expected {
        Some(e) if e != found => Err(Error::Config(format!(
            "expected {e} {what}, file has {found}"
        ))),
        _ => Ok(()),
    };
    shape("objects", spec.objects, table.n_objects())?;
    shape(
        "condition attributes",
        spec.conditions,
        table.n_conditions(),
    )?;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    /// Set for SRS rows only.
    pub alpha: Option<f64>,
    pub n_attributes: usize,
    pub spatial_similarity: f64,
    pub rule_count: usize,
    pub runtime_ms: f64,
    pub reduct: Vec<String>,
    pub target_reached: bool,
}

/// How the runs of one dataset compare with one expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub dataset: String,
    pub expectation: Expectation,
    pub matched: bool,
    /// Best-matching row among the dataset's runs of that algorithm.
    pub closest: Option<BenchRow>,
}

impl Outcome {
    pub fn note(&self) -> String {
        let (status, lead) = if self.matched {
            ("matched", "by")
        } else {
            ("DIVERGES", "closest")
        };
        let closest = match &self.closest {
            None => "no run".to_string(),
            Some(r) => {
                let alpha = r.alpha.map(|a| format!("α={a:.2}: ")).unwrap_or_default();
                format!(
                    "{alpha}{} attributes, similarity {:.4} [{}]",
                    r.n_attributes,
                    r.spatial_similarity,
                    r.reduct.join(", ")
                )
            }
        };
        format!(
            "{}/{} {status}: expected {}; {lead} {closest}",
            self.dataset,
            self.expectation.algorithm,
            self.expectation.describe()
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub outcomes: Vec<Outcome>,
    /// Skipped runs and other remarks.
    pub notes: Vec<String>,
}

impl BenchReport {
    pub fn divergences(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.matched)
    }
}

fn row_for(
    table: &DecisionTable,
    name: &str,
    algorithm: Algorithm,
    alpha: Option<f64>,
    reduct: &AttrSet,
    runtime_ms: f64,
    target_reached: bool,
) -> Result<BenchRow> {
    // Recomputed from the final reduct, not taken from the reducer's stats.
    let partition = Partition::of(table, reduct)?;
    let decision = Partition::by_decision(table);
    Ok(BenchRow {
        dataset: name.to_string(),
        algorithm,
        alpha,
        n_attributes: reduct.len(),
        spatial_similarity: metrics::spatial_similarity(&partition, &decision)?,
        rule_count: partition.len(),
        runtime_ms,
        reduct: table
            .attr_names(reduct.iter())
            .into_iter()
            .map(str::to_string)
            .collect(),
        target_reached,
    })
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

struct DatasetRun {
    rows: Vec<BenchRow>,
    notes: Vec<String>,
}

fn run_dataset(spec: &DatasetSpec, alphas: &[f64], limit: usize) -> Result<DatasetRun> {
    let table = load_dataset(spec)?;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &algorithm in &spec.algorithms {
        match algorithm {
            Algorithm::Discern => {
                if table.n_conditions() > limit {
                    notes.push(format!(
                        "{}/discern skipped: {} attributes exceed the limit of {limit}",
                        spec.name,
                        table.n_conditions()
                    ));
                    continue;
                }
                let start = Instant::now();
                let all = reducers::reduce_discern_with(&table, limit, spec.policy)?;
                let ms = millis(start);
                // Smallest reduct; ties go to the higher similarity, then
                // canonical order.
                let best = all
                    .iter()
                    .min_by(|a, b| {
                        a.reduct.len().cmp(&b.reduct.len()).then(
                            b.stats
                                .spatial_similarity
                                .total_cmp(&a.stats.spatial_similarity),
                        )
                    })
                    .expect("at least one reduct");
                rows.push(row_for(
                    &table,
                    &spec.name,
                    algorithm,
                    None,
                    &best.attr_set(),
                    ms,
                    true,
                )?);
            }
            Algorithm::Srs => {
                for &alpha in alphas {
                    let options = ReduceOptions {
                        params: SpsParams::with_alpha(alpha)?,
                        policy: spec.policy,
                        prune: false,
                    };
                    let start = Instant::now();
                    let r = reducers::reduce_greedy(&table, algorithm, &options)?;
                    let ms = millis(start);
                    rows.push(row_for(
                        &table,
                        &spec.name,
                        algorithm,
                        Some(alpha),
                        &r.attr_set(),
                        ms,
                        r.target_reached,
                    )?);
                }
            }
            Algorithm::Hu | Algorithm::Mibark => {
                let options = ReduceOptions {
                    policy: spec.policy,
                    ..ReduceOptions::default()
                };
                let start = Instant::now();
                let r = reducers::reduce_greedy(&table, algorithm, &options)?;
                let ms = millis(start);
                rows.push(row_for(
                    &table,
                    &spec.name,
                    algorithm,
                    None,
                    &r.attr_set(),
                    ms,
                    r.target_reached,
                )?);
            }
        }
    }
    Ok(DatasetRun { rows, notes })
}

fn outcomes_for(spec: &DatasetSpec, rows: &[BenchRow]) -> Vec<Outcome> {
    spec.expectations
        .iter()
        .map(|e| {
            let candidates = rows.iter().filter(|r| r.algorithm == e.algorithm);
            let closest = candidates
                .clone()
                .find(|r| e.matches(r))
                .or_else(|| {
                    candidates.min_by(|a, b| {
                        let (ga, gb) = (e.gap(a), e.gap(b));
                        ga.0.cmp(&gb.0).then(ga.1.total_cmp(&gb.1))
                    })
                })
                .cloned();
            Outcome {
                dataset: spec.name.clone(),
                expectation: e.clone(),
                matched: closest.as_ref().is_some_and(|r| e.matches(r)),
                closest,
            }
        })
        .collect()
}

/// Runs every requested algorithm on every dataset.
///
/// Datasets are processed in parallel; rows come out in config order
/// (dataset, then algorithm as listed, then α as listed).
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    check_alphas(&config.alphas)?;
    let runs: Vec<Result<DatasetRun>> = config
        .datasets
        .par_iter()
        .map(|spec| {
            run_dataset(spec, &config.alphas, config.discern_limit)
                .map_err(|e| e.in_dataset(&spec.name))
        })
        .collect();
    let mut report = BenchReport::default();
    for (spec, run) in config.datasets.iter().zip(runs) {
        let run = run?;
        report.outcomes.extend(outcomes_for(spec, &run.rows));
        report.rows.extend(run.rows);
        report.notes.extend(run.notes);
    }
    Ok(report)
}

/// [`run_bench`] with SRS repeated for every α of `grid`.
pub fn sweep_alpha(config: &BenchConfig, grid: &[f64]) -> Result<BenchReport> {
    check_alphas(grid)?;
    let swept = BenchConfig {
        alphas: grid.to_vec(),
        ..config.clone()
    };
    run_bench(&swept)
}

/// `0.0, 0.1, …, 1.0`.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::Config(format!("unknown report format `{other}`"))),
        }
    }
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "md",
        }
    }
}

fn format_alpha(alpha: Option<f64>) -> String {
    alpha.map(|a| format!("{a:.2}")).unwrap_or_default()
}

/// The report as CSV with the fixed [`CSV_HEADER`].
pub fn to_csv(report: &BenchReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in &report.rows {
        w.write_record([
            r.dataset.clone(),
            r.algorithm.id().to_string(),
            format_alpha(r.alpha),
            r.n_attributes.to_string(),
            format!("{:.4}", r.spatial_similarity),
            r.rule_count.to_string(),
            format!("{:.3}", r.runtime_ms),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("CSV buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

const TABLE_ORDER: [Algorithm; 4] = [
    Algorithm::Srs,
    Algorithm::Mibark,
    Algorithm::Hu,
    Algorithm::Discern,
];

/// Markdown comparison table: one line per
/// dataset (per α when SRS was swept), attribute count and similarity per
/// algorithm. Divergence notes follow the table.
pub fn to_markdown(report: &BenchReport) -> String {
    let present: Vec<Algorithm> = TABLE_ORDER
        .into_iter()
        .filter(|a| report.rows.iter().any(|r| r.algorithm == *a))
        .collect();
    let mut datasets: Vec<&str> = Vec::new();
    for r in &report.rows {
        if !datasets.contains(&r.dataset.as_str()) {
            datasets.push(&r.dataset);
        }
    }

    let mut out = String::new();
    let _ = write!(out, "| Dataset | α |");
    for a in &present {
        let _ = write!(out, " {a} attributes | {a} similarity |");
    }
    out.push('\n');
    out.push_str("|---|---|");
    for _ in &present {
        out.push_str("---:|---:|");
    }
    out.push('\n');

    for name in datasets {
        let rows: Vec<&BenchRow> = report.rows.iter().filter(|r| r.dataset == name).collect();
        let mut alphas: Vec<Option<f64>> = rows
            .iter()
            .filter(|r| r.algorithm == Algorithm::Srs)
            .map(|r| r.alpha)
            .collect();
        if alphas.is_empty() {
            alphas.push(None);
        }
        for alpha in alphas {
            let _ = write!(out, "| {name} | {} |", format_alpha(alpha));
            for a in &present {
                let cell = rows
                    .iter()
                    .find(|r| r.algorithm == *a && (*a != Algorithm::Srs || r.alpha == alpha));
                match cell {
                    Some(r) => {
                        let _ = write!(out, " {} | {:.2} |", r.n_attributes, r.spatial_similarity);
                    }
                    None => out.push_str(" – | – |"),
                }
            }
            out.push('\n');
        }
    }

    if !report.outcomes.is_empty() || !report.notes.is_empty() {
        out.push_str("\n## Notes\n\n");
        for o in &report.outcomes {
            let _ = writeln!(out, "- {}", o.note());
        }
        for n in &report.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}

pub fn render_report(report: &BenchReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => to_csv(report),
        ReportFormat::Markdown => Ok(to_markdown(report)),
    }
}

pub fn emit_report(
    report: &BenchReport,
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_report(report, format)?).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, sim: f64, alpha: Option<f64>) -> BenchRow {
        BenchRow {
            dataset: "x".into(),
            algorithm: Algorithm::Srs,
            alpha,
            n_attributes: n,
            spatial_similarity: sim,
            rule_count: 3,
            runtime_ms: 1.25,
            reduct: vec!["a".into()],
            target_reached: true,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(
            to_csv(&BenchReport::default()).unwrap(),
            "dataset,algorithm,alpha,n_attributes,spatial_similarity,rule_count,runtime_ms\n"
        );
    }

    #[test]
    fn one_row_report() {
        let report = BenchReport {
            rows: vec![row(2, 0.83863, Some(0.5))],
            ..BenchReport::default()
        };
        let csv = to_csv(&report).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().nth(1), Some("x,srs,0.50,2,0.8386,3,1.250"));
    }

    #[test]
    fn expectations_and_gaps() {
        let e = Expectation {
            algorithm: Algorithm::Srs,
            n_attributes: Some(11),
            attributes_tolerance: 2,
            similarity: None,
            similarity_tolerance: 0.01,
            min_similarity: Some(0.9),
        };
        assert!(e.matches(&row(9, 0.95, None)));
        assert!(!e.matches(&row(8, 0.95, None)));
        assert!(!e.matches(&row(11, 0.85, None)));
        assert_eq!(e.gap(&row(6, 0.97, None)).0, 3);
        assert!(e.describe().contains("11±2 attributes"));
    }

    #[test]
    fn config_parsing() {
        let text = r#"
            alphas = [0.0, 1.0]

            [[dataset]]
            name = "t1"
            path = "t1.csv"
            decision = "d"
            algorithms = ["hu", "SRS"]

            [[dataset.expect]]
            algorithm = "srs"
            n_attributes = 1
        "#;
        let c = BenchConfig::from_toml(text, Path::new("/base")).unwrap();
        assert_eq!(c.alphas, vec![0.0, 1.0]);
        let d = &c.datasets[0];
        assert_eq!(d.path, Path::new("/base/t1.csv"));
        assert_eq!(d.algorithms, vec![Algorithm::Hu, Algorithm::Srs]);
        assert_eq!(d.policy, InconsistencyPolicy::Reject);
        assert_eq!(d.expectations[0].similarity_tolerance, 0.01);

        assert!(BenchConfig::from_toml("alphas = [1.5]", Path::new(".")).is_err());
        assert!(BenchConfig::from_toml("bogus = 1", Path::new(".")).is_err());
    }

    #[test]
    fn alpha_grid() {
        let g = default_alpha_grid();
        assert_eq!(g.len(), 11);
        assert_eq!(g[3], 0.3);
        assert_eq!(format_alpha(Some(g[3])), "0.30");
    }
}
