mod common;

use common::data_dir;
use rough_reduct::bench::{self, BenchConfig, ReportFormat, CSV_HEADER};
use rough_reduct::{Algorithm, Partition};

fn fixtures() -> BenchConfig {
    BenchConfig::load(data_dir().join("fixtures/bench.toml")).unwrap()
}

#[test]
fn t1_fixture_rows() {
    let report = bench::run_bench(&fixtures().select(&["t1"]).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 6);
    for row in &report.rows {
        assert_eq!(row.reduct, ["a"]);
        assert_eq!(row.spatial_similarity, 1.0);
        assert_eq!(row.rule_count, 2);
    }
    assert!(report.outcomes.iter().all(|o| o.matched));
}

#[test]
fn rows_follow_config_order() {
    let config = fixtures();
    let report = bench::run_bench(&config).unwrap();
    let keys: Vec<(String, Algorithm, Option<f64>)> = report
        .rows
        .iter()
        .map(|r| (r.dataset.clone(), r.algorithm, r.alpha))
        .collect();
    let mut expected = Vec::new();
    for d in &config.datasets {
        for &a in &d.algorithms {
            if a == Algorithm::Srs {
                expected.extend(config.alphas.iter().map(|&x| (d.name.clone(), a, Some(x))));
            } else {
                expected.push((d.name.clone(), a, None));
            }
        }
    }
    assert_eq!(keys, expected);
}

#[test]
fn rule_counts_match_recomputed_partitions() {
    let config = fixtures();
    let report = bench::run_bench(&config).unwrap();
    for row in &report.rows {
        let spec = config
            .datasets
            .iter()
            .find(|d| d.name == row.dataset)
            .unwrap();
        let t = bench::load_dataset(spec).unwrap();
        let p = Partition::by_names(&t, &row.reduct).unwrap();
        assert_eq!(row.rule_count, p.len());
    }
}

#[test]
fn sweep_repeats_srs_rows() {
    let config = fixtures().select(&["weather"]).unwrap();
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let report = bench::sweep_alpha(&config, &grid).unwrap();
    let srs: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.algorithm == Algorithm::Srs)
        .collect();
    assert_eq!(srs.len(), 5);
    assert!(bench::sweep_alpha(&config, &[1.5]).is_err());
}

#[test]
fn emitted_files() {
    let report = bench::run_bench(&fixtures()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    bench::emit_report(&report, ReportFormat::Csv, &csv).unwrap();
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), report.rows.len() + 1);

    let md = dir.path().join("r.md");
    bench::emit_report(&report, ReportFormat::Markdown, &md).unwrap();
    let text = std::fs::read_to_string(&md).unwrap();
    assert!(text.starts_with("| Dataset | α | srs attributes | srs similarity |"));
    assert!(text.contains("| t1 | 0.50 | 1 | 1.00 |"));
}

#[test]
fn dataset_errors_are_annotated() {
    let text = "[[dataset]]\nname = \"ghost\"\npath = \"nope.csv\"\n";
    let config = BenchConfig::from_toml(text, std::path::Path::new("/nonexistent")).unwrap();
    let err = bench::run_bench(&config).unwrap_err();
    assert!(err.to_string().starts_with("dataset `ghost`"), "{err}");
}

#[test]
fn full_manifest_row_count() {
    let config = BenchConfig::load(data_dir().join("bench.toml")).unwrap();
    let report = bench::run_bench(&config).unwrap();
    assert_eq!(report.rows.len(), config.datasets.len() * 3);
}
