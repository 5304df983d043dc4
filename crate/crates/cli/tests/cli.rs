use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rough-reduct"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reduce_t1_with_rules_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("rules.txt");
    let t1 = data("fixtures/t1.csv");
    let o = run(&[
        "reduce",
        t1.to_str().unwrap(),
        "--algo",
        "srs",
        "--id-column",
        "id",
        "--verify",
        "--emit-rules",
        rules.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("reduct (1 of 2): a"), "{out}");
    assert!(out.contains("spatial similarity: 1.0000"));
    assert!(!out.contains("verify FAIL"));
    assert_eq!(
        std::fs::read_to_string(&rules).unwrap(),
        "IF a=0 THEN d=0  [support=2]\nIF a=1 THEN d=1  [support=2]\n"
    );
}

#[test]
fn dump_matrix_and_discern() {
    let t1 = data("fixtures/t1.csv");
    let o = run(&[
        "reduce",
        t1.to_str().unwrap(),
        "--algo",
        "discern",
        "--id-column",
        "id",
        "--dump-matrix",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(x1, x3): {a}"), "{out}");
    assert!(out.contains("core: {a}"));
}

#[test]
fn inconsistent_table_needs_a_policy() {
    let f = data("fixtures/conflict.csv");
    let o = run(&["reduce", f.to_str().unwrap(), "--algo", "hu"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconsistent table"));

    let o = run(&[
        "reduce",
        f.to_str().unwrap(),
        "--algo",
        "hu",
        "--policy",
        "match-full-set",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("reduct (1 of 2): a"));
}

#[test]
fn bench_writes_csv_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let config = data("fixtures/bench.toml");
    let o = run(&[
        "bench",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--sweep-alpha",
        "0,0.5,1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with(
        "dataset,algorithm,alpha,n_attributes,spatial_similarity,rule_count,runtime_ms\n"
    ));
    assert!(csv.contains("\nt1,srs,0.50,1,1.0000,2,"));

    let o = run(&[
        "bench",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--format",
        "markdown",
        "--dataset",
        "weather",
    ]);
    assert!(o.status.success());
    let md = std::fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert!(md.contains("| weather |"));
    assert!(!md.contains("| t1 |"));
}

#[test]
fn errors_exit_nonzero() {
    let o = run(&["reduce", "/nonexistent.csv"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let t1 = data("fixtures/t1.csv");
    let o = run(&["reduce", t1.to_str().unwrap(), "--alpha", "2"]);
    assert!(!o.status.success());
    let o = run(&["reduce", t1.to_str().unwrap(), "--algo", "bogus"]);
    assert!(!o.status.success());
}
