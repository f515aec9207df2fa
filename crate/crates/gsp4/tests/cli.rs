use std::path::Path;
use std::process::{Command, Output};

use gsp4::output::{self, ChartabSummary, CsvCheck, CsvRowN, CsvRowR, Envelope};
use gsp4_core::bessel::{HomDimReportN, HomDimReportR, SuiteReport};
use serde_json::Value;

fn gsp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsp4"))
        .args(args)
        .env_remove("GSP4_Q")
        .env_remove("GSP4_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_check(schema: &str, doc: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let doc: Value = serde_json::from_str(doc).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn chartab_q2() {
    let out = stdout(&gsp4(&["chartab", "--q", "2"]));
    assert!(out.contains("classes: 11\n"));
    assert!(out.contains("irreducibles: 11\n"));
    let json = stdout(&gsp4(&["chartab", "--q", "2", "--format", "json"]));
    schema_check("chartab.schema.json", &json);
    let env: Envelope<ChartabSummary> = output::parse_json(&json).unwrap();
    assert_eq!(env.report.group_order, 720);
    assert_eq!(env.report.degrees.iter().map(|d| d.0 * d.0 * d.1 as u64).sum::<u64>(), 720);
}

#[test]
fn chartab_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = gsp4(&["chartab", "--q", "3", "--cache", cache, "--format", "json"]);
    assert!(String::from_utf8_lossy(&first.stderr).contains("wrote"));
    let second = gsp4(&["chartab", "--q", "3", "--cache", cache, "--format", "json"]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("loaded"));
    assert_eq!(stdout(&first), stdout(&second));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    schema_check("cache.schema.json", &std::fs::read_to_string(&file).unwrap());

    // a corrupted entry is detected by revalidation and rebuilt
    let text = std::fs::read_to_string(&file).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    let v = &mut doc["values"][1][1][0];
    *v = Value::from(v.as_i64().unwrap() + 1);
    std::fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();
    let third = gsp4(&["chartab", "--q", "3", "--cache", cache]);
    assert!(String::from_utf8_lossy(&third.stderr).contains("replaced"));
    let fourth = gsp4(&["chartab", "--q", "3", "--cache", cache]);
    assert!(String::from_utf8_lossy(&fourth.stderr).contains("loaded"));
}

#[test]
fn chartab_refuses_large_q() {
    let o = gsp4(&["chartab", "--q", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("memory budget"));
    let o = gsp4(&["chartab", "--q", "3", "--mem-budget", "1M"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_n_csv_and_json() {
    let csv = stdout(&gsp4(&["table", "--q", "3", "--model", "N", "--format", "csv"]));
    assert!(csv.starts_with("row,degree,dim0,dim1,dim2,dim3,generic,cuspidal,matches\n"));
    assert!(!csv.contains('\r'));
    let rows: Vec<CsvRowN> = output::parse_csv(&csv).unwrap();
    assert_eq!(rows.len(), 38);
    assert_eq!(output::to_csv(&rows).unwrap(), csv);

    let json = stdout(&gsp4(&["table", "--q", "3", "--model", "N", "--format", "json"]));
    schema_check("table-n.schema.json", &json);
    let env: Envelope<HomDimReportN> = output::parse_json(&json).unwrap();
    assert_eq!(output::rows_n(&env.report), rows);
    assert_eq!(output::to_json(&gsp4_core::ffield::Field::new(3, 1).unwrap(), &env.report).unwrap(), json);
}

#[test]
fn table_r_nonsplit_datum() {
    let csv =
        stdout(&gsp4(&["table", "--q", "3", "--model", "R", "--a", "1", "--b", "0", "--c", "1", "--format", "csv"]));
    let rows: Vec<CsvRowR> = output::parse_csv(&csv).unwrap();
    assert_eq!(output::to_csv(&rows).unwrap(), csv);
    let mut chars: Vec<&str> = rows.iter().map(|r| r.character.as_str()).collect();
    chars.sort();
    chars.dedup();
    assert_eq!(chars.len(), 8);
    assert!(rows.iter().all(|r| r.class == "rank2_nonsquare"));

    let json =
        stdout(&gsp4(&["table", "--q", "3", "--model", "R", "--a", "1", "--b", "0", "--c", "1", "--format", "json"]));
    schema_check("table-r.schema.json", &json);
    let env: Envelope<Vec<HomDimReportR>> = output::parse_json(&json).unwrap();
    assert_eq!(output::rows_r(&env.report), rows);
}

#[test]
fn table_r_single_character() {
    let csv = stdout(&gsp4(&[
        "table",
        "--q",
        "3",
        "--model",
        "R",
        "--a",
        "0",
        "--b",
        "1",
        "--c",
        "0",
        "--chi",
        "split:0:0",
        "--format",
        "csv",
    ]));
    let rows: Vec<CsvRowR> = output::parse_csv(&csv).unwrap();
    assert_eq!(rows.len(), 38);
    let total: u64 = rows.iter().map(|r| r.degree * r.dim).sum();
    assert_eq!(total, 960);
}

#[test]
fn table_r_rejects_degenerate_datum() {
    let o = gsp4(&["table", "--q", "3", "--model", "R", "--a", "0", "--b", "0", "--c", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b^2 - 4ac"));
    let o = gsp4(&["table", "--q", "3", "--model", "R", "--a", "5", "--b", "0", "--c", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = stdout(&gsp4(&["verify", "--q", "7", "--suite", "lemmas"]));
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("PASS")));

    let out = stdout(&gsp4(&["verify", "--q", "2", "--suite", "table-n"]));
    assert!(out.contains("every row matches a symbolic family"));

    let json = stdout(&gsp4(&["verify", "--q", "3", "--suite", "all", "--format", "json", "--threads", "2"]));
    schema_check("verify.schema.json", &json);
    let env: Envelope<Vec<SuiteReport>> = output::parse_json(&json).unwrap();
    let suites: Vec<&str> = env.report.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(suites, ["lemmas", "canonical-forms", "group", "types", "table-n", "table-r", "corollary"]);
    assert!(env.report.iter().all(|r| r.passed()));

    let csv = stdout(&gsp4(&["verify", "--q", "3", "--suite", "corollary", "--format", "csv"]));
    let checks: Vec<CsvCheck> = output::parse_csv(&csv).unwrap();
    assert!(checks.iter().all(|c| c.passed && c.suite == "corollary"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["table", "--q", "3", "--model", "R", "--format", "json"];
    let one = stdout(&gsp4(&[&args[..], &["--threads", "1"]].concat()));
    let four = stdout(&gsp4(&[&args[..], &["--threads", "4"]].concat()));
    assert_eq!(one, four);
}

#[test]
fn env_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_gsp4"))
        .args(["table", "--out", path.to_str().unwrap()])
        .env("GSP4_Q", "2")
        .env("GSP4_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let rows: Vec<CsvRowN> = output::parse_csv(&std::fs::read_to_string(path).unwrap()).unwrap();
    let theta4 = rows.iter().find(|r| r.degree == 16).unwrap();
    assert_eq!([theta4.dim0, theta4.dim1, theta4.dim2, theta4.dim3], [2, 2, 2, 2]);
    assert_eq!(theta4.matches, "theta4");
}

#[test]
fn prime_and_degree_flags() {
    let a = stdout(&gsp4(&["verify", "--p", "2", "--n", "3", "--suite", "lemmas"]));
    let b = stdout(&gsp4(&["verify", "--q", "8", "--suite", "lemmas"]));
    assert_eq!(a, b);
    assert_eq!(gsp4(&["verify", "--q", "6", "--suite", "lemmas"]).status.code(), Some(2));
}
