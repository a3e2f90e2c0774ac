//! End-to-end tests of the command-line surface: output shapes, modes,
//! guards, exit codes, file export, and cache persistence.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_asmcount"));
    cmd.env_remove("ASMCOUNT_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn count_prints_the_closed_form_value() {
    let out = run(&["count", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "42\n");
    let out = run(&["count", "10"]);
    assert_eq!(stdout(&out), "129534272700\n");
}

#[test]
fn count_formula_mode_has_no_order_cap() {
    let out = run(&["count", "30"]);
    assert!(out.status.success());
    let value = stdout(&out);
    let value = value.trim();
    assert_eq!(value.len(), 102);
    assert!(value.starts_with("878332450140"));
}

#[test]
fn count_compares_against_the_counting_oracle() {
    let out = run(&["count", "5", "--brute"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "formula: 429\nbrute: 429\nEQUAL\n");
}

#[test]
fn count_renders_csv_and_json() {
    let out = run(&["count", "4", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,value\n4,42\n");
    let out = run(&["count", "4", "--brute", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,source,value\n4,formula,42\n4,brute,42\n");
    let out = run(&["count", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["kind"], "total");
    assert_eq!(doc["entries"][0]["value"], "42");
}

#[test]
fn refined_modes_agree() {
    let formula = run(&["refined", "4"]);
    assert_eq!(stdout(&formula), "7 14 14 7\n");
    let brute = run(&["refined", "4", "--mode", "brute"]);
    assert_eq!(stdout(&brute), "7 14 14 7\n");
    let both = run(&["refined", "4", "--mode", "both"]);
    assert!(both.status.success());
    assert!(stdout(&both).ends_with("EQUAL\n"));
    let csv = run(&["refined", "4", "--format", "csv"]);
    assert_eq!(stdout(&csv), "n,i,value\n4,1,7\n4,2,14\n4,3,14\n4,4,7\n");
}

#[test]
fn doubly_tables_render_by_kind() {
    let out = run(&["doubly", "4", "--kind", "top-two"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("1 2 2\n1 3 3\n1 4 2\n"));
    let out = run(&["doubly", "3", "--kind", "top-bottom", "--mode", "both"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("EQUAL\n"));
    let out = run(&["doubly", "3", "--kind", "top-two", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["kind"], "top-two");
    assert_eq!(doc["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn doubly_requires_a_kind_and_enough_order() {
    let out = run(&["doubly", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["doubly", "2", "--kind", "top-two"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at least 3"));
}

#[test]
fn brute_force_orders_are_capped_without_unsafe_large() {
    let out = run(&["count", "9", "--brute"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--unsafe-large"));
    let out = run(&["count", "8", "--brute", "--unsafe-large"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("EQUAL\n"));
}

#[test]
fn workers_do_not_change_results() {
    let serial = run(&["refined", "6", "--mode", "brute"]);
    let parallel = run(&["refined", "6", "--mode", "brute", "--workers", "4"]);
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn partition_prints_twelve_significant_digits() {
    let out = run(&["partition", "3", "--xs", "0,0,0", "--ys", "0,0,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "7.00000000000\n");
    let out = run(&["partition", "2", "--xs", "0.3,-0.1", "--ys", "0.2,0.05"]);
    assert!(out.status.success());
    let line = stdout(&out);
    let digits = line.trim().chars().filter(char::is_ascii_digit).count();
    assert_eq!(digits, 12);
}

#[test]
fn partition_validates_its_parameters() {
    let out = run(&["partition", "3", "--xs", "0,0", "--ys", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--xs carries 2 values"));
    let out = run(&["partition", "2", "--xs", "0,0", "--ys", "0,0", "--eta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "partition",
        "6",
        "--xs",
        "0,0,0,0,0,0",
        "--ys",
        "0,0,0,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--unsafe-large"));
}

#[test]
fn export_writes_well_formed_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("refined.csv");
    let out = run(&[
        "export",
        "refined",
        "4",
        "--output",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&csv_path).unwrap(),
        "n,i,value\n4,1,7\n4,2,14\n4,3,14\n4,4,7\n"
    );

    let json_path = dir.path().join("pairs.json");
    let out = run(&[
        "export",
        "top-bottom",
        "3",
        "--output",
        json_path.to_str().unwrap(),
        "--format",
        "json",
        "--mode",
        "brute",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["kind"], "top-bottom");
    assert_eq!(doc["entries"].as_array().unwrap().len(), 9);
    assert_eq!(doc["entries"][1]["value"], "1");
}

#[test]
fn export_filters_can_select_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    let out = run(&[
        "export",
        "top-two",
        "4",
        "--output",
        path.to_str().unwrap(),
        "--i",
        "99",
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,i,j,value\n");
}

#[test]
fn export_rejects_filters_the_table_cannot_honor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let out = run(&[
        "export",
        "total",
        "4",
        "--output",
        path.to_str().unwrap(),
        "--i",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "export",
        "refined",
        "4",
        "--output",
        path.to_str().unwrap(),
        "--j",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_reports_io_failures() {
    let out = run(&[
        "export",
        "total",
        "4",
        "--output",
        "/nonexistent-dir/table.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("writing"));
}

#[test]
fn cache_persists_between_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("alpha.cache");
    let cache_str = cache.to_str().unwrap();

    let first = run(&["count", "6", "--brute", "--cache", cache_str]);
    assert!(first.status.success());
    assert!(stderr(&first).contains("loaded 0 rows"));
    assert!(cache.exists());

    let second = run(&["count", "6", "--brute", "--cache", cache_str]);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    let report = stderr(&second);
    assert!(
        report.contains("hits"),
        "second run reports cache use: {report}"
    );
    assert!(!report.contains("loaded 0 rows"));

    let shown = run(&["cache", "show", "--cache", cache_str]);
    assert!(shown.status.success());
    assert!(stdout(&shown).contains("status: ok"));

    let cleared = run(&["cache", "clear", "--cache", cache_str]);
    assert!(cleared.status.success());
    assert!(!cache.exists());
    let cleared_again = run(&["cache", "clear", "--cache", cache_str]);
    assert!(cleared_again.status.success());
    assert!(stdout(&cleared_again).contains("nothing to clear"));
}

#[test]
fn cache_path_comes_from_the_environment_too() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("alpha.cache");
    let out = bin()
        .args(["count", "4", "--brute"])
        .env("ASMCOUNT_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.exists());
}

#[test]
fn cache_with_an_unrecognized_header_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("alpha.cache");
    std::fs::write(&cache, "# some other format\n1,2;2\n").unwrap();
    let out = run(&["count", "4", "--brute", "--cache", cache.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("unrecognized header"));
    let rebuilt = std::fs::read_to_string(&cache).unwrap();
    assert!(rebuilt.starts_with("# asmcount alpha cache v1\n"));
}

#[test]
fn cache_commands_require_a_configured_path() {
    let out = run(&["cache", "show"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ASMCOUNT_CACHE"));
}

#[test]
fn verify_skips_suites_below_their_smallest_order() {
    let out = run(&["verify", "--n-max", "2", "--suites", "exact"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    let skips = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["status"] == "skip")
        .count();
    assert!(skips > 0);
}

#[test]
fn verify_validates_its_flags() {
    let out = run(&["verify", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--tolerance", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--n-max", "8", "--suites", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--unsafe-large"));
}

#[test]
fn usage_errors_use_exit_code_two() {
    let out = run(&["count", "4", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["count", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
