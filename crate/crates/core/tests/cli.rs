use std::path::Path;

use additive_powers::cli::{main_with_args, STORE_ENV};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["additive-powers"];
    argv.extend_from_slice(args);
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows(out: &str) -> Vec<Value> {
    out.lines().skip(1).map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn store_arg(dir: &Path) -> String {
    dir.join("records.jsonl").to_string_lossy().into_owned()
}

#[test]
fn energy_of_two_points() {
    let (code, out, _) = run(&["energy", "--set", "[0,1]"]);
    assert_eq!(code, 0);
    let header: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(header["header"]["seed"], 0);
    let r = rows(&out);
    assert_eq!(r[0]["energy"], 6);
    assert_eq!(r[0]["config"]["command"]["set"], serde_json::json!([0, 1]));
}

#[test]
fn qk_finds_three_squares() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    let (code, out, _) = run(&["--store", &store, "qk", "--k", "2", "--n", "3", "--pmax", "100", "--rmax", "100"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out)[0]["best_count"], 3);
    let (code, out, _) = run(&["--store", &store, "verify"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out)[0]["ok"], true);
}

#[test]
fn matching_sums_and_products() {
    let (code, out, _) = run(&["matching", "--pairs", "[[1,2],[3,4]]"]);
    assert_eq!(code, 0);
    let r = &rows(&out)[0];
    assert_eq!(r["S"], serde_json::json!([3, 7]));
    assert_eq!(r["P"], serde_json::json!([2, 12]));
    assert_eq!(r["holder"]["holds"], true);
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    let qk = ["--store", &store, "qk", "--k", "2", "--n", "5", "--pmax", "300", "--rmax", "300"];
    assert_eq!(run(&qk).1, run(&qk).1);
    let ex = ["--seed", "9", "extremal", "--n", "12", "--radius", "8", "--iterations", "3000"];
    let (a, b) = (run(&ex), run(&ex));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let other = run(&["--seed", "10", "extremal", "--n", "12", "--radius", "8", "--iterations", "3000"]);
    assert_ne!(a.1.lines().next(), other.1.lines().next());
    let threads = run(&["--shards", "1", "--store", &store, "qk", "--k", "2", "--n", "5", "--pmax", "300", "--rmax", "300"]);
    assert_eq!(rows(&threads.1)[0]["witness"], rows(&run(&qk).1)[0]["witness"]);
}

#[test]
fn store_path_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let env_path = dir.path().join("env.jsonl");
    let flag_path = dir.path().join("flag.jsonl");
    std::env::set_var(STORE_ENV, &env_path);
    let scan = ["scan-ap", "--k", "2", "--p", "1", "--r", "24", "--n", "8"];
    assert_eq!(run(&scan).0, 0);
    let mut with_flag = vec!["--store", flag_path.to_str().unwrap()];
    with_flag.extend_from_slice(&scan);
    assert_eq!(run(&with_flag).0, 0);
    std::env::remove_var(STORE_ENV);
    let count = |p: &Path| std::fs::read_to_string(p).unwrap().lines().count();
    assert_eq!(count(&env_path), 1);
    assert_eq!(count(&flag_path), 1);
    let line: Value = serde_json::from_str(std::fs::read_to_string(&flag_path).unwrap().trim()).unwrap();
    assert_eq!(line["best_count"], 5);
    assert!(line["timestamp"].is_u64());
    assert_eq!(line["schema_version"], 1);
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["energy", "--set", "[0,"]).0, 2);
    assert_eq!(run(&["--budget-work", "10", "qk", "--k", "2", "--n", "3", "--pmax", "100", "--rmax", "100"]).0, 3);
    let big = i64::MAX.to_string();
    assert_eq!(run(&["scan-ap", "--k", "2", "--p", &big, "--r", "1000", "--n", "5", "--store", "/dev/null"]).0, 4);
    assert_eq!(run(&["pluennecke", "--set", "[]"]).0, 5);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("mobius-check"));
}

#[test]
fn tampered_record_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    assert_eq!(run(&["--store", &store, "scan-ap", "--k", "2", "--p", "1", "--r", "24", "--n", "8"]).0, 0);
    let text = std::fs::read_to_string(&store).unwrap().replace("\"best_count\":5", "\"best_count\":6");
    std::fs::write(&store, text).unwrap();
    let (code, out, _) = run(&["--store", &store, "verify"]);
    assert_eq!(code, 5);
    assert_eq!(rows(&out)[0]["ok"], false);
}

#[test]
fn torn_store_tail_is_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    let scan = ["--store", &store, "scan-ap", "--k", "3", "--p", "1", "--r", "7", "--n", "10"];
    assert_eq!(run(&scan).0, 0);
    let mut text = std::fs::read_to_string(&store).unwrap();
    text.push_str("{\"schema_version\":1,\"k\":");
    std::fs::write(&store, text).unwrap();
    assert_eq!(run(&scan).0, 0);
    let (code, out, _) = run(&["--store", &store, "verify"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out).len(), 2);
}

#[test]
fn checkpointed_qk_matches_plain_run() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    let ck = dir.path().join("qk.ckpt").to_string_lossy().into_owned();
    let base = ["--store", &store, "qk", "--k", "2", "--n", "6", "--pmax", "999", "--rmax", "1500"];
    let plain = rows(&run(&base).1);
    let mut with_ck = base.to_vec();
    with_ck.extend_from_slice(&["--checkpoint", &ck]);
    let first = rows(&run(&with_ck).1);
    assert!(Path::new(&ck).exists());
    let again = rows(&run(&with_ck).1);
    for r in [&first, &again] {
        assert_eq!(r[0]["best_count"], plain[0]["best_count"]);
        assert_eq!(r[0]["witness"], plain[0]["witness"]);
    }
}

#[test]
fn csv_projection_has_one_row_per_result() {
    let (code, out, _) = run(&["--format", "csv", "pluennecke", "--set", "[0,1,3,7]"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "command");
    assert_eq!(&headers[1], "seed");
    let holds = headers.iter().position(|h| h == "holds").unwrap();
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 14);
    assert!(records.iter().all(|r| &r[holds] == "true"));
}

#[test]
fn every_command_runs() {
    let dir = tempfile::tempdir().unwrap();
    let store = store_arg(dir.path());
    let gap = r#"{"base":3,"steps":[5,11],"lengths":[6,4]}"#;
    let cases: Vec<Vec<&str>> = vec![
        vec!["energy", "--k", "3", "--n-values", "100,1000"],
        vec!["energy", "--set", "[0,1,4,9]", "--structure"],
        vec!["energy", "--set", "[0,1,2]", "--other", "[0,2]", "--method", "naive"],
        vec!["mixed-energy", "--set", "[0,1,4,9,16]", "--k", "3", "--l", "2"],
        vec!["popular", "--set", "[0,1,2,3,8]"],
        vec!["scan-ap", "--k", "2", "--p", "1", "--r", "24", "--n", "8"],
        vec!["scan-gap", "--k", "2", "--gap", gap],
        vec!["curve-points", "--curve", r#"{"k":2,"coeffs":[120,274,225,85,15,1]}"#, "--height", "30", "--mode", "rational"],
        vec!["probe-quadruples", "--lo", "1", "--hi", "5", "--height", "100"],
        vec!["clique", "--height", "50", "--size", "3", "--cap", "2"],
        vec!["incidence", "--a", "[1,4,9,16]", "--c", "[1,2,3]", "--l", "[[1,0],[2,1],[3,-2]]", "--squares-b"],
        vec!["incidence", "--a", "[0,1,4,9,16,25,36,49,64,81,100]", "--gap", gap, "--m", "2"],
        vec!["matching", "--pairs", "[[1,6],[2,3],[3,2],[6,1]]", "--s", "2", "--t", "2", "--biclique-t", "2"],
        vec!["extremal", "--n", "3", "--radius", "3"],
        vec!["mobius-check", "--i", "[1,4,9,16,25]", "--gap", gap, "--lmax", "8"],
        vec!["inclusion-check", "--a", "[0,1,2,3,4,5]", "--z", "[1]", "--d", "2", "--l", "2"],
    ];
    for case in cases {
        let mut args = vec!["--store", store.as_str()];
        args.extend_from_slice(&case);
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{case:?}: {err}");
        assert!(!rows(&out).is_empty(), "{case:?}");
    }
}
