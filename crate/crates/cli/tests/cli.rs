//! End-to-end tests of the command-line interface: output contracts, the
//! closed conversion loop, determinism, and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flagorbit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const ARC_MATRIX: &str =
    r#"{"rows":4,"cols":4,"data":[[0,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]}"#;

const SEVEN_CLAN: &str = "d - c 1 + 1 -";

#[test]
fn count_matches_formula_and_enumeration() {
    let out = stdout(&run(&["count", "2"]));
    assert_eq!(out.trim(), "17 (enumeration cross-check: 17)");
    let out = stdout(&run(&["count", "0"]));
    assert_eq!(out.trim(), "1 (enumeration cross-check: 1)");
    let json = stdout(&run(&["count", "3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["formula"], "76");
    assert_eq!(v["enumeration"], 76);
}

#[test]
fn atlas_of_size_one_has_four_rows_with_fiber_data() {
    let out = stdout(&run(&["atlas", "1", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,clan,I,spi,sig_p,sig_q,sig_r,d,fiber_size");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "1,\"+\",1,1,1,0,0,1,2");
    assert_eq!(lines[2], "1,\"-\",1,-1,0,1,0,1,2");
    assert_eq!(lines[3], "1,\"c\",1,0,0,0,1,0,1");
    assert_eq!(lines[4], "1,\"d\",,,0,0,0,0,1");
}

#[test]
fn atlas_row_count_matches_formula() {
    let out = stdout(&run(&["atlas", "3", "--format", "json"]));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 76);
    // Fiber sizes over the whole atlas sum to the number of orbits grouped
    // by their unsigned classes only when counted per class; here just
    // check every row is well-formed.
    for row in &rows {
        assert!(row["fiber_size"].as_u64().unwrap() >= 1);
        assert_eq!(row["n"], 3);
    }
}

#[test]
fn classify_matrix_text_output_is_deterministic() {
    let a = stdout(&run(&["classify", ARC_MATRIX]));
    let b = stdout(&run(&["classify", ARC_MATRIX]));
    assert_eq!(a, b);
    assert!(a.contains("I: [1, 2, 3, 4]"));
    assert!(a.contains("clan: c 1 1 +"));
    assert!(a.contains("profile signatures: (2,1,1) (2,1,0) (1,0,1) (1,0,0)"));
}

#[test]
fn classify_reads_stdin_and_files() {
    let from_stdin = run_with_stdin(&["classify"], ARC_MATRIX);
    let text = stdout(&from_stdin);
    assert!(text.contains("clan: c 1 1 +"));

    let dir = std::env::temp_dir().join("flagorbit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("arc.json");
    std::fs::write(&path, ARC_MATRIX).unwrap();
    let from_file = stdout(&run(&["classify", path.to_str().unwrap()]));
    assert_eq!(from_file, text);
}

#[test]
fn classify_seven_vertex_pair_yields_the_printed_clan() {
    let omega = stdout(&run(&["convert", "--from", "clan", "--to", "omega", SEVEN_CLAN]));
    let out = stdout(&run(&["classify", omega.trim()]));
    assert!(out.contains(&format!("clan: {SEVEN_CLAN}")));
}

#[test]
fn classify_json_with_witness_multiplies_back() {
    let out = stdout(&run(&[
        "classify",
        r#"{"rows":2,"cols":2,"data":[["2","1"],["1","0"]]}"#,
        "--format",
        "json",
        "--witness",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["label"]["I"], serde_json::json!([1, 2]));
    assert!(v["witness"]["b"].is_object());
    assert!(v["witness"]["w"].is_object());
}

#[test]
fn conversion_loop_is_closed() {
    // clan -> omega -> label(JSON) -> clan reproduces the input text.
    let omega = stdout(&run(&["convert", "--from", "clan", "--to", "omega", SEVEN_CLAN]));
    let label = stdout(&run(&["convert", "--from", "omega", "--to", "label", omega.trim()]));
    let clan = stdout(&run(&[
        "convert", "--from", "label", "--to", "clan", "--n", "7", label.trim(),
    ]));
    assert_eq!(clan.trim(), SEVEN_CLAN);
    // Every convert output parses again: omega JSON round trip.
    let clan_json = stdout(&run(&[
        "convert", "--from", "omega", "--to", "clan", "--format", "json", omega.trim(),
    ]));
    let reparsed = stdout(&run(&["convert", "--from", "clan", "--to", "clan", clan_json.trim()]));
    assert_eq!(reparsed.trim(), SEVEN_CLAN);
}

#[test]
fn galois_report_lists_the_fiber() {
    let tau = r#"{"tau1":{"rows":1,"cols":1,"data":[[1]]},"tau2":{"rows":1,"cols":1,"data":[[1]]}}"#;
    let out = stdout(&run(&["galois", tau, "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 1);
    assert_eq!(v["fiber"].as_array().unwrap().len(), 2);
    assert_eq!(v["labels"].as_array().unwrap().len(), 2);
    assert_eq!(v["K"]["one"], serde_json::json!([1]));
}

#[test]
fn galois_rejects_pairs_outside_the_locus() {
    let tau = r#"{"tau1":{"rows":2,"cols":2,"data":[[0,1],[0,0]]},"tau2":{"rows":2,"cols":2,"data":[[1,0],[0,1]]}}"#;
    let out = run(&["galois", tau]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(run(&["classify", "not json"]).status.code(), Some(2));
    let non_hermitian = r#"{"rows":2,"cols":2,"data":[[0,1],[2,0]]}"#;
    assert_eq!(run(&["classify", non_hermitian]).status.code(), Some(3));
    assert_eq!(run(&["atlas", "9"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "5"]).status.code(), Some(4));
}

#[test]
fn case_b_rejects_gaussian_entries() {
    let gaussian = r#"{"rows":1,"cols":1,"data":[[{"re":"0","im":"1"}]]}"#;
    let out = run(&["classify", gaussian, "--case", "b"]);
    assert_eq!(out.status.code(), Some(3));
    // Case A accepts the same shape but rejects it as non-Hermitian.
    let out = run(&["classify", gaussian, "--case", "a"]);
    assert_eq!(out.status.code(), Some(3));
    // A real diagonal passes under case B.
    let real = r#"{"rows":1,"cols":1,"data":[["-2"]]}"#;
    let out = stdout(&run(&["classify", real, "--case", "b"]));
    assert!(out.contains("case: B"));
    assert!(out.contains("clan: -"));
}

#[test]
fn guard_overrides() {
    assert_eq!(run(&["atlas", "9"]).status.code(), Some(4));
    let ok = bin()
        .args(["count", "9"])
        .env("FLAGORBIT_MAX_N", "9")
        .output()
        .unwrap();
    assert!(ok.status.success());
    // The flag wins over the environment.
    let denied = bin()
        .args(["atlas", "9", "--max-n", "8"])
        .env("FLAGORBIT_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(denied.status.code(), Some(4));
}

#[test]
fn verify_small_level_passes() {
    let out = stdout(&run(&["verify", "1", "--trials", "2", "--seed", "5"]));
    assert!(out.contains("certify n=0: PASS"));
    assert!(out.contains("certify n=1: PASS"));
    assert!(out.contains("invariance m=6: PASS"));
    assert!(out.contains("all suites passed"));
}

#[test]
fn verify_full_level_passes() {
    let out = stdout(&run(&["verify", "3", "--trials", "1", "--seed", "5"]));
    assert!(out.contains("certify n=3: PASS (4224 elements, 76 classes"));
    assert!(out.contains("verify level 3: all suites passed"));
}

#[test]
fn identity_matrix_classifies_to_the_all_plus_clan() {
    let identity = r#"{"rows":2,"cols":2,"data":[[1,0],[0,1]]}"#;
    let out = stdout(&run(&["classify", identity]));
    assert!(out.contains("clan: + +"));
    assert!(out.contains("I: [1, 2]"));
}

#[test]
fn frame_input_matches_matrix_input() {
    let as_matrix = stdout(&run(&["classify", ARC_MATRIX]));
    let frame = format!(
        r#"{{"C":{ARC_MATRIX},"D":{{"rows":4,"cols":4,"data":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}}}}"#
    );
    let as_frame = stdout(&run(&["classify", &frame]));
    // Same label, clan, and profile; only the input line differs.
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with("input:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&as_matrix), strip(&as_frame));
}

#[test]
fn atlas_two_matches_the_golden_file() {
    // Pins the enumeration order and the CSV contract.
    let out = stdout(&run(&["atlas", "2", "--format", "csv"]));
    assert_eq!(out, include_str!("golden/atlas2.csv"));
}

#[test]
fn size_zero_paths_work_end_to_end() {
    let out = stdout(&run(&["atlas", "0", "--format", "csv"]));
    assert_eq!(out.lines().count(), 2);
    assert_eq!(out.lines().nth(1).unwrap(), "0,\"\",,,0,0,0,0,1");
    let out = stdout(&run(&["classify", r#"{"rows":0,"cols":0,"data":[]}"#]));
    assert!(out.contains("I: []"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join("flagorbit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("atlas1.csv");
    let _ = stdout(&run(&[
        "atlas", "1", "--format", "csv", "--out", path.to_str().unwrap(),
    ]));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.starts_with("n,clan,I,spi"));
    assert_eq!(contents.lines().count(), 5);
}
