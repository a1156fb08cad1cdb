use std::process::{Command, Output};

use serde_json::Value;

fn segre_mcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segre-mcm"))
        .args(args)
        .output()
        .expect("run segre-mcm")
}

fn code(args: &[&str]) -> i32 {
    segre_mcm(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = segre_mcm(&full);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(segre_mcm(args).stdout).unwrap()
}

#[test]
fn series_examples() {
    let v = json(&["series", "ci:n=5,deg=6"]);
    let s = &v["series"];
    assert_eq!(s["dimension"], 4);
    assert_eq!(s["multiplicity"], 6);
    assert_eq!(s["series_degree"], 1);
    let coeffs: Vec<i64> = s["coefficients"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    assert_eq!(coeffs.len(), 12);
    assert_eq!(&coeffs[..7], &[1, 5, 15, 35, 70, 126, 209]);

    let v = json(&["series", "poly:n=2"]);
    assert_eq!(v["series"]["dimension"], 2);
    assert_eq!(v["series"]["multiplicity"], 1);
    assert_eq!(v["series"]["series_degree"], -2);
    assert_eq!(v["input_echo"][0], "poly:n=2");
}

#[test]
fn exit_code_contract() {
    assert_eq!(code(&["series", "ci:n=5,deg=6"]), 0);
    assert_eq!(code(&["series", "ci:n=2,deg=1"]), 2);
    assert_eq!(code(&["series", "ci:n=5,deg=6 "]), 2);
    assert_eq!(code(&["verdict", "ci:n=5,deg=6", "poly:n=2", "--assume-isolated-singularity"]), 3);
    assert_eq!(code(&["verdict", "poly:n=2", "poly:n=2"]), 0);
    assert_eq!(code(&["verdict", "ci:n=5,deg=7", "poly:n=2"]), 4);
    assert_eq!(code(&["verdict", "ci:n=5,deg=6", "poly:n=2"]), 4);
    assert_eq!(code(&["verdict", "ci:n=5,deg=6", "poly:n=1"]), 2);
    assert_eq!(code(&["segre", "ci:n=3,deg=2+2", "poly:n=2"]), 2);
    assert_eq!(code(&["sweep", "--n-min", "7", "--n-max", "5"]), 2);
    assert_eq!(code(&["sweep", "--n-min", "5", "--n-max", "7", "--h-max", "2", "--theorem-mode"]), 2);
    assert_eq!(code(&["bogus"]), 2);
}

#[test]
fn verdict_exit_codes_follow_the_json_outcome() {
    for a in ["ci:n=5,deg=6", "ci:n=6,deg=2+5", "ci:n=5,deg=2+2", "ci:n=5,deg=7", "poly:n=3"] {
        for flag in [None, Some("--assume-isolated-singularity")] {
            let mut args = vec!["verdict", a, "poly:n=2"];
            args.extend(flag);
            let v = json(&args);
            let very_small = v["verdicts"]
                .as_array()
                .unwrap()
                .iter()
                .find(|r| r["question"] == "very_small_mcm")
                .unwrap();
            let expected = match very_small["outcome"].as_str().unwrap() {
                "exists" => 0,
                "does_not_exist" => 3,
                "inconclusive" => 4,
                other => panic!("unexpected outcome {other}"),
            };
            assert_eq!(code(&args), expected, "{args:?}");
        }
    }
}

#[test]
fn parse_errors_point_at_the_offending_character() {
    let out = segre_mcm(&["series", "ci:n=5,deg=x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 11"), "{err}");
    let lines: Vec<&str> = err.lines().collect();
    let caret = lines.iter().position(|l| l.trim() == "^").unwrap();
    let input = lines[caret - 1];
    assert_eq!(input.chars().nth(lines[caret].find('^').unwrap()), Some('x'));
}

#[test]
fn corollary_verdict_reports_the_invariants() {
    let v = json(&["verdict", "ci:n=5,deg=6", "poly:n=2", "--assume-isolated-singularity"]);
    assert_eq!(v["invariants"]["multiplicity_e"], 24);
    assert_eq!(v["invariants"]["i_invariant"], 7);
    assert_eq!(v["invariants"]["paramdeg_interval"], serde_json::json!([24, 31]));
    assert_eq!(v["verdicts"][0]["question"], "rank_one_mcm");
    assert_eq!(v["verdicts"][0]["outcome"], "does_not_exist");
    assert_eq!(v["verdicts"][1]["outcome"], "does_not_exist");
    assert!(!v["verdicts"][1]["assumptions_used"].as_array().unwrap().is_empty());
    let cohomology = v["cohomology"].as_array().unwrap();
    let qs: Vec<i64> = cohomology.iter().map(|e| e["q"].as_i64().unwrap()).collect();
    assert_eq!(qs, vec![4, 5]);
    assert_eq!(cohomology[0]["length"], 7);
    assert_eq!(cohomology[1]["length"], "infinite");
}

#[test]
fn localcoh_flags_mcm_twists() {
    // a_A = -1 and a_B = -2: the window is k in {0, 1}
    for (k, mcm) in [("-1", false), ("0", true), ("1", true), ("2", false)] {
        let v = json(&["localcoh", "ci:n=5,deg=2+2", "poly:n=2", "--twist", k]);
        assert_eq!(v["maximal_cohen_macaulay"], mcm, "twist {k}");
        assert_eq!(v["twist"], k.parse::<i64>().unwrap());
    }
}

#[test]
fn json_output_round_trips() {
    let cases: &[&[&str]] = &[
        &["series", "ci:n=6,deg=2+3"],
        &["segre", "ci:n=5,deg=6", "poly:n=2"],
        &["localcoh", "ci:n=5,deg=6", "poly:n=3", "--twist", "-2"],
        &["verdict", "ci:n=7,deg=8", "poly:n=2", "--assume-isolated-singularity"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let raw = String::from_utf8(segre_mcm(&full).stdout).unwrap();
        let value: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", raw, "{args:?}");
    }
}

#[test]
fn sweep_reproduces_the_multiplicity_column() {
    let csv = stdout(&["sweep", "--n-min", "5", "--n-max", "7", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,degrees,dimA,d,aA,e,I,rank_bound,rank_one,very_small");
    assert_eq!(lines.len(), 4);
    let e: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(5).unwrap()).collect();
    assert_eq!(e, ["24", "35", "48"]);
    assert!(lines[1..].iter().all(|l| l.ends_with(",does_not_exist")));
    assert!(!csv.contains('\r'));
}

#[test]
fn sweep_fixed_degrees_below_dimension_four() {
    let out = stdout(&["--json", "sweep", "--n-min", "5", "--n-max", "5", "--degrees", "2+2", "--h-max", "2"]);
    let records: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["dimA"], 3);
    assert_eq!(records[0]["rank_one"], "exists");
}

#[test]
fn sweep_rows_are_ordered_by_n_then_degrees() {
    let csv = stdout(&[
        "sweep", "--n-min", "6", "--n-max", "8", "--degree-offsets", "1,2", "--h-max", "2", "--format", "csv",
    ]);
    let keys: Vec<(u32, Vec<u32>)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut fields = l.split(',');
            let n = fields.next().unwrap().parse().unwrap();
            let degrees = fields.next().unwrap().split('+').map(|d| d.parse().unwrap()).collect();
            (n, degrees)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.len() > 3);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["--json", "verdict", "ci:n=6,deg=7", "poly:n=2"];
    let direct = segre_mcm(&args).stdout;
    let mut with_file = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_file.extend(["--output", path_str]);
    let out = segre_mcm(&with_file);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct);
}

#[test]
fn unwritable_output_exits_five() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let path_str = path.to_str().unwrap();
    assert_eq!(code(&["sweep", "--n-min", "5", "--n-max", "6", "--output", path_str]), 5);
    assert_eq!(code(&["series", "poly:n=2", "--output", path_str]), 5);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "sweep", "--n-min", "5", "--n-max", "9", "--degree-offsets", "1,2,3,4", "--h-max", "3", "--format", "json",
    ];
    let first = segre_mcm(&args);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..3 {
        assert_eq!(segre_mcm(&args).stdout, first.stdout);
    }
}
