use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn cb_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cb-lab"))
        .args(args)
        .env_remove("CB_LAB_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cb-lab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn hf_of_the_grid() {
    let o = cb_lab(&["hf", &data("grid33.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("HF: 1 3 6 8 9; rX=4"));
}

#[test]
fn hf_of_one_point() {
    let p = temp("one.json");
    std::fs::write(&p, r#"{"n": 3, "points": [["2", "4", "-6", "1/3"]]}"#).unwrap();
    let o = cb_lab(&["hf", p.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("HF: 1; rX=0"));
}

#[test]
fn malformed_files_exit_two() {
    for (name, text) in [
        ("float.json", r#"{"n": 1, "points": [["1", "0.5"]]}"#),
        ("short.json", r#"{"n": 2, "points": [["1", "0"]]}"#),
        ("zero.json", r#"{"n": 1, "points": [["0", "0"]]}"#),
        ("junk.json", "not json"),
    ] {
        let p = temp(name);
        std::fs::write(&p, text).unwrap();
        let o = cb_lab(&["hf", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(!o.stderr.is_empty(), "{name}");
    }
}

#[test]
fn cbp_verdicts() {
    let o = cb_lab(&["cbp", &data("grid33.json"), "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("CBP(3): true"));
    assert!(out.contains("hf=true alpha=true divisibility=true dual=true"));

    let o = cb_lab(&["cbp", &data("grid33.json"), "--r", "4"]);
    assert_eq!(o.status.code(), Some(1));

    let o = cb_lab(&["cbp", &data("triangle.json"), "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failing point 0 \"A\""));

    let o = cb_lab(&["cbp", &data("grid33.json"), "--r", "3", "--fast", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn covers() {
    let o = cb_lab(&["cover", &data("collinear5.json"), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dimension: 1 (optimal)\nlength: 1\n"));

    let o = cb_lab(&["cover", &data("skewlines.json"), "--budget", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("dimension: 2 (optimal)\nlength: 2\n"));
    assert_eq!(out.matches(": P^1 ").count(), 2);

    let o = cb_lab(&["cover", &data("random30.json"), "--budget", "4"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("inexhaustive"));

    let o = Command::new(env!("CARGO_BIN_EXE_cb-lab"))
        .args(["cover", &data("skewlines.json"), "--budget", "4"])
        .env("CB_LAB_LIMIT", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn generated_grid_matches_bundled_file() {
    let o = cb_lab(&["generate", "grid", "3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let bundled = std::fs::read(data("grid33.json")).unwrap();
    assert_eq!(o.stdout, bundled);
    let p = temp("grid.json");
    cb_lab(&["generate", "grid", "3", "3", "-o", p.to_str().unwrap()]);
    assert_eq!(std::fs::read(&p).unwrap(), bundled);
}

#[test]
fn search_is_empty_for_dimension_four() {
    let o = cb_lab(&["search", "4", "3", "--trials", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1, "{out}");
    let summary: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(summary["counterexamples"], 0);
    assert_eq!(summary["inconclusive"], 0);
}

#[test]
fn verify_exit_codes() {
    let suite = temp("suite.json");
    std::fs::write(
        &suite,
        r#"{"name": "tiny", "seed": 1, "properties": ["equivalence", "lower_bound"],
            "families": [{"family": "grid", "d": [1, 3], "e": [2, 3]}]}"#,
    )
    .unwrap();
    let report = temp("report.jsonl");
    let o = cb_lab(&[
        "verify",
        suite.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures"));
    let lines = std::fs::read_to_string(&report).unwrap();
    for line in lines.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }

    std::fs::write(
        &suite,
        r#"{"name": "bad", "seed": 1, "properties": ["nonsense"], "families": []}"#,
    )
    .unwrap();
    let o = cb_lab(&["verify", suite.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
