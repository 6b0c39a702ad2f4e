use std::io::Write;
use std::process::{Command, Output, Stdio};

const EVIL: &str = r#"{"kind":"evil"}"#;
const PHI2: &str = r#"{"kind":"beatty","p":3,"q":1,"d":5,"r":2}"#;
const THREE_HALVES: &str = r#"{"kind":"rational","p":3,"q":2}"#;
const TWO: &str = r#"{"kind":"integer","beta":2}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chromatic-nim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args, "");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn letters(text: &str) -> String {
    text.lines().map(|l| l.split(' ').nth(1).unwrap()).collect()
}

#[test]
fn color_listings() {
    assert_eq!(letters(&stdout(&["--scheme", EVIL, "color", "--upto", "7"])), "GGRGRRG");
    assert_eq!(letters(&stdout(&["--scheme", THREE_HALVES, "color", "--upto", "5"])), "RGRRG");
    assert_eq!(stdout(&["--scheme", EVIL, "color", "--upto", "0"]), "");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--scheme", EVIL, "--format", "json", "color", "--upto", "3"])).unwrap();
    assert_eq!(json["colors"], serde_json::json!(["G", "G", "R"]));
}

#[test]
fn scheme_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi2.json");
    std::fs::write(&path, PHI2).unwrap();
    let text = stdout(&["--scheme", path.to_str().unwrap(), "color", "--upto", "5"]);
    assert_eq!(letters(&text), "GRGGR");
}

#[test]
fn solve_examples() {
    let text = stdout(&["--scheme", PHI2, "solve", "4,2"]);
    assert!(text.starts_with("(4,2): N"), "{text}");
    assert!(text.contains("winning move: heap 1 -> 1"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--scheme", PHI2, "--format", "json", "solve", "4,2", "--oracle"])).unwrap();
    assert_eq!(json["backend"], "oracle");
    assert_eq!(json["moves"], serde_json::json!([{"nim": {"heap": 0, "to": 1}}]));
    assert!(stdout(&["--scheme", PHI2, "solve", "0,0"]).starts_with("(0,0): P"));
    assert!(stdout(&["--scheme", EVIL, "solve", "2,5"]).starts_with("(2,5): P"));
    assert!(stdout(&["--scheme", EVIL, "solve", "2,5,1", "--oracle"]).contains("N (oracle)"));
}

#[test]
fn pp_tables() {
    let csv = stdout(&["--scheme", EVIL, "--format", "csv", "pp", "--strategy", "evil-closed", "--count", "3"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "scheme_id,a,b");
    let pairs: Vec<String> = rows[1..].iter().map(|r| r.split_once(',').unwrap().1.to_string()).collect();
    assert_eq!(pairs, ["0,0", "1,3", "2,5"]);
    let csv = stdout(&["--scheme", TWO, "--format", "csv", "pp", "--height", "6"]);
    let pairs: Vec<&str> = csv.lines().skip(1).map(|r| r.split_once(',').unwrap().1).collect();
    assert_eq!(pairs, ["0,0", "1,2", "3,4", "5,6"]);
    assert_eq!(stdout(&["--scheme", EVIL, "--format", "csv", "pp", "--count", "0"]), "scheme_id,a,b\n");
    let oracle = stdout(&["--scheme", THREE_HALVES, "--format", "csv", "pp", "--strategy", "oracle", "--height", "4"]);
    assert_eq!(oracle.lines().count(), 5);
    let out = run(&["--scheme", THREE_HALVES, "pp", "--strategy", "oracle", "--count", "4"], "");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["--scheme", PHI2, "verify", "--strategy", "beatty", "--height", "60"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
    let out = run(&["--scheme", THREE_HALVES, "verify", "--strategy", "red-dominated", "--height", "40"], "");
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--scheme", TWO, "verify", "--strategy", "beatty", "--height", "60"], "");
    assert_eq!(out.status.code(), Some(1));
    // strategy applies only under its domination class
    let out = run(&["--scheme", EVIL, "verify", "--strategy", "green", "--height", "10"], "");
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--scheme", r#"{"kind":"integer","beta":3}"#, "verify", "--strategy", "red", "--height", "10"], "");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fuzz_is_reproducible() {
    let args = ["--seed", "2", "--format", "json", "verify", "--fuzz", "4", "--height", "15"];
    let strip = |s: String| -> Vec<serde_json::Value> {
        let mut reports: Vec<serde_json::Value> = serde_json::from_str(&s).unwrap();
        reports.iter_mut().for_each(|r| r["elapsed_ms"] = 0.into());
        reports
    };
    assert_eq!(strip(stdout(&args)), strip(stdout(&args)));
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(run(&["--scheme", "{not json", "color"], "").status.code(), Some(2));
    assert_eq!(run(&["--scheme", r#"{"kind":"integer","beta":1}"#, "color"], "").status.code(), Some(2));
    assert_eq!(run(&["--scheme", "/no/such/file.json", "color"], "").status.code(), Some(2));
    assert_eq!(run(&["color"], "").status.code(), Some(2));
    assert_eq!(run(&["--scheme", EVIL, "solve", "1,x"], "").status.code(), Some(2));
    assert_eq!(run(&["--scheme", EVIL, "--max-height", "5", "solve", "1,9"], "").status.code(), Some(2));
}

#[test]
fn play_sessions() {
    let out = run(&["--scheme", PHI2, "play", "4,2", "--engine-first"], "quit\n");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("engine plays heap 1 -> 1"), "{text}");
    assert!(text.contains("position (1,2)"));

    let out = run(&["--scheme", EVIL, "play", "0,0"], "");
    assert!(String::from_utf8(out.stdout).unwrap().contains("game over: engine wins"));

    let out = run(&["--scheme", PHI2, "play", "1,2"], "green 0,0\nhint\n2 0\n");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("illegal move"), "{text}");
    assert!(text.contains("hint: no winning move exists"));
    assert!(text.contains("game over: engine wins"));
}
