use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-bubbles")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn winner_line(o: &Output) -> String {
    stdout(o).lines().find(|l| l.starts_with("winner")).unwrap().to_string()
}

#[test]
fn equal_thirds_on_hexagonal_torus_is_a_tie() {
    let a = (3f64.sqrt() / 6.0).to_string();
    let o = run(&["solve", "--torus", "hex", "--areas", &format!("{a},{a}"), "--chain-sweep", "128"]);
    assert!(o.status.success());
    assert!(winner_line(&o).contains("DoubleBand+HexagonTiling"), "{}", stdout(&o));
    assert!(stdout(&o).contains("perimeter  3.000000000"));
}

#[test]
fn small_areas_on_square_torus() {
    let o = run(&["solve", "--torus", "1,90", "--areas", "0.02,0.02", "--chain-sweep", "128"]);
    assert!(o.status.success());
    assert!(winner_line(&o).ends_with("StandardDoubleBubble"), "{}", stdout(&o));
}

#[test]
fn json_and_svg_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let svg = dir.path().join("s.svg");
    let o = run(&[
        "solve",
        "--space",
        "cylinder",
        "--areas",
        "0.3,0.5",
        "--chain-sweep",
        "128",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["schema"], "torus-bubbles/solve");
    assert_eq!(doc["version"], 1);
    assert!(doc["requested"][2].is_null(), "infinite exterior serializes as null");
    let min = doc["min_perimeter"].as_f64().unwrap();
    let winners = doc["winners"].as_array().unwrap();
    assert!(!winners.is_empty());
    for w in winners {
        assert!((w["perimeter"].as_f64().unwrap() - min).abs() <= 1e-9);
    }
    for c in doc["feasible"].as_array().unwrap() {
        assert_ne!(c["kind"], "HexagonTiling");
    }
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn invalid_input_exit_codes() {
    for args in [
        ["solve", "--torus", "0.5,90", "--areas", "0.1,0.1"],
        ["solve", "--torus", "1,45", "--areas", "0.1,0.1"],
        ["solve", "--torus", "1,90", "--areas", "0.6,0.6"],
        ["solve", "--torus", "1,90", "--areas", "-0.1,0.1"],
        ["solve", "--torus", "1,90", "--areas", "x,0.1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
}

#[test]
fn phase_csv_does_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("p{threads}.csv"));
        let o = run(&[
            "phase",
            "--torus",
            "hex",
            "--resolution",
            "12",
            "--chain-sweep",
            "64",
            "--threads",
            threads,
            "--out-csv",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        files.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let mut lines = files[0].lines();
    assert_eq!(lines.next(), Some("A1,A2,A0,winner,perimeter,tie"));
    assert_eq!(lines.count(), 144);
}

#[test]
fn verify_inequalities_passes() {
    let o = run(&["verify", "--suite", "inequalities"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("ok"));
}
