use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minkplane"))
}

fn scene(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenes").join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("minkplane-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn write_scene(name: &str, text: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn radon_check_on_hexagon() {
    let s = scene("hexagon.json");
    let r = report(&run(&["radon-check", "--scene", s.to_str().unwrap()]));
    assert_eq!(r["command"], "radon-check");
    assert_eq!(r["outputs"]["is_radon"], true);
    let lambda = r["outputs"]["lambda"].as_f64().unwrap();
    assert!((lambda - 3f64.sqrt() / 2.0).abs() < 1e-9, "{lambda}");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(r["inputs"]["norm"]["type"], "polygon");
}

#[test]
fn iso_report_on_square() {
    let s = scene("square.json");
    let r = report(&run(&["iso-report", "--scene", s.to_str().unwrap()]));
    let slacks = r["outputs"]["slacks"].as_object().unwrap();
    assert_eq!(slacks.len(), 8);
    assert_eq!(slacks["chakerian_star"].as_f64().unwrap(), 0.0);
    assert!(slacks.values().all(|v| v.as_f64().unwrap() >= 0.0));
    for c in r["checks"].as_array().unwrap() {
        assert!(c["threshold"].is_number() && c["relation"].is_string());
        assert_eq!(c["pass"], true, "{c}");
    }
}

#[test]
fn rerun_is_byte_identical() {
    let s = scene("lp4.json");
    let s = s.to_str().unwrap();
    let (r1, r2) = (tmp("p1.json"), tmp("p2.json"));
    let (f1, f2) = (tmp("p1.svg"), tmp("p2.svg"));
    for (r, f) in [(&r1, &f1), (&r2, &f2)] {
        let out = run(&["projections", "--scene", s, "--seed", "5", "--out", r.to_str().unwrap(), "--svg", f.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f2).unwrap());
    let r: Value = serde_json::from_slice(&std::fs::read(&r1).unwrap()).unwrap();
    assert_eq!(r["seed"], 5);
    assert!(r["seed_rule"].as_str().unwrap().contains("ChaCha8"));
}

#[test]
fn square_figure_has_square_and_diamond() {
    let s = scene("square.json");
    let f = tmp("square.svg");
    let out = run(&["isoperimetrix", "--scene", s.to_str().unwrap(), "--svg", f.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&f).unwrap();
    assert!(svg.starts_with("<?xml"));
    // unit square and its isoperimetrix, the unit diamond; y flipped
    assert!(svg.contains("M1 -1 L-1 -1 L-1 1 L1 1 Z"), "{svg}");
    assert!(svg.contains("M1 0 L0 -1 L-1 0 L0 1 Z"), "{svg}");
    assert_eq!(svg.matches("<path").count(), 2);
}

#[test]
fn malformed_json_reports_position() {
    let p = write_scene("bad.json", "{\n  \"norm\": {\"type\": \"lp\", \"p\": }\n}");
    let out = run(&["antinorm", "--scene", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn validation_errors_exit_2() {
    for text in [
        r#"{"norm": {"type": "lp", "p": 0.5}}"#,
        r#"{"norm": {"type": "polygon", "vertices": [[1, 0]]}}"#,
        r#"{"norm": {"type": "euclidean"}, "extra": 1}"#,
    ] {
        let p = write_scene("invalid.json", text);
        let out = run(&["antinorm", "--scene", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    let s = scene("hexagon.json");
    let s = s.to_str().unwrap();
    assert_eq!(run(&["antinorm", "--scene", s, "--tol", "nope=1"]).status.code(), Some(2));
    assert_eq!(run(&["antinorm", "--scene", s, "--tol", "slack"]).status.code(), Some(2));
    let bodiless = scene("mixed.json");
    assert_eq!(run(&["iso-report", "--scene", bodiless.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["antinorm"]).status.code(), Some(2));
    assert_eq!(run(&["proptest", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn tolerance_override_moves_threshold() {
    let s = scene("square.json");
    let r = report(&run(&["iso-report", "--scene", s.to_str().unwrap(), "--tol", "slack=0.5"]));
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "circump").unwrap().clone();
    assert!(c["threshold"].as_f64().unwrap() < -1.0);
    assert_eq!(r["inputs"]["tolerances"]["slack"], 0.5);
}

#[test]
fn proptest_suite_passes() {
    let out = run(&["proptest", "--suite", "all", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8_lossy(&out.stderr);
    assert!(table.contains("invariant") && table.contains("PASS") && !table.contains("FAIL"));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["outputs"]["table"].as_array().unwrap().len(), minkplane_cli::suite::names().len());
    let again = run(&["proptest", "--suite", "all", "--seed", "42"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn every_command_runs_on_its_scene() {
    for (cmd, sc) in [
        ("antinorm", "hexagon.json"),
        ("isoperimetrix", "lp4.json"),
        ("radon-construct", "radon-l1-linf.json"),
        ("radonize", "square.json"),
        ("triangle", "triangle.json"),
        ("bisectors", "triangle.json"),
        ("bisectors", "strip.json"),
        ("fermat", "triangle.json"),
        ("zenodorus", "hexagon.json"),
        ("girth", "square.json"),
        ("angles", "hexagon.json"),
        ("convexity", "convexity.json"),
    ] {
        let s = scene(sc);
        let r = report(&run(&[cmd, "--scene", s.to_str().unwrap()]));
        assert_eq!(r["command"], cmd);
        for c in r["checks"].as_array().unwrap() {
            assert_eq!(c["pass"], true, "{cmd} on {sc}: {c}");
        }
    }
}

#[test]
fn radon_construct_is_quadrant_colored() {
    let s = scene("radon-l1-linf.json");
    let f = tmp("rc.svg");
    let out = run(&["radon-construct", "--scene", s.to_str().unwrap(), "--svg", f.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&f).unwrap();
    let colors: std::collections::BTreeSet<&str> =
        svg.lines().filter(|l| l.starts_with("<path")).filter_map(|l| l.split("stroke=\"").nth(1)).map(|s| &s[..7]).collect();
    assert_eq!(colors.len(), 4);
}
