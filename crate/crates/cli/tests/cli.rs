use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn trienc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trienc"))
        .args(args)
        .env_remove("TRIENC_TOL_RESIDUAL")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "unit-square.json", "[[0,0],[1,0],[1,1],[0,1]]");
    let out = trienc(&["solve", &sq]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["mode"], "linear");
    // Reference value from the brute-force search.
    let oracle = json(&trienc(&["oracle", &sq]))["oracle_perimeter"].as_f64().unwrap();
    assert!((v["perimeter"].as_f64().unwrap() - oracle).abs() < 1e-4);
    assert_eq!(v["triangle"].as_array().unwrap().len(), 3);
    assert_eq!(v["flip_counts"].as_array().unwrap().len(), 4);
}

#[test]
fn solve_triangle_returns_it() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "triangle.csv", "0,0\n4,0\n1,3\n");
    let out = trienc(&["solve", "--mode", "quadratic-safe", &t]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let got: Vec<[f64; 2]> = serde_json::from_value(v["triangle"].clone()).unwrap();
    let want = [[0.0, 0.0], [4.0, 0.0], [1.0, 3.0]];
    let k = got.iter().position(|p| p == &want[0]).expect("first vertex present");
    for i in 0..3 {
        let g = got[(k + i) % 3];
        assert!((g[0] - want[i][0]).abs() < 1e-9 && (g[1] - want[i][1]).abs() < 1e-9);
    }
}

#[test]
fn bowtie_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "bowtie.json", "[[0,0],[1,1],[1,0],[0,1]]");
    let out = trienc(&["solve", &b]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non_convex"));
}

#[test]
fn io_and_parse_errors() {
    assert_eq!(trienc(&["solve", "/definitely/not/here.json"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "[[0,0],[1,0],");
    let out = trienc(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let two = write(dir.path(), "two.json", "[[0,0],[1,0]]");
    assert_eq!(trienc(&["check", &two]).status.code(), Some(2));
}

#[test]
fn oracle_compare_on_generated_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p25.json");
    let p = p.to_str().unwrap();
    assert_eq!(trienc(&["gen", "--n", "25", "--seed", "42", "-o", p]).status.code(), Some(0));
    let out = trienc(&["oracle", "--compare", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["relative_gap"].as_f64().unwrap().abs() <= 1e-4);
    assert_eq!(v["pass"], true);
}

#[test]
fn oracle_gate_fails_with_code_4() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", "[[0,0],[2,0],[3,1],[2,3],[0,2]]");
    // A 4-step grid without a usable gap tolerance cannot pass.
    let out = trienc(&["oracle", "--compare", "--coarse-steps", "4", "--gap-tol", "0", &p]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn check_reports_merges() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.csv", "# square with a midpoint\n0,0\n0.5,0\n1,0\n1,1\n0,1\n");
    let out = trienc(&["check", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("merged: 1"));
}

#[test]
fn gen_is_deterministic() {
    let a = trienc(&["gen", "--n", "30", "--seed", "3", "--format", "csv"]);
    let b = trienc(&["gen", "--n", "30", "--seed", "3", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows = String::from_utf8_lossy(&a.stdout).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 30);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.json", "[[0,0],[1,0],[1,1],[0,1]]");
    let a = trienc(&["render", "--circles", &p]);
    let b = trienc(&["render", "--circles", &p]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<path").count(), 1);
    assert_eq!(svg.matches("<polygon").count(), 1);
}

#[test]
fn residual_tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.json", "[[0,0],[1,0],[1,1],[0,1]]");
    let run = |val: &str| {
        Command::new(env!("CARGO_BIN_EXE_trienc"))
            .args(["solve", &p])
            .env("TRIENC_TOL_RESIDUAL", val)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-8").status.code(), Some(0));
    assert_eq!(run("-1").status.code(), Some(2));
    assert_eq!(run("not-a-number").status.code(), Some(2));
}
