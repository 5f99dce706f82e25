use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ivp-funnel"));
    c.env_remove("FUNNEL_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn instance(dir: &Path, name: &str, rhs: &str, domain: &str, x0: f64, y0: &[f64]) -> PathBuf {
    let text = format!(
        r#"{{"format":"ivp-funnel/instance","version":"1.0","dimension":{},"rhs":{{"expr":"{rhs}"}},"domain":{domain},"x0":{x0},"y0":{y0:?}}}"#,
        y0.len()
    );
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn growing(dir: &Path, name: &str, rhs: &str, x0: f64, y0: &[f64]) -> PathBuf {
    instance(dir, name, rhs, r#"{"auto_growing":true}"#, x0, y0)
}

/// Rows of a tube CSV as (x, [lo, hi, ...]).
fn csv_rows(text: &str) -> Vec<(f64, Vec<f64>)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
            (v[0], v[1..].to_vec())
        })
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zero_rhs_gives_one_constant_tube() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "zero.json", "0", 0.0, &[0.25]);
    let out = d.path().join("out");
    let o = run(&["solve", s(&f), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["confirmed"], 1);
    assert_eq!(summary["undecided"], 0);
    let rows = csv_rows(&std::fs::read_to_string(out.join("tube-confirmed-000.csv")).unwrap());
    assert_eq!(rows.len(), 257);
    assert!(rows.iter().all(|(_, n)| n[0] == 0.25 && n[1] == 0.25));
}

#[test]
fn exponential_rows_bracket_the_oracle() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "exp.json", "y", 0.0, &[1.0]);
    let out = d.path().join("out");
    let o = run(&["solve", s(&f), "--out", s(&out), "--grid-depth", "10"]);
    assert_eq!(code(&o), 0);
    for (x, n) in csv_rows(&std::fs::read_to_string(out.join("tube-confirmed-000.csv")).unwrap()) {
        assert!(n[0] <= x.exp() && x.exp() <= n[1], "{x}: {n:?}");
    }
    // the local interval is narrower than [0, 1/2]; the glued extension reaches it
    let o = run(&["extend", s(&f), "--rounds", "6", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&std::fs::read_to_string(out.join("glued.csv")).unwrap());
    let (x, n) = rows.iter().min_by(|a, b| (a.0 - 0.5).abs().total_cmp(&(b.0 - 0.5).abs())).unwrap();
    assert!((x - 0.5).abs() < 1e-3, "{x}");
    assert!(n[0] <= x.exp() && x.exp() <= n[1]);
    let at_half = rows.iter().find(|(x, _)| *x == 0.5);
    if let Some((_, n)) = at_half {
        assert!(n[0] <= 1.648721270700128 && 1.648721270700128 <= n[1]);
    }
}

#[test]
fn malformed_expression_exits_3_with_position() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "bad.json", "y + @", 0.0, &[1.0]);
    let o = run(&["solve", s(&f), "--out", s(d.path())]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("column 5"), "{}", stderr(&o));
}

#[test]
fn unknown_major_version_is_rejected() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "v.json", "y", 0.0, &[1.0]);
    let text = std::fs::read_to_string(&f).unwrap().replace("\"1.0\"", "\"2.0\"");
    std::fs::write(&f, text).unwrap();
    let o = run(&["solve", s(&f), "--out", s(d.path())]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("version"));
}

#[test]
fn point_outside_domain_exits_2() {
    let d = TempDir::new().unwrap();
    let f = instance(d.path(), "ball.json", "y", r#"{"balls":[{"center":[0,0],"radius":1}]}"#, 0.0, &[0.0]);
    let o = run(&["solve", s(&f), "--at", "5,0", "--out", s(d.path())]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn blow_up_rounds_stay_below_one() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "sq.json", "y*y", 0.0, &[1.0]);
    let o = run(&["extend", s(&f), "--rounds", "6", "--out", s(d.path())]);
    assert_eq!(code(&o), 0);
    let records: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 6);
    let bs: Vec<f64> = records.iter().map(|r| r["b"].as_f64().unwrap()).collect();
    assert!(bs.windows(2).all(|w| w[0] < w[1]));
    assert!(bs.iter().all(|&b| b < 1.0));
    for (x, n) in csv_rows(&std::fs::read_to_string(d.path().join("glued.csv")).unwrap()) {
        let exact = 1.0 / (1.0 - x);
        assert!(n[0] <= exact * (1.0 + 1e-12) && exact * (1.0 - 1e-12) <= n[1]);
    }
}

#[test]
fn zero_rhs_rounds_widen() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "zero.json", "0", 0.0, &[0.0]);
    let o = run(&["extend", s(&f), "--rounds", "3", "--format", "csv", "--out", s(d.path())]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "round,a,b,left,right");
    // hand trace: delta = 1/2, M = 1, so each round adds 3/8 on both sides
    assert_eq!(lines[1], "0,-0.375,0.375,growing,growing");
    assert_eq!(lines[2], "1,-0.75,0.75,growing,growing");
    assert_eq!(lines[3], "2,-1.125,1.125,growing,growing");
}

#[test]
fn zero_rounds_is_a_usage_error() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "zero.json", "0", 0.0, &[0.0]);
    assert_eq!(code(&run(&["extend", s(&f), "--rounds", "0"])), 3);
    assert_eq!(code(&run(&["extend", s(&f), "--rounds", "x"])), 3);
    assert_eq!(code(&run(&["solve"])), 3);
}

#[test]
fn gadget_files() {
    let d = TempDir::new().unwrap();
    let g = d.path().join("g.json");
    let o = run(&["gadget", "--streams", "[[0]]", "--cell-budget", "8", "--out", s(&g)]);
    assert_eq!(code(&o), 0);
    let file = solves_cleanly(&g);
    assert!(file.contains("\"gadget\""));

    let o = run(&["gadget", "--streams", "[[0,1]]"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("both 0 and 1"));

    let o = run(&["gadget", "--streams", "[]"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rhs"]["gadget"]["streams"], serde_json::json!([]));
    assert_eq!(v["x0"], 0.0);
}

/// The emitted file must load and solve.
fn solves_cleanly(g: &Path) -> String {
    let out = g.with_extension("out");
    let o = run(&["solve", s(g), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    std::fs::read_to_string(g).unwrap()
}

#[test]
fn decode_forced_streams() {
    let d = TempDir::new().unwrap();
    let g = d.path().join("g.json");
    assert_eq!(code(&run(&["gadget", "--streams", "[[1],[2,0]]", "--out", s(&g)])), 0);
    let out = d.path().join("out");
    assert_eq!(code(&run(&["solve", s(&g), "--out", s(&out), "--max-bisections", "0"])), 0);
    let o = run(&["decode", s(&out.join("solve-result.json")), s(&g), "--bits", "2", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bits = &v["report"]["bits"];
    // stream 0 holds a 1, so 0 is the only valid answer; stream 1 holds a 0
    assert_eq!(bits["0"]["bit"], 0);
    assert_eq!(bits["1"]["bit"], 1);
    assert_eq!(bits["0"]["certified"], true);
    assert_eq!(bits["1"]["certified"], true);
    assert!(out.join("decode-report.json").exists());
}

#[test]
fn decode_all_twos_is_valid_either_way() {
    let d = TempDir::new().unwrap();
    let g = d.path().join("g.json");
    assert_eq!(code(&run(&["gadget", "--streams", "[[]]", "--cell-budget", "4", "--out", s(&g)])), 0);
    let out = d.path().join("out");
    assert_eq!(code(&run(&["solve", s(&g), "--out", s(&out)])), 0);
    let o = run(&["decode", s(&out.join("solve-result.json")), s(&g), "--bits", "1", "--out", s(&out)]);
    assert!(matches!(code(&o), 0 | 4), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bit = v["report"]["bits"]["0"]["bit"].as_u64().unwrap();
    assert!(bit <= 1);
}

#[test]
fn decode_missing_result_exits_3() {
    let d = TempDir::new().unwrap();
    let g = d.path().join("g.json");
    assert_eq!(code(&run(&["gadget", "--streams", "[[1]]", "--out", s(&g)])), 0);
    let o = run(&["decode", s(&d.path().join("missing.json")), s(&g), "--bits", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "closed-forms"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 5);

    let o = run(&["verify", "--suite", "interval", "--samples", "4000", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().skip(1).all(|l| l.contains(",true,")));

    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 3);
}

#[test]
fn output_directory_from_environment() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "zero.json", "0", 0.0, &[0.0]);
    let out = d.path().join("env-out");
    let o = bin().args(["solve", s(&f)]).env("FUNNEL_OUT_DIR", &out).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(out.join("solve-result.json").exists());
}

#[test]
fn artifacts_do_not_depend_on_thread_count() {
    let d = TempDir::new().unwrap();
    let f = growing(d.path(), "amp.json", "9*x*(1-x)*scbrt(y)", 0.25, &[0.0]);
    let mut docs = Vec::new();
    for threads in ["1", "4"] {
        let out = d.path().join(format!("t{threads}"));
        let o = run(&["--threads", threads, "solve", s(&f), "--max-bisections", "16", "--out", s(&out)]);
        assert_eq!(code(&o), 0);
        docs.push(std::fs::read(out.join("solve-result.json")).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
}
