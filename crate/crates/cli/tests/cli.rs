use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_distinguon"));
    c.env_remove("DISTINGUON_MAX_N");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write_beamsplitter(dir: &Path) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = serde_json::json!({"m": 2, "re": [[h, h], [h, -h]], "im": [[0.0, 0.0], [0.0, 0.0]]});
    fs::write(dir.join("bs.json"), u.to_string()).unwrap();
}

fn probabilities(dist: &Value) -> Vec<(Vec<u64>, f64)> {
    dist["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let occ = e["occupation"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (occ, e["p"].as_f64().unwrap())
        })
        .collect()
}

#[test]
fn hom_distribution_file() {
    let dir = tempfile::tempdir().unwrap();
    write_beamsplitter(dir.path());
    let o = run(dir.path(), &["distribution", "--model", "ideal", "--input", "1,1", "--unitary", "bs.json", "--out", "dist.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let d = json(&dir.path().join("dist.json"));
    assert_eq!(d["m"], 2);
    assert_eq!(d["n"], 2);
    let p = probabilities(&d);
    assert_eq!(p.iter().map(|(o, _)| o.clone()).collect::<Vec<_>>(), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert!(p[1].1.abs() < 1e-15);
    assert!((p[0].1 - 0.5).abs() < 1e-12 && (p[2].1 - 0.5).abs() < 1e-12);

    let m = json(&dir.path().join("dist.json.manifest.json"));
    assert_eq!(m["command"], "distribution");
    assert_eq!(m["inputs"][0]["path"], "bs.json");
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(m["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    write_beamsplitter(dir.path());
    let o = run(dir.path(), &["distribution", "--model", "distinguishable", "--input", "1,1", "--unitary", "bs.json", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "occupation,p");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("1;1,0.5"));
}

#[test]
fn partial_with_overlap_matrix() {
    let dir = tempfile::tempdir().unwrap();
    write_beamsplitter(dir.path());
    let x = 0.36;
    let s = serde_json::json!({"n": 2, "re": [[1.0, x], [x, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]});
    fs::write(dir.path().join("s.json"), s.to_string()).unwrap();
    let o = run(dir.path(), &["distribution", "--model", "partial", "--input", "1,1", "--unitary", "bs.json", "--smatrix", "s.json", "--out", "d.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = probabilities(&json(&dir.path().join("d.json")));
    assert!((p[1].1 - (1.0 - x * x) / 2.0).abs() < 1e-12);

    let labels = serde_json::json!({"labels": [{"mode": 0, "re": [1.0, 0.0]}, {"mode": 1, "re": [0.0, 1.0]}]});
    fs::write(dir.path().join("labels.json"), labels.to_string()).unwrap();
    let o = run(dir.path(), &["distribution", "--model", "partial", "--input", "1,1", "--unitary", "bs.json", "--labels", "labels.json", "--out", "l.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = probabilities(&json(&dir.path().join("l.json")));
    assert!((p[1].1 - 0.5).abs() < 1e-12);
}

#[test]
fn validation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["distribution", "--model", "lossy", "--lost", "3", "--input", "1,1"]);
    assert_eq!(code(&o), 1);
    let o = run(dir.path(), &["frobnicate"]);
    assert_eq!(code(&o), 1);
    let o = run(dir.path(), &["distribution", "--model", "ideal", "--input", "1,x", "--unitary", "u.json"]);
    assert_eq!(code(&o), 1);
    let o = run(dir.path(), &["distribution", "--model", "partial", "--input", "1,1", "--unitary", "u.json"]);
    assert_eq!(code(&o), 1);
    let o = run(dir.path(), &["--help"]);
    assert_eq!(code(&o), 0);

    let o = run(dir.path(), &["--json-errors", "distribution", "--model", "lossy", "--lost", "3", "--input", "1,1"]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["error"], "invalid_input");
    assert_eq!(err["exit_code"], 1);
}

#[test]
fn size_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gen-unitary", "--modes", "2", "--seed", "1", "--out", "u.json"]);
    assert_eq!(code(&o), 0);
    let o = run(dir.path(), &["--json-errors", "distribution", "--model", "ideal", "--input", "25,0", "--unitary", "u.json"]);
    assert_eq!(code(&o), 2);
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["error"], "size_limit");
    let o = run(dir.path(), &["trace-norm", "--n", "7", "--eps", "0.5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unitary_generation_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gen-unitary", "--modes", "4", "--seed", "7", "--out", "u.json"]);
    assert_eq!(code(&o), 0);
    let u = json(&dir.path().join("u.json"));
    assert_eq!(u["m"], 4);
    assert_eq!(u["re"].as_array().unwrap().len(), 4);

    let o = run(dir.path(), &["decompose", "--in", "u.json", "--out", "seq.json"]);
    assert_eq!(code(&o), 0);
    let seq = json(&dir.path().join("seq.json"));
    let mixes = seq["elements"].as_array().unwrap().iter().filter(|e| e["kind"] == "mix").count();
    assert!(mixes <= 6);

    let o = run(dir.path(), &["replay", "--manifest", "u.json.manifest.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("identical"));
    assert!(!dir.path().join("u.json.replay").exists());

    let o = run(dir.path(), &["replay", "--manifest", "seq.json.manifest.json"]);
    assert_eq!(code(&o), 0);

    // tampered output no longer matches
    fs::write(dir.path().join("u.json.manifest.json"), fs::read_to_string(dir.path().join("u.json.manifest.json")).unwrap().replace("\"--seed\",\n    \"7\"", "\"--seed\",\n    \"8\"")).unwrap();
    let o = run(dir.path(), &["replay", "--manifest", "u.json.manifest.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn sampling_round() {
    let dir = tempfile::tempdir().unwrap();
    write_beamsplitter(dir.path());
    let base = ["--model", "ideal", "--input", "1,1", "--unitary", "bs.json"];
    let mut args = vec!["sample"];
    args.extend(base);
    args.extend(["--shots", "20000", "--seed", "5", "--out", "s.jsonl"]);
    let o = run(dir.path(), &args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("s.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 20000);
    assert!(text.lines().all(|l| l == "[2,0]" || l == "[0,2]"));

    let mut args = vec!["--threads", "1", "sample"];
    args.extend(base);
    args.extend(["--shots", "20000", "--seed", "5", "--out", "t.jsonl"]);
    assert_eq!(code(&run(dir.path(), &args)), 0);
    assert_eq!(text, fs::read_to_string(dir.path().join("t.jsonl")).unwrap());

    let mut args = vec!["distribution"];
    args.extend(base);
    args.extend(["--out", "d.json"]);
    assert_eq!(code(&run(dir.path(), &args)), 0);
    let o = run(dir.path(), &["stats", "--samples", "s.jsonl", "--dist", "d.json"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let tvd: f64 = out.lines().find(|l| l.starts_with("tvd")).unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(tvd < 0.02);
    assert!(out.contains("p-value"));

    let mut args = vec!["sample"];
    args.extend(base);
    args.extend(["--shots", "10", "--method", "direct"]);
    assert_eq!(code(&run(dir.path(), &args)), 1);
}

#[test]
fn verify_and_trace_norm() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--suite", "rep-theory"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("pass") && !out.contains("FAIL"));

    let o = run(dir.path(), &["trace-norm", "--n", "3", "--eps", "0.5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2.000000000000"));
    let o = run(dir.path(), &["trace-norm", "--n", "3", "--eps", "1.5"]);
    assert_eq!(code(&o), 1);
}
