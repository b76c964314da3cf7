use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn mingenus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mingenus"))
        .args(args)
        .env_remove("MINGENUS_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = mingenus(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is one JSON value");
    (out.status.code().unwrap(), v)
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn batch_file(lines: &[String]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f.flush().unwrap();
    f
}

#[test]
fn genus_of_section_class() {
    let (code, v) = json_out(&["genus", "--class", r#"{"g":2,"handles":[[0,0,0,0],[0,0,0,0]],"e":1,"f":0}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["genus"], json!(2));
    assert_eq!(v["case"], json!("AdjunctionCase"));
}

#[test]
fn normalize_reports_certifying_word() {
    let (code, v) = json_out(&[
        "normalize",
        "--form",
        "full",
        "--class",
        r#"{"g":1,"handles":[[0,0,0,0]],"e":1,"f":0}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["normal"], json!({"g":1,"handles":[[1,0,0,0]],"e":1,"f":0}));
    assert_eq!(v["word"], json!(["Dxy(1)", "Rx(1)^-1", "Rz(1)^-1"]));
}

#[test]
fn normalize_word_replays_through_act() {
    let class = r#"{"g":2,"handles":[[3,-4,2,7],[5,1,-6,2]],"e":4,"f":-9}"#;
    let (_, n) = json_out(&["normalize", "--form", "full", "--class", class]);
    let word = n["word"].to_string();
    let (code, a) = json_out(&["act", "--class", class, "--word", &word]);
    assert_eq!(code, 0);
    assert_eq!(a["output"], n["normal"]);
}

#[test]
fn act_applies_single_move() {
    let (code, v) = json_out(&["act", "--class", r#"{"g":1,"handles":[[1,0,0,0]],"e":0,"f":0}"#, "--word", r#"["Rz(1)"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["output"], json!({"g":1,"handles":[[1,0,0,1]],"e":0,"f":0}));
}

#[test]
fn replay_matches_formula() {
    let (code, v) = json_out(&["replay", "--class", r#"{"g":2,"handles":[[1,2,0,0],[0,0,0,0]],"e":1,"f":3}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["genus"], json!(7));
    assert_eq!(v["minimal_genus"], json!(7));
}

#[test]
fn twisted_genus_of_fiber_torus() {
    let (code, v) = json_out(&["twisted-genus", "--class", r#"{"g":1,"m":5,"handles":[[1,0,0,0]],"fiber":3}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["genus"], json!(1));
    assert_eq!(v["case"], json!("TorusCase"));
}

#[test]
fn complexity_rejects_genus_one() {
    let out = mingenus(&["complexity", "--class", r#"{"g":1,"handles":[[1,1,0,0]],"e":0,"f":0}"#]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_error_exits_two() {
    let out = mingenus(&["genus", "--class", "not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mingenus(&["genus", "--class", r#"{"g":1,"handles":[[1,0,0,0]],"e":0,"f":0,"x":1}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_class_bound_is_domain_error() {
    let out = mingenus(&["bound", "--class", r#"{"g":1,"handles":[[0,0,0,0]],"e":0,"f":0}"#]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn printed_classes_reparse() {
    let class = r#"{"g":2,"handles":[[1,"-123456789012345678901234567890",0,4],[0,0,2,0]],"e":3,"f":-1}"#;
    let (_, v) = json_out(&["genus", "--class", class]);
    let printed = v["class"].to_string();
    let (_, again) = json_out(&["genus", "--class", &printed]);
    assert_eq!(again["class"], v["class"]);
    assert_eq!(again["genus"], v["genus"]);
}

#[test]
fn empty_batch_prints_nothing() {
    let f = batch_file(&[]);
    let out = mingenus(&["--format", "json", "genus", "--batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn batch_with_bad_line_reports_each_record() {
    let f = batch_file(&[r#"{"g":1,"handles":[[1,1,0,0]],"e":0,"f":0}"#.into(), "nope".into()]);
    let out = mingenus(&["--format", "json", "genus", "--batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["ok"], json!(true));
    assert_eq!(recs[0]["result"]["genus"], json!(2));
    assert_eq!(recs[1]["ok"], json!(false));
    assert_eq!(recs[1]["line"], json!(2));
}

#[test]
fn large_batch_preserves_order() {
    let lines: Vec<String> = (0..1000)
        .map(|k| format!(r#"{{"g":1,"handles":[[{},1,0,0]],"e":0,"f":0}}"#, k + 1))
        .collect();
    let f = batch_file(&lines);
    let out = mingenus(&["--format", "json", "bound", "--batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1000);
    for (k, r) in recs.iter().enumerate() {
        assert_eq!(r["line"], json!(k + 1));
        assert_eq!(r["result"]["class"]["handles"][0][0], json!(k + 1));
    }
}

#[test]
fn exotic_orbit_not_found_at_depth_three() {
    let (code, v) = json_out(&["orbit", "--target", "exotic", "--g", "2", "--depth", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], json!(false));
    assert_eq!(v["nodes"], json!(35264));
}

#[test]
fn orbit_finds_short_word() {
    let (code, v) = json_out(&["orbit", "--target", "move-word", "--g", "2", "--word", r#"["Rz(1)","Dxy(2)^-1"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], json!(true));
}

#[test]
fn node_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mingenus"))
        .args(["orbit", "--target", "exotic"])
        .env("MINGENUS_NODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let (code, v) = json_out(&["selftest", "--seed", "7", "--samples", "1000"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], json!(true));
}

#[test]
fn text_format_is_default() {
    let out = mingenus(&["genus", "--class", r#"{"g":1,"handles":[[1,1,0,0]],"e":0,"f":0}"#]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("genus: 2"));
}
