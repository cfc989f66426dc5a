use std::process::{Command, Output};

use serde_json::Value;

fn dlfq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlfq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn q_has_no_points_over_f2() {
    let out = dlfq(&["variety", "census", "--kind", "Q", "--n", "2", "--field", "2^1", "--ext", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["count"], 0);
}

#[test]
fn presentation_for_gl2_f2_mod_3() {
    let out = dlfq(&["presentation", "--n", "2", "--field", "2^1", "--ell", "3"]);
    assert!(out.status.success());
    let r = &json(&out)["report"];
    assert_eq!(r["r"], 2);
    let names: Vec<&str> = r["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["c_2", "e_2"]);
    assert_eq!(r["series"].as_array().unwrap().len(), 41);
}

#[test]
fn motivic_weights() {
    let out = dlfq(&["presentation", "--n", "2", "--field", "2", "--ell", "3", "--variant", "motivic", "--series-degree", "6"]);
    let gens = json(&out)["report"]["generators"].clone();
    assert_eq!(gens[0]["name"], "tau");
    assert_eq!(gens[0]["weight"], 1);
    assert_eq!(gens[1]["weight"], 2);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["normal-form", "--n", "4", "--field", "2^1", "--ext", "3", "--seed", "9", "--trials", "20"];
    let a = dlfq(&args);
    let b = dlfq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = dlfq(&["normal-form", "--n", "4", "--field", "2^1", "--ext", "3", "--seed", "10", "--trials", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn strata_census_csv() {
    let out = dlfq(&["strata", "census", "--n", "2", "--field", "2^1", "--ext", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("path,value\n"));
    assert!(text.contains("report.counts,\"6 9 1\""));
    assert!(text.contains("report.predictions,\"6 9 1\""));
}

#[test]
fn invariants_at_a_point() {
    // (1, ω) in F_4 with ω encoded as 2
    let out = dlfq(&["invariants", "--n", "2", "--field", "2^1", "--ext", "2", "--point", "1,2"]);
    assert!(out.status.success());
    let row = &json(&out)["report"]["points"][0];
    assert_eq!(row["e"], 1);
    assert_eq!(row["c"], serde_json::json!([1, 0]));
}

#[test]
fn fiber_over_one() {
    let out = dlfq(&["variety", "fiber", "--n", "2", "--field", "2", "--target", "1", "--ladder", "6"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["report"]["stabilized"], 6);
}

#[test]
fn module_errors_become_failed_reports() {
    let out = dlfq(&["presentation", "--n", "2", "--field", "2^1", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["error"].as_str().unwrap().contains('2'));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("dlfq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "seed=9\ntrials=20\nformat=json\n").unwrap();
    let conf = path.to_str().unwrap();
    let from_file = dlfq(&["normal-form", "--n", "4", "--field", "2^1", "--ext", "3", "--config", conf]);
    let from_flags = dlfq(&["normal-form", "--n", "4", "--field", "2^1", "--ext", "3", "--seed", "9", "--trials", "20"]);
    assert_eq!(from_file.stdout, from_flags.stdout);
    let overridden = dlfq(&["normal-form", "--n", "4", "--field", "2^1", "--ext", "3", "--config", conf, "--trials", "3"]);
    assert_eq!(json(&overridden)["report"]["trials"].as_array().unwrap().len(), 3);
    std::fs::write(&path, "colour=blue\n").unwrap();
    assert_eq!(dlfq(&["field", "--field", "2", "--config", conf]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_flags_exit_with_usage_error() {
    assert_eq!(dlfq(&["variety", "census", "--n", "2"]).status.code(), Some(2));
}
