use std::process::Command;

use rswan::{run, ConfigError, Overrides, RunConfig, TaskStatus};
use rswan_core::logdiff::parse_form;
use rswan_core::FieldTower;
use serde_json::{json, Value};

fn config(tasks: Value) -> RunConfig {
    serde_json::from_value(json!({
        "version": 1,
        "tower": { "p": 2, "variables": ["t"] },
        "towers": { "K2": { "p": 2, "variables": ["u", "t"] } },
        "characters": {
            "X": ["t^-3"],
            "Z": { "tower": "K2", "components": ["u*t^-2"] },
        },
        "tasks": tasks,
    }))
    .unwrap()
}

#[test]
fn swan_record() {
    let rep = run(&config(json!([{ "kind": "swan", "character": "X" }])), Overrides::default()).unwrap();
    let r = &rep.records()[0];
    assert_eq!(r.status, TaskStatus::Pass);
    assert_eq!(r.values["sw"], 3);
    assert_eq!(r.inputs["components"], json!(["t^-3"]));
}

#[test]
fn exp_congruence_records() {
    let rep = run(&config(json!([{ "kind": "exp-congruences", "p": 3 }])), Overrides::default()).unwrap();
    let v = &rep.records()[0].values;
    for key in ["additive", "product", "logarithmic"] {
        assert_eq!(v[key], "PASS");
    }
}

#[test]
fn undefined_names_are_config_errors() {
    let err = run(&config(json!([{ "kind": "rsw", "character": "Nope" }])), Overrides::default()).unwrap_err();
    assert!(matches!(&err, ConfigError::Undefined { name, .. } if name == "Nope"));
    assert!(err.to_string().contains("Nope"));
    let bad = r#"{"version": 1, "tower": {"p": 7, "variables": ["t"]}, "tasks": []}"#;
    let cfg = RunConfig::from_json(bad).unwrap();
    assert!(matches!(run(&cfg, Overrides::default()), Err(ConfigError::Invalid { .. })));
    assert!(matches!(RunConfig::from_json(r#"{"version": 9, "tower": {"p": 2, "variables": ["t"]}, "tasks": []}"#), Err(ConfigError::Version(9))));
}

#[test]
fn rendered_forms_parse_back() {
    let rep = run(&config(json!([{ "kind": "rsw", "character": "Z" }])), Overrides::default()).unwrap();
    let r = &rep.records()[0];
    assert_eq!(r.values["rsw"], "u*t^-2 dlog(u) | window(2,1)");
    let k = FieldTower::new(2, 1, 1, &["u", "t"], 64).unwrap();
    let (form, window) = parse_form(r.values["rsw"].as_str().unwrap(), &k).unwrap();
    assert_eq!(window, Some((2, 1)));
    assert_eq!(rswan_core::logdiff::render_form(&form, &k), "u*t^-2 dlog(u)");
}

#[test]
fn task_errors_do_not_abort() {
    let tasks = json!([
        { "kind": "duality", "tower": "K2", "n": 9, "m": 1, "degree": 3 },
        { "kind": "swan", "character": "X" },
    ]);
    let rep = run(&config(tasks), Overrides::default()).unwrap();
    assert_eq!(rep.records()[0].status, TaskStatus::Error);
    assert!(rep.records()[0].error.is_some());
    assert_eq!(rep.records()[1].status, TaskStatus::Pass);
    assert!(!rep.success());
}

#[test]
fn seeds_fix_the_body() {
    let tasks = json!([{ "kind": "reciprocity", "character": "X", "samples": 10 }]);
    let a = run(&config(tasks.clone()), Overrides { seed: Some(4), precision: None }).unwrap();
    let b = run(&config(tasks), Overrides { seed: Some(4), precision: None }).unwrap();
    assert_eq!(a.body_json(), b.body_json());
    assert_eq!(a.body.seed, 4);
    let header: Value = serde_json::from_str(&a.body_json()).unwrap();
    assert!(header["conventions"]["witt_order"].as_str().unwrap().contains("a_{s-1}"));
    assert!(header["conventions"]["fp_embedding"].as_str().unwrap().contains("p^(s-1)"));
}

#[test]
fn binary_runs_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("report.json");
    let text = serde_json::to_string(&json!({
        "version": 1,
        "tower": { "p": 2, "variables": ["t"] },
        "characters": { "X": ["t^-3"] },
        "tasks": [{ "kind": "swan", "character": "X" }, { "kind": "rsw", "character": "X" }],
    }))
    .unwrap();
    std::fs::write(&cfg, text).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_rswan"))
        .args(["run", cfg.to_str().unwrap(), "--seed", "3", "--precision", "40", "--out", out.to_str().unwrap()])
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rep["version"], 1);
    assert_eq!(rep["tasks"][0]["values"]["sw"], 3);
    assert_eq!(rep["tasks"][1]["precision"], 40);
    assert!(rep["timing"]["total_ms"].is_number());

    let missing = Command::new(env!("CARGO_BIN_EXE_rswan"))
        .args(["run", dir.path().join("absent.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn check_all_rejects_other_primes() {
    let out = Command::new(env!("CARGO_BIN_EXE_rswan")).args(["check-all", "--p", "7"]).output().unwrap();
    assert!(!out.status.success());
}
