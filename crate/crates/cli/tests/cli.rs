use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::{Draft, JSONSchema};
use serde_json::Value;
use yangian_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("yangian").chain(args.iter().copied()))
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let doc: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .compile(&doc)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, value: &Value) {
    let compiled = schema(name);
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{name} schema rejects output: {msgs:#?}\n{value:#}");
}

/// Runs a command expected to succeed and checks its stdout against a schema.
fn ok_json(schema_name: &str, args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_valid(schema_name, &value);
    value
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn qdet_level_one() {
    let v = ok_json("qdet", &["qdet", "--p", "1"]);
    assert_eq!(v["presentations_agree"], true);
    assert_eq!(v["central"], true);
    // d_1 = t11 + t22 − 1
    let d1: Vec<(String, Value)> = v["coefficients"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["coeff"].as_str().unwrap().to_string(),
                t["monomial"].clone(),
            )
        })
        .collect();
    assert_eq!(
        d1,
        vec![
            ("-1".to_string(), serde_json::json!([])),
            ("1".to_string(), serde_json::json!([[1, 1, 1]])),
            ("1".to_string(), serde_json::json!([[2, 2, 1]])),
        ]
    );
    assert_eq!(
        ok_json("qdet", &["qdet", "--p", "2"])["presentations_agree"],
        true
    );
}

#[test]
fn qdet_rejects_level_zero() {
    assert_eq!(cli(&["qdet", "--p", "0"]).code, 2);
    assert_eq!(cli(&["qdet", "--p", "4"]).code, 2);
}

#[test]
fn central_check_and_straighten() {
    let v = ok_json("central-check", &["central-check", "--p", "1"]);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["central"] == true));
    assert_eq!(v["gamma_commutative"], true);
    let v = ok_json(
        "central-check",
        &["central-check", "--p", "2", "--word", "t21^(1),t12^(1)"],
    );
    assert_eq!(v["checks"][0]["central"], false);

    let v = ok_json(
        "straighten",
        &["straighten", "--p", "2", "--word", "t12^(2) t21^(1)"],
    );
    assert_eq!(
        v["normal_form"][0]["monomial"],
        serde_json::json!([[1, 2, 2], [2, 1, 1]])
    );
    let v = ok_json(
        "straighten",
        &["straighten", "--p", "2", "--x", "t21^(2)", "--z", "2"],
    );
    assert_eq!(v["certificate"]["verified"], true);
    assert_eq!(
        v["certificate"]["coefficients"].as_array().unwrap().len(),
        3
    );

    assert_eq!(
        cli(&["straighten", "--p", "2", "--word", "t31^(1)"]).code,
        2
    );
    assert_eq!(
        cli(&["straighten", "--p", "1", "--word", "t11^(2)"]).code,
        5
    );
    assert_eq!(cli(&["straighten", "--p", "1"]).code, 2);
}

#[test]
fn analyze_examples() {
    let v = ok_json(
        "analyze",
        &["analyze", "--beta", "1/2", "--gamma", "5/2,1/3"],
    );
    assert_eq!(v["box"], serde_json::json!({"lo": ["-inf"], "hi": [2]}));
    assert_eq!(v["type"], "Finite");
    let v = ok_json(
        "analyze",
        &["analyze", "--beta", "1/2", "--gamma", "-1/2,5/2"],
    );
    assert_eq!(v["dim"], 3);
    assert_eq!(v["box"], serde_json::json!({"lo": [0], "hi": [2]}));
    let cases = [
        (&["--beta", "0", "--gamma", "1/2,1/3"][..], "Semisimple"),
        (
            &["--beta", "0,1/2", "--gamma", "1,-1/2,1/5,2/5"][..],
            "Tame",
        ),
        (&["--beta", "0,1/2", "--gamma", "1,2,-1/2,1/5"][..], "Wild"),
    ];
    for (args, ty) in cases {
        let mut full = vec!["rep-type"];
        full.extend_from_slice(args);
        assert_eq!(ok_json("analyze", &full)["type"], ty, "{args:?}");
    }
    assert_eq!(
        cli(&["analyze", "--beta", "0,1", "--gamma", "1,2,3,4"]).code,
        3
    );
    assert_eq!(cli(&["analyze", "--beta", "0", "--gamma", "1"]).code, 5);
    assert_eq!(
        cli(&["analyze", "--p", "2", "--beta", "0", "--gamma", "1,2"]).code,
        5
    );
    assert_eq!(cli(&["analyze", "--beta", "x", "--gamma", "1,2"]).code, 2);
}

#[test]
fn module_write_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    let args = [
        "module",
        "--p",
        "1",
        "--beta",
        "1/2",
        "--gamma",
        "5/2,1/3",
        "--window=-4:4",
        "--out",
        s(&file),
    ];
    let v = ok_json("module-report", &args);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["central_failures"], 0);
    assert_valid("module-file", &read(&file));
    assert_eq!(
        ok_json("module-report", &["module", "--check", s(&file)])["violations"],
        0
    );

    // fault injection: change one matrix entry
    let mut m = read(&file);
    let entry = &mut m["matrices"]["t[2][1][1]"][4][2];
    *entry = Value::from("12345");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&m).unwrap()).unwrap();
    let out = cli(&["module", "--check", s(&bad)]);
    assert_eq!(out.code, 4);
    let report: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_valid("module-report", &report);
    assert!(report["violations"].as_u64().unwrap() > 0);

    assert_eq!(
        cli(&["module", "--beta", "0,1", "--gamma", "1,2,3,4"]).code,
        3
    );
    assert_eq!(
        cli(&["module", "--beta", "1/2", "--gamma", "1,2,3"]).code,
        5
    );
    assert_eq!(
        cli(&["module", "--beta", "1/2", "--gamma", "1,2", "--window", "nonsense"]).code,
        2
    );
}

#[test]
fn verma_module() {
    let v = ok_json(
        "module-report",
        &[
            "module", "--alpha", "2/3", "--beta", "1/2", "--window", "0:6",
        ],
    );
    assert_eq!(v["kind"], "verma");
    assert_eq!(v["gamma"], serde_json::json!(["2/3", "-1/2"]));
}

#[test]
fn skeleton_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sk.json");
    let v = ok_json(
        "skeleton",
        &[
            "skeleton",
            "--beta",
            "0,1/2",
            "--gamma",
            "1,-1/2,1/5,2/5",
            "--out",
            s(&file),
        ],
    );
    assert_eq!(v["standard_form"], serde_json::json!({"kind": "B"}));
    assert_eq!(v["presentation_isomorphism"], true);
    assert_eq!(v["relations"].as_array().unwrap().len(), 12);
    assert_valid("quiver-rep", &read(&file));
    let id = ok_json("identify", &["identify", s(&file)]);
    assert_eq!(id["class"], "B_M");

    let out = cli(&[
        "skeleton",
        "--beta",
        "1/2",
        "--gamma",
        "-1/2,5/2",
        "--window=-2:2",
    ]);
    assert_eq!(out.code, 5, "support touching the window edge is rejected");
}

#[test]
fn band_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("band.json");
    let v = ok_json(
        "indecomposables",
        &[
            "indecomposables",
            "--family",
            "B_Band(2,5/7,1)",
            "--seed",
            "3",
            "--out",
            s(&file),
        ],
    );
    assert_eq!(v["seed"], 3);
    assert_eq!(v["relations_ok"], true);
    let id = ok_json("identify", &["identify", s(&file), "--seed", "1"]);
    assert_eq!(
        id,
        serde_json::json!({"class": "B_Band", "d": 2, "lambda": "5/7", "variant": 1, "seed": 1})
    );
    let json_label = r#"{"class":"TypeA","r":3,"k1":1,"k2":4,"xi":[1,0,1]}"#;
    ok_json(
        "indecomposables",
        &["indecomposables", "--label", json_label, "--out", s(&file)],
    );
    assert_eq!(
        ok_json("identify", &["identify", s(&file)])["xi"],
        serde_json::json!([1, 0, 1])
    );
}

#[test]
fn decompose_direct_sum() {
    let dir = tempfile::tempdir().unwrap();
    let sum = dir.path().join("sum.json");
    let parts = dir.path().join("parts");
    ok_json(
        "indecomposables",
        &[
            "indecomposables",
            "--family",
            "B_M(2)",
            "--family",
            "B_Discrete(2,0,1)",
            "--seed",
            "5",
            "--out",
            s(&sum),
        ],
    );
    let out = cli(&["identify", s(&sum)]);
    assert_eq!(out.code, 6);
    let v = ok_json(
        "decompose",
        &["decompose", s(&sum), "--seed", "2", "--out", s(&parts)],
    );
    let summands = v["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 2);
    let mut files: Vec<PathBuf> = std::fs::read_dir(&parts)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 2);
    for entry in summands {
        assert_ne!(entry["probe"], "decomposable");
    }
    let mut labels: Vec<String> = files
        .iter()
        .map(|f| {
            assert_valid("quiver-rep", &read(f));
            ok_json("identify", &["identify", s(f)])["class"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    labels.sort();
    assert_eq!(labels, vec!["B_Discrete", "B_M"]);
}

#[test]
fn wild_input_is_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("wild.json");
    let v = ok_json(
        "skeleton",
        &[
            "skeleton",
            "--beta",
            "0,1/2",
            "--gamma",
            "1,2,-1/2,1/5",
            "--window=-3:4,-3:4",
            "--out",
            s(&file),
        ],
    );
    assert_eq!(v["standard_form"], Value::Null);
    let id = ok_json("identify", &["identify", s(&file)]);
    assert_eq!(id, serde_json::json!({"class": "Unknown", "seed": 0}));
}

#[test]
fn bad_labels_and_files() {
    assert_eq!(
        cli(&["indecomposables", "--family", "B_Band(0,1,1)"]).code,
        5
    );
    assert_eq!(
        cli(&["indecomposables", "--family", "TypeA(2;3,1;1)"]).code,
        5
    );
    assert_eq!(cli(&["indecomposables", "--family", "Bogus(1)"]).code, 2);
    assert_eq!(
        cli(&["indecomposables", "--family", "S(0)", "--family", "S(2;1)"]).code,
        5
    );
    assert_eq!(cli(&["identify", "/nonexistent/rep.json"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep.json");
    std::fs::write(&file, "{\"quiver\":{\"kind\":\"B\"}}").unwrap();
    assert_eq!(cli(&["identify", s(&file)]).code, 5);
    // a representation breaking a zero relation
    std::fs::write(
        &file,
        r#"{"quiver":{"kind":"A","r":1},"dims":{"1":1,"2":1},"maps":{"a1":[["1"]],"b1":[["1"]]}}"#,
    )
    .unwrap();
    assert_eq!(cli(&["identify", s(&file)]).code, 4);
}

#[test]
fn schemas_reject_malformed_documents() {
    let reject =
        |name: &str, doc: Value| assert!(!schema(name).is_valid(&doc), "{name} accepted {doc}");
    reject(
        "analyze",
        serde_json::json!({"I": [], "X": [], "type": "Weird", "box": {"lo": [], "hi": []}, "dim": 1}),
    );
    reject(
        "label",
        serde_json::json!({"class": "B_Band", "d": 2, "lambda": 0.5, "variant": 1}),
    );
    reject(
        "quiver-rep",
        serde_json::json!({"quiver": {"kind": "C"}, "dims": {}, "maps": {}}),
    );
    reject(
        "qdet",
        serde_json::json!({"p": 4, "coefficients": [], "presentations_agree": true, "central": true}),
    );
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sum = dir.path().join("sum.json");
    let make = [
        "indecomposables",
        "--family",
        "B_Band(2,5/7,1)",
        "--family",
        "S(1)",
        "--seed",
        "17",
        "--out",
        s(&sum),
    ];
    let first = cli(&make);
    let bytes = std::fs::read(&sum).unwrap();
    assert_eq!(cli(&make), first);
    assert_eq!(std::fs::read(&sum).unwrap(), bytes);
    for args in [
        vec!["decompose", s(&sum), "--seed", "8"],
        vec!["identify", s(&sum), "--seed", "8"],
        vec!["qdet", "--p", "2"],
        vec!["analyze", "--beta", "0,1/2", "--gamma", "1,-1/2,1/5,2/5"],
    ] {
        assert_eq!(cli(&args), cli(&args), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_yangian");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = code(&["qdet", "--p", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(ok.stdout, cli(&["qdet", "--p", "1"]).stdout.into_bytes());
    assert_eq!(code(&["qdet", "--p", "0"]).status.code(), Some(2));
    assert_eq!(
        code(&["module", "--beta", "0,1", "--gamma", "1,2,3,4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        code(&["analyze", "--beta", "0", "--gamma", "1"])
            .status
            .code(),
        Some(5)
    );
}
