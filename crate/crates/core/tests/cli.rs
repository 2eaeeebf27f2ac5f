//! The binary's reports and exit statuses.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zariski"))
}

fn write(name: &str, value: &Value) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn run(cmd: &mut Command) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    let report = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), report, String::from_utf8_lossy(&stderr).into_owned())
}

fn pl_store() -> PathBuf {
    write(
        "pl_store.json",
        &json!({
            "id": {"kind": "pl", "breakpoints": [["0", "0"], ["1", "1"]]},
            "x0": {"kind": "pl", "breakpoints": [["0", "0"], ["1/2", "1/4"], ["3/4", "1/2"], ["1", "1"]]},
            "X0": {"kind": "pl", "breakpoints": [["0", "0"], ["1/4", "1/2"], ["1/2", "3/4"], ["1", "1"]]}
        }),
    )
}

#[test]
fn eval_prints_canonical_elements() {
    let store = pl_store();
    let (code, out, _) = run(bin().args(["eval", "--store"]).arg(&store).args(["--word", "x", "--x", "id"]));
    assert_eq!(code, 0);
    assert_eq!(out, json!({"kind": "pl", "breakpoints": [["0", "0"], ["1", "1"]]}));
    let (code, out, _) = run(bin().args(["eval", "--store"]).arg(&store).args(["--word", "x0 x X0", "--x", "x0"]));
    assert_eq!(code, 0);
    assert_eq!(out["breakpoints"][1], json!(["1/2", "1/4"]));
    let (code, _, err) = run(bin().args(["eval", "--store"]).arg(&store).args(["--word", "x y", "--x", "id"]));
    assert_eq!(code, 2);
    assert!(err.contains("unknown element name"), "{err}");
    let (code, _, _) = run(bin().args(["eval", "--store"]).arg(&store).args(["--word", "x^", "--x", "id"]));
    assert_eq!(code, 2);
}

#[test]
fn solve_reports_witnesses_and_verdicts() {
    let system = write("single.json", &json!({"words": ["x"]}));
    let (code, out, _) = run(bin().arg("solve").arg(&system).args(["--seed", "4"]));
    assert_eq!(code, 0);
    assert_eq!(out["verified"], true);
    assert_eq!(out["steps"], 1);
    assert_eq!(out["seed"], 4);
    assert_ne!(out["witness"]["pairs"], json!([["", ""]]));
    let (_, again, _) = run(bin().arg("solve").arg(&system).args(["--seed", "4"]));
    assert_eq!(out, again);

    let empty = write("empty.json", &json!({"words": ["x^2 x^-2"]}));
    let (code, out, _) = run(bin().arg("solve").arg(&empty).args(["--seed", "4"]));
    assert_eq!(code, 0);
    assert_eq!(out["verdict"], "empty");

    let hypothesis = write(
        "identity_coefficient.json",
        &json!({"words": [[{"x": 1}, {"element": {"kind": "prefix", "n": 2, "pairs": [["", ""]]}}, {"x": 1}]]}),
    );
    let (code, out, _) = run(bin().arg("solve").arg(&hypothesis).args(["--seed", "4"]));
    // an identity coefficient between two powers merges them
    assert_eq!(code, 0, "{out}");

    let (code, _, _) = run(bin().args(["solve", "/nonexistent.json", "--seed", "1"]));
    assert_eq!(code, 2);
    let (code, _, _) = run(bin().arg("solve").arg(&system));
    assert_eq!(code, 2, "the seed is required");
}

#[test]
fn intersect_finds_common_witnesses() {
    let a = write(
        "swap.json",
        &json!({"elements": {"c": {"kind": "prefix", "n": 2, "pairs": [["0", "1"], ["1", "0"]]}}, "words": ["x c"]}),
    );
    let (code, out, _) = run(bin().arg("intersect").arg(&a).arg(&a).args(["--seed", "2"]));
    assert_eq!(code, 0);
    assert_eq!(out["verified"], true);
    let empty = write("empty2.json", &json!({"words": ["x^0"]}));
    let (code, out, _) = run(bin().arg("intersect").arg(&a).arg(&empty).args(["--seed", "2"]));
    assert_eq!(code, 0);
    assert_eq!(out["verdict"], "empty");
}

#[test]
fn gadget_reports_snapping_and_passes() {
    let (code, out, _) = run(bin().args(["gadget", "--epsilon", "1/10", "--trials", "0", "--seed", "1"]));
    assert_eq!(code, 0);
    assert_eq!(out["passed"], true);
    assert_eq!(out["audit"]["snapped"], true);
    assert_eq!(out["audit"]["epsilon"], "63/4096");
    assert_eq!(out["audit"]["k"], 8192);
    let (code, _, _) = run(bin().args(["gadget", "--epsilon", "0", "--seed", "1"]));
    assert_eq!(code, 2);
    let (code, _, _) = run(bin().args(["gadget", "--epsilon", "1/100", "--mode", "torus", "--seed", "1"]));
    assert_eq!(code, 2);
}

#[test]
fn separate_checks_and_mirrors() {
    let store = pl_store();
    let (code, out, _) = run(bin().args(["separate", "--store"]).arg(&store).args(["id", "x0"]));
    assert_eq!(code, 0);
    for key in ["f_in_around_f", "g_in_around_g"] {
        assert_eq!(out[key], true, "{key}");
    }
    for key in ["g_in_around_f", "f_in_around_g"] {
        assert_eq!(out[key], false, "{key}");
    }
    assert_eq!(out["distance"], "1/4");
    let (_, mirrored, _) = run(bin().args(["separate", "--store"]).arg(&store).args(["x0", "id"]));
    assert_eq!(mirrored["around_f"], out["around_g"]);
    assert_eq!(mirrored["around_g"], out["around_f"]);
    let (code, _, _) = run(bin().args(["separate", "--store"]).arg(&store).args(["id", "id"]));
    assert_eq!(code, 3);
}

#[test]
fn out_flag_writes_the_report() {
    let system = write("single_out.json", &json!({"words": ["x"]}));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let (code, _, _) = run(bin().arg("solve").arg(&system).args(["--seed", "4", "--out"]).arg(&out));
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["verified"], true);
}
