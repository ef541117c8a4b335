//! End-to-end checks of the command-line surface: exit codes, schemas,
//! determinism, and the numeric contracts of the emitted files.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn linecut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linecut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("json output")
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn slope_single_row_exact_values() {
    let out = linecut(&["slope", "--n", "3", "--eps", "1/2"]);
    assert_eq!(exit(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,eps,seshadri,mu,mu_seshadri,margin,eps_f64,mu_f64,mu_seshadri_f64,margin_f64"
    );
    let row = lines.next().unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[..6], &["3", "1/2", "1/2", "15/2", "12/5", "-51/10"]);
}

#[test]
fn slope_grid_excludes_endpoints_and_is_unstable() {
    let out = linecut(&["slope", "--n", "4", "--eps-grid", "9", "--format", "json"]);
    assert_eq!(exit(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let eps = row["eps_f64"].as_f64().unwrap();
        assert!(eps > 0.0 && eps < 1.0);
        assert!(row["margin_f64"].as_f64().unwrap() < 0.0);
    }
}

#[test]
fn slope_requires_some_eps() {
    let out = linecut(&["slope", "--n", "3"]);
    assert_eq!(exit(&out), 2);
}

#[test]
fn certify_range_is_valid_and_carries_coefficients() {
    let out = linecut(&["instability-certify", "--n", "3..8"]);
    assert_eq!(exit(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["all_valid"], true);
    let certs = doc["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 6);
    for c in certs {
        assert_eq!(c["valid"], true);
        assert_eq!(c["sign"], "strictly-positive");
        assert!(c["margin_numerator"].as_array().unwrap().len() > 3);
    }
}

#[test]
fn tampered_certificate_exits_one() {
    let out = linecut(&["instability-certify", "--n", "3", "--tamper"]);
    assert_eq!(exit(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["all_valid"], false);
    assert_eq!(doc["certificates"][0]["factored_form_checked"], false);
}

#[test]
fn extremal_dump_has_constants_and_polynomials() {
    let out = linecut(&["extremal", "--n", "3", "--eps", "1/100"]);
    assert_eq!(exit(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["delta"], "-123600/10603");
    assert_eq!(doc["p"].as_array().unwrap().len(), 3);
    assert_eq!(doc["q"].as_array().unwrap().len(), 6); // degree n+2
    assert!(doc["hpp"]["den"].as_array().is_some());
}

#[test]
fn verify_passes_at_small_eps_with_stable_schema() {
    let args = ["verify", "--n", "3", "--eps", "1/100"];
    let out = linecut(&args);
    assert_eq!(exit(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["overall"], true);
    assert_eq!(doc["first_failed"], serde_json::Value::Null);
    let checks = doc["checks"].as_object().unwrap();
    let expected = [
        "order3_at_one",
        "q_at_one",
        "q_at_eps",
        "residue_one",
        "q_positive",
        "hessian_pd",
        "det_form",
    ];
    assert_eq!(checks.len(), expected.len());
    for name in expected {
        assert_eq!(checks[name]["pass"], true, "{name}");
    }
    // key order in the emitted text is the fixed declaration order
    let raw = stdout_str(&out);
    let positions: Vec<usize> = expected
        .iter()
        .map(|k| raw.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(
        positions.windows(2).all(|w| w[0] < w[1]),
        "check order must be stable"
    );

    // byte-identical re-run
    let again = linecut(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn verify_rejects_out_of_range_eps_as_usage() {
    let out = linecut(&["verify", "--n", "3", "--eps", "1"]);
    assert_eq!(exit(&out), 2);
    let out = linecut(&["verify", "--n", "3", "--eps", "0.5"]);
    assert_eq!(exit(&out), 2, "exact commands take only rational eps");
}

#[test]
fn epsilon0_emits_bracket_json_and_outcome_csv() {
    let dir = tempdir().unwrap();
    let json_path = dir.path().join("bracket.json");
    let csv_path = dir.path().join("outcomes.csv");
    let out = linecut(&[
        "epsilon0",
        "--n",
        "3",
        "--resolution",
        "1/10",
        "--refine",
        "2",
        "--out",
        json_path.to_str().unwrap(),
        "--out-csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0);

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert!(doc["verdict"].is_string());
    assert!(doc["anomalies"].is_array(), "anomalies are never dropped");
    let evaluated = doc["counts"]["pass"].as_u64().unwrap()
        + doc["counts"]["fail"].as_u64().unwrap()
        + doc["counts"]["construction_error"].as_u64().unwrap();
    assert!(evaluated >= 10);

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "eps,eps_f64,outcome,first_failed");
    for line in lines {
        let outcome = line.split(',').nth(2).unwrap();
        assert!(matches!(outcome, "pass" | "fail" | "construction-error"));
    }
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sample_schema_and_numeric_contracts() {
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("sample.csv");
    let out = linecut(&[
        "sample",
        "--n",
        "3",
        "--eps",
        "1/100",
        "--grid",
        "4",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0);
    let status = json(&out);
    assert_eq!(status["command"], "sample");
    assert!(
        status.get("warning").is_none(),
        "rational eps needs no warning"
    );

    let (header, rows) = read_rows(&csv_path);
    assert_eq!(
        header,
        [
            "x1",
            "x2",
            "x3",
            "rho",
            "hpp",
            "S_fd",
            "S_target",
            "min_eig",
            "det_closed",
            "det_numeric"
        ]
    );
    assert!(!rows.is_empty());
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for row in &rows {
        assert!((row[col("S_fd")] - row[col("S_target")]).abs() <= 1e-4);
        assert!(row[col("min_eig")] > 0.0);
        let (dc, dn) = (row[col("det_closed")], row[col("det_numeric")]);
        assert!((dc - dn).abs() / dc.abs() <= 1e-9);
    }
}

#[test]
fn sample_accepts_float_eps_with_warning() {
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("sample.csv");
    let out = linecut(&[
        "sample",
        "--n",
        "3",
        "--eps",
        "0.01",
        "--grid",
        "3",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0);
    let status = json(&out);
    let warning = status["warning"].as_str().expect("float eps warns");
    assert!(warning.contains("dyadic"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempdir().unwrap();
    for (name, args) in [
        ("slope.csv", vec!["slope", "--n", "3", "--eps-grid", "7"]),
        ("cert.json", vec!["instability-certify", "--n", "3..5"]),
        (
            "sample.csv",
            vec!["sample", "--n", "3", "--eps", "1/100", "--grid", "3"],
        ),
    ] {
        let a = dir.path().join(format!("a_{name}"));
        let b = dir.path().join(format!("b_{name}"));
        let mut run_a = args.clone();
        run_a.extend(["--out", a.to_str().unwrap()]);
        let mut run_b = args.clone();
        run_b.extend(["--out", b.to_str().unwrap()]);
        assert_eq!(exit(&linecut(&run_a)), 0);
        assert_eq!(exit(&linecut(&run_b)), 0);
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{name} differs between runs"
        );
    }
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = linecut(&["slope", "--n", "3", "--eps", "1/2", "--bogus"]);
    assert_eq!(exit(&out), 2);
    let out = linecut(&["slope", "--n", "2", "--eps", "1/2"]);
    assert_eq!(exit(&out), 2, "n < 3 is a domain/usage error");
}
