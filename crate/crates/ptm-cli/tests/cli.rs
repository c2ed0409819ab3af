//! End-to-end tests of the `ptm` binary: wire formats, exit codes,
//! determinism of report files.

use std::path::Path;
use std::process::Command;

fn ptm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ptm"))
}

#[test]
fn catalog_list() {
    let out = ptm().args(["catalog", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["abelian2", "su2", "sl2r", "su3", "so3"] {
        assert!(text.contains(name), "{name} missing from catalog list");
    }
}

#[test]
fn transport_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path_file = dir.path().join("path.json");
    std::fs::write(
        &path_file,
        r#"{"N": 1, "a0": [0.3, 0.0, 0.1], "modes": [{"b": [0.2, 0.0, 0.0], "c": [0.0, 0.1, 0.0]}]}"#,
    )
    .unwrap();
    let out_file = dir.path().join("result.json");
    let out = ptm()
        .args([
            "transport",
            "--algebra",
            "su2",
            "--path",
            path_file.to_str().unwrap(),
            "--steps",
            "512",
            "--out",
            out_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    let endpoint = result["endpoint"].as_array().unwrap();
    assert_eq!(endpoint.len(), 4);
    assert!(result["log_derivative_residual"].as_f64().unwrap() < 1e-6);
    assert!(result["coset_chart"].is_array());
}

#[test]
fn fiber_spectrum_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_file = dir.path().join("report.json");
    let csv_file = dir.path().join("eigen.csv");
    let out = ptm()
        .args([
            "fiber-spectrum",
            "--algebra",
            "su2",
            "--xi",
            "1,0,0",
            "--N",
            "4",
            "--out",
            json_file.to_str().unwrap(),
            "--csv",
            csv_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_file).unwrap()).unwrap();
    assert_eq!(report["truncation"], 4);
    assert!(report["trace_r_i"].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(report["trace_r_ii"], 0.0);
    let csv = std::fs::read_to_string(&csv_file).unwrap();
    assert!(csv.starts_with("index,re,im,multiplicity"));
    assert!(csv.lines().count() > 3);
}

#[test]
fn orbit_spectrum_latitude() {
    let dir = tempfile::tempdir().unwrap();
    let orbit_file = dir.path().join("orbit.json");
    let r: f64 = 0.5;
    std::fs::write(
        &orbit_file,
        format!(
            r#"{{"h_basis": [[0.0, {}, {}]], "transversal_basis": [[1.0, 0.0, 0.0]]}}"#,
            r.sin(),
            r.cos()
        ),
    )
    .unwrap();
    let json_file = dir.path().join("report.json");
    let out = ptm()
        .args([
            "orbit-spectrum",
            "--algebra",
            "su2",
            "--orbit",
            orbit_file.to_str().unwrap(),
            "--xi",
            "-1,0,0",
            "--N",
            "8",
            "--out",
            json_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_file).unwrap()).unwrap();
    let trace = report["trace_r_ii"].as_f64().unwrap();
    assert!((trace - 1.0 / r.tan()).abs() < 1e-10, "trace {trace}");
}

#[test]
fn usage_errors_exit_2() {
    // unknown algebra
    let out = ptm()
        .args(["fiber-spectrum", "--algebra", "nope", "--xi", "1,0,0", "--N", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // xi dimension mismatch
    let out = ptm()
        .args(["fiber-spectrum", "--algebra", "su2", "--xi", "1,0", "--N", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // clap-level parse failure
    let out = ptm().args(["fiber-spectrum"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scenario_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out_dir: &Path| {
        let cfg = serde_json::json!({
            "algebra": "su2",
            "truncations": [2, 4],
            "xi_sweep": [[1.0, 0.0, 0.0], [0.0, 0.5, 0.0]],
            "transport_path": {"N": 0, "a0": [0.2, 0.0, 0.0], "modes": []},
            "out_dir": out_dir,
            "seed": 7,
        });
        let cfg_file = out_dir.join("config.json");
        std::fs::create_dir_all(out_dir).unwrap();
        std::fs::write(&cfg_file, serde_json::to_string(&cfg).unwrap()).unwrap();
        let out = ptm()
            .args(["scenario", "--config", cfg_file.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    };
    let dir_a = dir.path().join("a");
    let dir_b = dir.path().join("b");
    run(&dir_a);
    run(&dir_b);
    for name in [
        "fiber_xi0_N2.json",
        "fiber_xi0_N4.json",
        "fiber_xi1_N2.json",
        "fiber_xi1_N4.csv",
        "transport.json",
        "manifest.json",
    ] {
        let a = std::fs::read(dir_a.join(name)).unwrap();
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn scenario_empty_truncations_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = serde_json::json!({
        "algebra": "su2",
        "truncations": [],
        "xi_sweep": [[1.0, 0.0, 0.0]],
        "out_dir": dir.path(),
        "seed": 1,
    });
    let cfg_file = dir.path().join("config.json");
    std::fs::write(&cfg_file, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = ptm()
        .args(["scenario", "--config", cfg_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_algebra_json_loads() {
    // a 1-parameter abelian algebra given inline as structure-constant JSON
    let dir = tempfile::tempdir().unwrap();
    let alg_file = dir.path().join("alg.json");
    std::fs::write(
        &alg_file,
        r#"{
            "name": "line",
            "dim": 1,
            "basis": [[[1.0]]],
            "c": [[[0.0]]],
            "gram": [[1.0]],
            "k_indices": [],
            "chart_radius": 0.5,
            "relations": "none",
            "ad_invariant": true
        }"#,
    )
    .unwrap();
    let path_file = dir.path().join("path.json");
    std::fs::write(&path_file, r#"{"N": 0, "a0": [0.25], "modes": []}"#).unwrap();
    let out = ptm()
        .args([
            "transport",
            "--algebra",
            alg_file.to_str().unwrap(),
            "--path",
            path_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let e = v["endpoint"][0][0].as_f64().unwrap();
    assert!((e - 0.25f64.exp()).abs() < 1e-12);
}
