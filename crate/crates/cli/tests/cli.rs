use std::f64::consts::{FRAC_PI_3, PI};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isocal::{geodesic_cap, hyperbolic_circle, Curve, CurveFile};
use serde_json::Value;
use tempfile::TempDir;

fn isocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isocal"))
        .args(args)
        .env_remove("ISOCAL_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn circle_file(dir: &TempDir) -> PathBuf {
    let c = Curve::regular_polygon(1024, 1.0).unwrap();
    write(dir, "circle1024.json", &CurveFile::from_planar(&c).to_json())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_circle_equality_case() {
    let dir = TempDir::new().unwrap();
    let file = circle_file(&dir);
    let out = isocal(&["verify", "--space", "euclidean", s(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["passed"], true);
    assert!(r["results"]["deficit"].as_f64().unwrap().abs() < 1e-3);
    assert!(r["results"]["nodes"].as_u64().unwrap() >= 512);
    assert!(r["wall_time_s"].as_f64().is_some());
    let hash = r["input_hash"].as_str().unwrap();
    assert!(hash.starts_with("sha256:") && hash.len() == 7 + 64);
    for c in r["checks"].as_array().unwrap() {
        assert!(c["tolerance"].is_number() && c["measured"].is_number());
    }
}

#[test]
fn verify_sphere_cap_lower_bound() {
    let dir = TempDir::new().unwrap();
    let cap = geodesic_cap(FRAC_PI_3, 256).unwrap();
    let file = write(&dir, "cap.json", &CurveFile::from_sphere(&cap).to_json());
    let out = isocal(&["verify", "--space", "sphere", s(&file)]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"];
    assert_eq!(r["space"], "sphere");
    let area = r["area"].as_f64().unwrap();
    let exact = 2.0 * PI * (1.0 - FRAC_PI_3.cos());
    assert!((area - exact).abs() < 1e-3 * exact);
    let lower = r["lower_bound"].as_f64().unwrap();
    assert!((lower - (4.0 * PI - area) * area).abs() < 1e-12 * lower);
}

#[test]
fn verify_hyperbolic_circle() {
    let dir = TempDir::new().unwrap();
    let c = hyperbolic_circle(0.5, 256).unwrap();
    let file = write(&dir, "h.json", &CurveFile::from_hyperbolic(&c).to_json());
    let out = isocal(&["verify", s(&file)]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["results"]["space"], "hyperbolic");
    assert!(!r["notes"].as_array().unwrap().is_empty());
}

#[test]
fn verify_input_errors_exit_2_without_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let corrupt = write(&dir, "bad.json", "{\"vertices\": [[0, 0], [1, 0]");
    let out = isocal(&["verify", s(&corrupt), "--out", s(&report)]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(!report.exists());

    let missing = dir.path().join("nosuch.json");
    assert_eq!(code(&isocal(&["verify", s(&missing)])), 2);

    let reversed = Curve::regular_polygon(64, 1.0).unwrap().reversed();
    let file = write(&dir, "cw.json", &CurveFile::from_planar(&reversed).to_json());
    let out = isocal(&["verify", s(&file)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("negatively oriented"));

    let bowtie = write(&dir, "bowtie.json", r#"{"vertices": [[0,0],[2,2],[2,0],[0,2]]}"#);
    assert_eq!(code(&isocal(&["verify", s(&bowtie)])), 2);

    let off = write(&dir, "off.json", r#"{"space": "sphere", "vertices": [[1,0,0],[0,2,0],[0,0,1]]}"#);
    assert_eq!(code(&isocal(&["verify", s(&off)])), 2);
}

#[test]
fn verify_usage_errors() {
    let dir = TempDir::new().unwrap();
    let file = circle_file(&dir);
    let cap = geodesic_cap(1.0, 32).unwrap();
    let sphere = write(&dir, "cap.json", &CurveFile::from_sphere(&cap).to_json());
    for args in [
        vec!["verify", "--space", "sphere", s(&sphere), "--space", "hyperbolic"],
        vec!["verify", "--space", "hyperbolic", s(&sphere)],
        vec!["verify", "--space", "r3", s(&file)],
        vec!["verify", "--refinement", "0", s(&file)],
        vec!["verify", "--tolerance", "nosuch=1", s(&file)],
        vec!["verify", "--tolerance", "identity=-1", s(&file)],
        vec!["verify", "--tolerance", "identity", s(&file)],
        vec!["verify"],
        vec![],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&isocal(&args)), 2, "{args:?}");
    }
}

#[test]
fn verify_numeric_failure_exit_1() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    let out = isocal(&["verify", "--refinement", "2", "--tolerance", "identity=1e-9", s(&square)]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(check(&r, "double_integral_matches_lower_bound")["passed"], false);
    assert_eq!(check(&r, "deficit_nonnegative")["passed"], true);
}

#[test]
fn verify_writes_report_file() {
    let dir = TempDir::new().unwrap();
    let file = circle_file(&dir);
    let report = dir.path().join("report.json");
    let out = isocal(&["verify", s(&file), "--out", s(&report)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["command"][0], "verify");
}

#[test]
fn stable_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let file = circle_file(&dir);
    let a = isocal(&["verify", "--stable", s(&file)]);
    let b = isocal(&["verify", "--stable", s(&file)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("wall_time_s").is_none());
    let c = isocal(&["calibration", "--stable", "--samples", "500", "--seed", "7"]);
    let d = isocal(&["calibration", "--stable", "--samples", "500", "--seed", "7"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn calibration_spaces() {
    let out = isocal(&["calibration", "--samples", "2000"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["checks"].as_array().unwrap().len(), 4);

    let out = isocal(&["calibration", "--space", "r3", "--samples", "2000"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!(r["results"]["max_closed_form_relative_error"].as_f64().unwrap() < 1e-4);

    let out = isocal(&["calibration", "--space", "hyperbolic", "--samples", "2000"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["results"]["max_abs_minkowski_biform"].as_f64().unwrap() <= 1.0 + 1e-12);

    assert_eq!(code(&isocal(&["calibration", "--samples", "0"])), 2);
    assert_eq!(code(&isocal(&["calibration", "--space", "sphere"])), 2);
}

#[test]
fn calibration_tight_tolerance_fails() {
    let out = isocal(&["calibration", "--samples", "200", "--tolerance", "mixed_derivative=1e-15"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn mayer_problems() {
    let out = isocal(&["mayer", "--problem", "oscillator", "--samples", "2000"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    for name in ["dominance", "equality", "path_independence", "submanifold", "minimality"] {
        assert_eq!(check(&r, name)["passed"], true, "{name}");
    }

    let out = isocal(&["mayer", "--problem", "free", "--samples", "500"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!(r["results"]["max_closed_form_defect"].as_f64().unwrap() < 1e-12);

    assert_eq!(code(&isocal(&["mayer", "--problem", "cosh", "--samples", "500"])), 0);
    let out = isocal(&["mayer", "--problem", "nosuch"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("oscillator"));
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn plotdata_files() {
    let dir = TempDir::new().unwrap();
    let file = circle_file(&dir);
    let out_dir = dir.path().join("plots");
    let out = isocal(&["plotdata", "--grid", "11", "--out", s(&out_dir), s(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let (header, rows) = read_csv(&out_dir.join("vfield.csv"));
    assert_eq!(header, ["x1", "x2", "v1", "v2"]);
    assert_eq!(rows.len(), 11 * 11 - 1);
    for r in &rows {
        assert!(((r[2] * r[2] + r[3] * r[3]).sqrt() - 1.0).abs() < 1e-12);
    }

    let (_, leaves) = read_csv(&out_dir.join("leaves.csv"));
    // Oscillator leaves s sin t increase with s at every interior time.
    let per_leaf = leaves.len() / 11;
    for k in 1..per_leaf - 1 {
        for i in 1..11 {
            assert!(leaves[i * per_leaf + k][3] > leaves[(i - 1) * per_leaf + k][3]);
        }
    }

    let (_, circles) = read_csv(&out_dir.join("circles.csv"));
    assert_eq!(circles.len(), 2 * 11 * 64);
    let (_, boundary) = read_csv(&out_dir.join("boundary.csv"));
    assert_eq!(boundary.len(), 1024);
    assert!(json(&out)["input_hash"].is_string());
}

#[test]
fn plotdata_grid_errors() {
    let dir = TempDir::new().unwrap();
    for grid in ["0", "1"] {
        let out = isocal(&["plotdata", "--grid", grid, "--out", s(dir.path())]);
        assert_eq!(code(&out), 2);
    }
    assert!(!dir.path().join("vfield.csv").exists());
}

#[test]
fn config_from_environment() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "config.json", r#"{"samples": 300, "seed": 5, "tolerances": {"unit_norm": 1e-11}}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_isocal"))
        .args(["calibration"])
        .env("ISOCAL_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["results"]["samples"], 300);
    assert_eq!(r["results"]["seed"], 5);
    assert_eq!(r["tolerances"]["unit_norm"], 1e-11);

    let flag = isocal(&["calibration", "--config", s(&config), "--samples", "100"]);
    assert_eq!(json(&flag)["results"]["samples"], 100);

    let bad = write(&dir, "bad.json", r#"{"samples": "many"}"#);
    assert_eq!(code(&isocal(&["calibration", "--config", s(&bad)])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&isocal(&["calibration", "--config", s(&missing)])), 2);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&isocal(&["--help"])), 0);
    assert_eq!(code(&isocal(&["--version"])), 0);
    assert_eq!(code(&isocal(&["verify", "--help"])), 0);
}
