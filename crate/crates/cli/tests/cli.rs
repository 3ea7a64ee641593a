use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("elastocald-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastocald"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("ELASTOCALD_THREADS", "1")
        .output()
        .unwrap()
}

fn sidecar(out: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join(format!("{name}.csv.json"))).unwrap())
        .unwrap()
}

fn csv_rows(out: &Path, name: &str) -> Vec<Vec<String>> {
    std::fs::read_to_string(out.join(format!("{name}.csv")))
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn constants_sweep_rows() {
    let out = scratch("constants");
    let o = run(&out, &["constants"]);
    assert!(o.status.success());
    let printed: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(printed["constants"]["c_tilde"], 0.125);
    let rows = csv_rows(&out, "constants");
    assert_eq!(rows[0], ["mu_tilde", "c_tilde", "cluster", "admissible"]);
    let find = |mt: f64| {
        rows[1..]
            .iter()
            .find(|r| (r[0].parse::<f64>().unwrap() - mt).abs() < 1e-12)
            .unwrap()
            .clone()
    };
    let one = find(1.0);
    assert_eq!(one[1].parse::<f64>().unwrap(), 0.125);
    assert_eq!(one[2].parse::<f64>().unwrap(), -0.234375);
    assert_eq!(find(-1.0)[3], "false");
    assert!(find(0.6)[1].parse::<f64>().unwrap().abs() < 1e-15);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn flags_override_config_file() {
    let out = scratch("config");
    let cfg = out.join("run.json");
    std::fs::write(
        &cfg,
        r#"{"geometry": "ellipse", "n": 16, "sizes": [16, 24], "omega": 1.5}"#,
    )
    .unwrap();
    let o = run(
        &out,
        &[
            "calderon-check",
            "--config",
            cfg.to_str().unwrap(),
            "--sizes",
            "16,32",
            "--seed",
            "3",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = sidecar(&out, "calderon");
    assert_eq!(s["config"]["geometry"], "ellipse");
    assert_eq!(s["config"]["omega"], 1.5);
    assert_eq!(s["config"]["sizes"], serde_json::json!([16, 32]));
    assert_eq!(s["config"]["seed"], 3);
    assert_eq!(s["config"]["command"], "calderon-check");
    assert_eq!(s["pass"], true);
    assert_eq!(csv_rows(&out, "calderon").len(), 3);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn bad_configuration_exits_with_two() {
    let out = scratch("bad");
    assert_eq!(
        run(&out, &["solve", "--geometry", "nope"]).status.code(),
        Some(2)
    );
    let cfg = out.join("run.json");
    std::fs::write(&cfg, r#"{"omgea": 2}"#).unwrap();
    let o = run(&out, &["constants", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value =
        serde_json::from_slice(o.stderr.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert!(err["error"].as_str().unwrap().contains("omgea"));
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn spectrum_output_is_deterministic() {
    let out = scratch("determinism");
    let args = ["spectrum", "--n", "32", "--omega", "0.1", "--seed", "5"];
    let start = std::time::Instant::now();
    assert!(run(&out, &args).status.success());
    assert!(start.elapsed().as_secs_f64() < 5.0);
    let first = std::fs::read(out.join("spectrum.csv")).unwrap();
    assert!(run(&out, &args).status.success());
    assert_eq!(first, std::fs::read(out.join("spectrum.csv")).unwrap());
    assert_eq!(
        csv_rows(&out, "spectrum")[0],
        ["re", "im", "dist_to_cluster"]
    );
    assert_eq!(csv_rows(&out, "spectrum").len(), 65);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn diag_test_passes_and_fails_on_tolerance() {
    let out = scratch("diag");
    assert!(run(&out, &["diag-test", "--n", "16"]).status.success());
    let rows = csv_rows(&out, "diag");
    assert_eq!(rows.len(), 1 + 14 * 2 * 4);
    assert!(rows[1..].iter().all(|r| r[4] == "true"));
    let o = run(&out, &["diag-test", "--n", "16", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let s = sidecar(&out, "diag");
    assert_eq!(s["pass"], false);
    assert!(!s["failures"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn static_straight_arc_reference_spectrum() {
    let out = scratch("arc");
    let o = run(
        &out,
        &[
            "arc-spectrum",
            "--geometry",
            "straight",
            "--omega",
            "0",
            "--n",
            "16",
            "--operator",
            "j0j",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = sidecar(&out, "arc-spectrum");
    assert_eq!(s["lambda_inf"].as_array().unwrap().len(), 18);
    assert_eq!(s["cluster_point"][0], -0.234375);
    assert_eq!(
        run(&out, &["arc-spectrum", "--geometry", "circle"])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn exact_solution_solve_reports_field_error() {
    let out = scratch("solve");
    let o = run(&out, &["solve", "--incident", "point-source", "--n", "64"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = sidecar(&out, "solve-density");
    assert!(s["exact_error"].as_f64().unwrap() < 1e-6);
    let field = csv_rows(&out, "solve-field");
    assert_eq!(field[0], ["x", "y", "re_u1", "im_u1", "re_u2", "im_u2"]);
    assert!(field.len() > 1000);
    assert_eq!(csv_rows(&out, "solve-density").len(), 65);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn arc_solve_reports_endpoint_exponents() {
    let out = scratch("arcsolve");
    let o = run(
        &out,
        &[
            "solve",
            "--geometry",
            "parabola",
            "--n",
            "64",
            "--angle",
            "-0.7",
        ],
    );
    assert!(o.status.success());
    let s = sidecar(&out, "solve-density");
    for e in s["endpoint_exponents"].as_array().unwrap() {
        assert!((e.as_f64().unwrap() + 0.5).abs() < 0.1);
    }
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn iteration_table_favours_preconditioning() {
    let out = scratch("iters");
    let o = run(
        &out,
        &[
            "iters",
            "--geometry",
            "parabola",
            "--ks-length",
            "20",
            "--sizes",
            "64",
            "--angle",
            "-0.7",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&out, "iters");
    assert_eq!(rows.len(), 3);
    let it = |i: usize| rows[i][2].parse::<usize>().unwrap();
    assert!(it(2) < it(1));
    std::fs::remove_dir_all(out).unwrap();
}
