use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vortexlab"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn run(scenario: &Path, out: &Path) -> Output {
    bin().args(["run", "--scenario"]).arg(scenario).arg("--out").arg(out).output().unwrap()
}

fn summary(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn three_vortex_collision_is_an_event() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&scenario("three-vortex-collapse"), dir.path());
    assert_eq!(o.status.code(), Some(2));
    let s = summary(dir.path());
    assert_eq!(s["status"], "event");
    assert_eq!(s["events"][0]["kind"], "collision");
    let t = s["events"][0]["time"].as_f64().unwrap();
    assert!((t - 2.1213).abs() < 1e-3, "{t}");
    for k in ["hamiltonian", "center", "angular_momentum", "t_moment"] {
        assert!(s["invariants"][k].is_number(), "{k}");
    }
    let csv = std::fs::read_to_string(dir.path().join("timeseries.csv")).unwrap();
    assert!(csv.starts_with("t,hamiltonian,"));
}

#[test]
fn gaussian_profile_vanishes_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&scenario("gaussian-collapse"), dir.path());
    assert_eq!(o.status.code(), Some(2));
    let s = summary(dir.path());
    assert_eq!(s["events"][0]["kind"], "vanish");
    let t = s["events"][0]["time"].as_f64().unwrap();
    assert!((t - 1.0).abs() < 2e-3, "{t}");
}

#[test]
fn empty_perturbation_stays_put() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&scenario("empty-perturbation"), dir.path());
    assert_eq!(o.status.code(), Some(0));
    let s = summary(dir.path());
    assert_eq!(s["status"], "completed");
    assert_eq!(s["events"].as_array().unwrap().len(), 0);
    for (_, v) in s["invariants"].as_object().unwrap() {
        assert_eq!(v.as_f64(), Some(0.0));
    }
    assert_eq!(s["closed_form"]["perturbation_size"].as_f64(), Some(0.0));
    assert_eq!(s["scenario"]["events"]["collision_ratio"].as_f64(), Some(0.05));
}

#[test]
fn runs_are_bit_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for name in ["shifted-gaussian", "knot"] {
        run(&scenario(name), a.path());
        run(&scenario(name), b.path());
        let read = |d: &Path| std::fs::read(d.join("timeseries.csv")).unwrap();
        assert_eq!(read(a.path()), read(b.path()), "{name}");
    }
}

#[test]
fn bad_scenarios_fail_with_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"model": "pointvortex", "family": "polygon", "params": {"n": "three"}}"#).unwrap();
    let o = run(&file, dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("params.n"), "{err}");
    let o = run(&dir.path().join("missing.json"), dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn every_shipped_scenario_is_valid() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        vortexlab::Scenario::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn unknown_suite_is_an_error() {
    let o = bin().args(["verify", "--suite", "everything"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn verify_reports_json() {
    let o = bin().args(["verify", "--suite", "numerics", "--format", "json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["suite"], "numerics");
    assert_eq!(r["failed"], 0);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn seed_changes_only_the_random_profiles() {
    let run = |seed: &str| {
        let o = bin().env("SEED", seed).args(["verify", "--suite", "polygonflow", "--format", "json"]).output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        let r: Value = serde_json::from_slice(&o.stdout).unwrap();
        r["checks"].as_array().unwrap().iter().map(|c| (c["name"].as_str().unwrap().to_string(), c["value"].as_f64().unwrap())).collect::<Vec<_>>()
    };
    let (a, b, c) = (run("1"), run("1"), run("2"));
    assert_eq!(a, b);
    let differs: Vec<&str> = a.iter().zip(&c).filter(|(x, y)| x.1 != y.1).map(|(x, _)| x.0.as_str()).collect();
    assert!(!differs.is_empty());
    assert!(differs.iter().all(|n| n.contains("E_GP")), "{differs:?}");
    assert_eq!(bin().env("SEED", "x").args(["verify", "--suite", "numerics"]).output().unwrap().status.code(), Some(1));
}

#[test]
fn alpha_sweep_changes_regime_at_the_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["sweep", "--scenario"])
        .arg(scenario("triangle-regime"))
        .args(["--param", "params.alpha", "--min", "0.2", "--max", "4", "--count", "50", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (a, r) = (col("params.alpha"), col("regime"));
    let rows: Vec<(f64, String)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[a].parse().unwrap(), f[r].to_string())
        })
        .collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    let changes: Vec<f64> = rows.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| (w[0].0 + w[1].0) / 2.0).collect();
    assert_eq!(changes.len(), 2, "{rows:?}");
    assert!((changes[0] - 1.0).abs() < 0.04);
    let threshold = 1.0 / (2.0 * (1.0 - 0.81));
    assert!((changes[1] - threshold).abs() < 0.04, "{changes:?}");
}

#[test]
fn wave_sweep_phase_jump_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["sweep", "--scenario"])
        .arg(scenario("wave-sweep"))
        .args(["--param", "params.c2", "--min", "1.9", "--max", "1.999", "--count", "8", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = header.iter().position(|h| *h == "phase_jump").unwrap();
    let jumps: Vec<f64> = lines.map(|l| l.split(',').nth(j).unwrap().parse().unwrap()).collect();
    assert_eq!(jumps.len(), 8);
    assert!(jumps.windows(2).all(|w| w[1] < w[0]), "{jumps:?}");
}

#[test]
fn polygon_sweep_loses_stability_at_eight() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["sweep", "--scenario"])
        .arg(scenario("polygon-spectrum"))
        .args(["--param", "params.n", "--min", "3", "--max", "8", "--count", "6", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = header.iter().position(|h| *h == "max_real_part").unwrap();
    let growth: Vec<f64> = lines.map(|l| l.split(',').nth(j).unwrap().parse().unwrap()).collect();
    assert!(growth[..5].iter().all(|g| *g <= 1e-6), "{growth:?}");
    assert!(growth[5] > 1e-3);
}

#[test]
fn sweeping_a_missing_parameter_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["sweep", "--scenario"])
        .arg(scenario("polygon-spectrum"))
        .args(["--param", "params.sides", "--min", "3", "--max", "8", "--count", "6", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("params.sides"));
}
