use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_rydberg");

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn rb_config(scale: f64) -> Value {
    json!({
        "schema_version": 1,
        "species": {
            "energy_model": "quantum_defect",
            "defects": {"0": 3.1311804, "1": 2.6548849, "2": 1.34646572, "3": 0.0165192}
        },
        "n": 42,
        "geometry": {"unit": "um", "positions": [[0, 0, 0], [0, 0, 5.0 * scale], [0, 0, 10.0 * scale]]}
    })
}

fn write_config(dir: &Path, name: &str, cfg: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    p
}

fn spectrum<'a>(file: &'a Value, kind: &str) -> &'a Vec<Value> {
    file["spectra"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["subspace"] == kind)
        .unwrap()["eigenvalues"]
        .as_array()
        .unwrap()
}

fn mhz_range(eigs: &[Value]) -> (f64, f64) {
    let mags: Vec<f64> = eigs
        .iter()
        .map(|e| e["mhz"].as_f64().unwrap().abs())
        .collect();
    let max = mags.iter().cloned().fold(0.0, f64::max);
    let min = mags
        .iter()
        .cloned()
        .filter(|&m| m > 1e-8 * max)
        .fold(f64::INFINITY, f64::min);
    (min, max)
}

#[test]
fn radial_reference_value() {
    let out = run(&["radial", "42", "0", "42", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out)["value_a0"].as_f64().unwrap();
    assert!((v.abs() - 2645.0).abs() / 2645.0 < 1e-3, "{v}");
}

#[test]
fn radial_quadrature_oracle() {
    let out = run(&[
        "radial",
        "1",
        "0",
        "2",
        "1",
        "--method",
        "quadrature",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 1.29027).abs() < 1e-5);
}

#[test]
fn radial_forbidden_transition_warns() {
    let out = run(&["radial", "1", "0", "3", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("dipole forbidden"));
}

#[test]
fn radial_invalid_state_is_a_validation_error() {
    let out = run(&["radial", "2", "2", "3", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shifts_reference_scenario() {
    let cfg = configs_dir().join("rb42.json");
    let out = run(&["shifts", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let file = stdout_json(&out);
    let (lo, hi) = mhz_range(spectrum(&file, "sp"));
    assert!(
        (lo - 18.0).abs() / 18.0 < 0.05 && (hi - 36.0).abs() / 36.0 < 0.05,
        "{lo} {hi}"
    );
    let (lo, hi) = mhz_range(spectrum(&file, "pd"));
    assert!(
        (lo - 1.3).abs() / 1.3 < 0.1 && (hi - 35.0).abs() / 35.0 < 0.1,
        "{lo} {hi}"
    );
}

#[test]
fn shifts_scale_with_inverse_cube_distance() {
    let dir = tempfile::tempdir().unwrap();
    let near = write_config(dir.path(), "near.json", &rb_config(1.0));
    let far = write_config(dir.path(), "far.json", &rb_config(2.0));
    let a = stdout_json(&run(&["shifts", "--config", near.to_str().unwrap()]));
    let b = stdout_json(&run(&["shifts", "--config", far.to_str().unwrap()]));
    for kind in ["sp", "pd", "spd"] {
        for (x, y) in spectrum(&a, kind).iter().zip(spectrum(&b, kind)) {
            let (x, y) = (
                x["hartree"].as_f64().unwrap(),
                y["hartree"].as_f64().unwrap(),
            );
            assert!(
                (x - 8.0 * y).abs() <= 1e-10 * x.abs().max(1e-30),
                "{kind}: {x} {y}"
            );
        }
    }
}

#[test]
fn outputs_are_deterministic_and_matrices_dump() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", &rb_config(1.0));
    let dump = dir.path().join("mats");
    let mut files = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("s{k}.json"));
        let status = run(&[
            "shifts",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--dump-matrix",
            dump.to_str().unwrap(),
        ]);
        assert!(status.status.success());
        files.push(fs::read(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let sp = fs::read_to_string(dump.join("sp.txt")).unwrap();
    assert!(sp.contains("# dimension: 6"));
    assert_eq!(sp.lines().filter(|l| !l.starts_with('#')).count(), 36);
    assert!(dump.join("spd.txt").exists());
}

#[test]
fn blockade_passes_with_rubidium_defects() {
    let cfg = configs_dir().join("rb42.json");
    let out = run(&["blockade", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["passed"], true);
    let rabi = report["max_rabi_mhz"].as_f64().unwrap();
    assert!((0.3..3.0).contains(&rabi), "{rabi}");
}

#[test]
fn blockade_csv_lists_channels() {
    let cfg = configs_dir().join("rb42.json");
    let out = run(&[
        "blockade",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("channel,family,pair,n1,n2,"));
    assert!(text.lines().count() > 100);
}

#[test]
fn blockade_hydrogenic_raises_resonance_alarm() {
    let cfg = configs_dir().join("hydrogen42.json");
    let out = run(&["blockade", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resonant"));
}

#[test]
fn blockade_missing_f_defect_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = rb_config(1.0);
    cfg["species"]["defects"]
        .as_object_mut()
        .unwrap()
        .remove("3");
    let path = write_config(dir.path(), "c.json", &cfg);
    let out = run(&["blockade", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("l = 3"));
}

#[test]
fn invalid_configs_exit_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let mut two_atoms = rb_config(1.0);
    two_atoms["geometry"]["positions"] = json!([[0, 0, 0], [0, 0, 5]]);
    let mut no_unit = rb_config(1.0);
    no_unit["geometry"].as_object_mut().unwrap().remove("unit");
    let mut version = rb_config(1.0);
    version["schema_version"] = json!(7);
    let mut coincident = rb_config(1.0);
    coincident["geometry"]["positions"] = json!([[0, 0, 0], [0, 0, 0], [0, 0, 5]]);
    for (name, cfg) in [
        ("a", two_atoms),
        ("b", no_unit),
        ("c", version),
        ("d", coincident),
    ] {
        let path = write_config(dir.path(), &format!("{name}.json"), &cfg);
        let out = run(&["shifts", "--config", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = run(&["shifts", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gatesim_strong_blockade_limit() {
    let cfg = configs_dir().join("rb42.json");
    let out = run(&[
        "gatesim",
        "--config",
        cfg.to_str().unwrap(),
        "--ratio",
        "1e4",
    ]);
    assert!(out.status.success());
    let runs = stdout_json(&out);
    assert!(runs[0]["report"]["frame_fidelity"].as_f64().unwrap() >= 0.9999);
}

#[test]
fn gatesim_ccphase_without_shifts_is_reported_honestly() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = rb_config(1.0);
    cfg["gate"] = json!({"protocol": "ccphase", "shift_source": {"kind": "values", "sp": 0, "pd": 0, "spd": 0}});
    let path = write_config(dir.path(), "c.json", &cfg);
    let out = run(&[
        "gatesim",
        "--config",
        path.to_str().unwrap(),
        "--min-fidelity",
        "0.99",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let runs = stdout_json(&out);
    let f = runs[0]["report"]["fidelity"].as_f64().unwrap();
    assert!(f < 0.99, "{f}");
}

#[test]
fn gatesim_reads_shift_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let base = write_config(dir.path(), "base.json", &rb_config(1.0));
    let computed = stdout_json(&run(&["gatesim", "--config", base.to_str().unwrap()]));
    for ext in ["json", "csv"] {
        let shifts = dir.path().join(format!("shifts.{ext}"));
        let status = run(&[
            "shifts",
            "--config",
            base.to_str().unwrap(),
            "--format",
            ext,
            "--output",
            shifts.to_str().unwrap(),
        ]);
        assert!(status.status.success());
        let mut cfg = rb_config(1.0);
        cfg["gate"] = json!({"shift_source": {"kind": "file", "path": format!("shifts.{ext}")}});
        let path = write_config(dir.path(), &format!("from_{ext}.json"), &cfg);
        let out = run(&["gatesim", "--config", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let runs = stdout_json(&out);
        // lossless round trip: identical shifts and gate
        assert_eq!(
            runs[0]["shifts_rad_per_us"], computed[0]["shifts_rad_per_us"],
            "{ext}"
        );
        assert_eq!(runs[0]["report"], computed[0]["report"], "{ext}");
        assert!(runs[0]["report"]["frame_fidelity"].as_f64().unwrap() >= 0.99);
    }
}

#[test]
fn gatesim_dumps_gate_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "c.json", &rb_config(1.0));
    let dump = dir.path().join("gate.txt");
    let out = run(&[
        "gatesim",
        "--config",
        path.to_str().unwrap(),
        "--ratio",
        "1e4",
        "--dump-matrix",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(dump).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 64);
}

#[test]
fn full_exchange_mode_runs_for_atoms_and_rejects_registers() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = rb_config(1.0);
    cfg["gate"] = json!({"mode": "full_exchange"});
    let path = write_config(dir.path(), "c.json", &cfg);
    let out = run(&["gatesim", "--config", path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(
        stdout_json(&out)[0]["report"]["frame_fidelity"]
            .as_f64()
            .unwrap()
            > 0.99
    );
    let out = run(&[
        "gatesim",
        "--config",
        path.to_str().unwrap(),
        "--protocol",
        "ccphase",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
