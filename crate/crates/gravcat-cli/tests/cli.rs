//! End-to-end tests of the `gravcat` binary: exit codes, error wording,
//! artifact layout, and byte-level determinism of the reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_gravcat")
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gravcat_cli_tests").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn estimate_prints_force_and_gap() {
    let out = scratch("estimate_happy");
    let config = configs_dir().join("reinhardt_baseline.kv");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let text = stdout(&result);
    assert!(text.contains("f0 = 1.9e-30 N"), "{text}");
    assert!(text.contains("9.9 orders of magnitude"), "{text}");
    assert!(out.join("report.json").exists());
    assert!(out.join("report.txt").exists());

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!((json["f0_N"].as_f64().unwrap() - 1.879e-30).abs() < 2e-33);
    assert!(json["gap_orders"].as_f64().unwrap() > 9.8);
}

#[test]
fn missing_config_exits_two_naming_path() {
    let result = run(&["estimate", "--config", "/nonexistent/missing.kv"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("missing.kv"));
}

#[test]
fn unknown_key_exits_two() {
    let out = scratch("unknown_key");
    let config = configs_dir().join("reinhardt_baseline.kv");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--set",
        "bogus=1",
    ]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("bogus"));
}

#[test]
fn dimension_mismatch_names_the_key() {
    let out = scratch("dim_mismatch");
    let config = configs_dir().join("reinhardt_baseline.kv");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--set",
        "L=3kg",
    ]);
    assert_eq!(result.status.code(), Some(2));
    let message = stderr(&result);
    assert!(message.contains("`L`"), "{message}");
    assert!(message.contains("dimension mismatch"), "{message}");
}

#[test]
fn duplicate_key_warns_last_wins() {
    let out = scratch("dup_key");
    let config_path = out.join("dup.kv");
    fs::write(
        &config_path,
        "M = 0.38 ng\nm = 4.0 ng\nL = 1 pm\nL = 2 pm\nD = 3 um\n",
    )
    .unwrap();
    let result = run(&[
        "estimate",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    assert!(stderr(&result).contains("duplicate key `L`"));
    // Last value wins: L = 2 pm doubles the force.
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!((json["inputs"]["L_m"].as_f64().unwrap() - 2e-12).abs() < 1e-24);
}

#[test]
fn set_overrides_apply_after_file() {
    let out = scratch("overrides");
    let config = configs_dir().join("reinhardt_baseline.kv");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--set",
        "L=10 pm",
    ]);
    assert!(result.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!((json["inputs"]["L_m"].as_f64().unwrap() - 1e-11).abs() < 1e-23);
}

#[test]
fn trap_reports_khz_and_validation() {
    let out = scratch("trap");
    let config = configs_dir().join("pb_reference.kv");
    let result = run(&[
        "trap",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let text = stdout(&result);
    assert!(text.contains("2pi x 26.8 kHz"), "{text}");
    assert!(text.contains("R_max"), "{text}");
    assert!(text.contains("all checks pass"), "{text}");
    assert!(text.contains("reconstructed input"), "{text}");
}

#[test]
fn golden_reports_are_bit_identical() {
    let config = configs_dir().join("tantalum_enhanced.kv");
    let out_a = scratch("golden_a");
    let out_b = scratch("golden_b");
    for out in [&out_a, &out_b] {
        let result = run(&[
            "estimate",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success());
    }
    for name in ["report.json", "report.txt"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn classical_simulation_is_seed_deterministic() {
    let out = scratch("classical");
    let config_path = out.join("telegraph.kv");
    fs::write(
        &config_path,
        "f0 = 1 N\nGamma = 1 Hz\ndt = 0.05 s\nt_max = 5 s\nn_traj = 64\n",
    )
    .unwrap();

    let run_with = |dir: &Path, seed: &str| {
        let result = run(&[
            "simulate-classical",
            "--config",
            config_path.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        assert!(result.status.success());
        fs::read(dir.join("trajectories.csv")).unwrap()
    };

    let out_a = scratch("classical_a");
    let out_b = scratch("classical_b");
    let out_c = scratch("classical_c");
    let a = run_with(&out_a, "7");
    let b = run_with(&out_b, "7");
    let c = run_with(&out_c, "8");
    assert_eq!(a, b, "same seed must give identical trajectories");
    assert_ne!(a, c, "different seeds must differ");

    let header = String::from_utf8_lossy(&a);
    assert!(header.starts_with("t,traj_0,traj_1,"));
}

#[test]
fn classical_geometric_route_composes_parameters() {
    let out = scratch("classical_geometric");
    let config_path = out.join("geometric.kv");
    // 3-4-5 probe geometry with nu^2 tau / 2 = 0.5 Hz.
    fs::write(
        &config_path,
        "M = 0.38 ng\nm = 4.0 ng\nL = 6 um\ny = 4 um\nnu = 31.6 Hz\ntau = 1 ms\n\
         dt = 0.1 s\nt_max = 4 s\nn_traj = 16\n",
    )
    .unwrap();
    let result = run(&[
        "simulate-classical",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    // f0 = G M m L / (2 D^3) with D = 5 um.
    let f0 = json["f0_N"].as_f64().unwrap();
    assert!((f0 - 2.434e-24).abs() / 2.434e-24 < 0.01, "f0 = {f0}");
    let gamma = json["gamma_per_s"].as_f64().unwrap();
    assert!((gamma - 0.499).abs() < 0.01, "gamma = {gamma}");
}

#[test]
fn quantum_simulation_writes_observables_and_spectrum() {
    let out = scratch("quantum");
    let config_path = out.join("quantum.kv");
    // g = -0.2 rad/s at m = 1 kg, omega = 1 rad/s.
    fs::write(
        &config_path,
        "m = 1 kg\nomega = 1 rad/s\nf0 = 2.9e-18 N\nnu = 0.25 rad/s\n\
         n_max = 16\nt_max = 60 s\nn_points = 512\n",
    )
    .unwrap();
    let result = run(&[
        "simulate-quantum",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let observables = fs::read_to_string(out.join("observables.csv")).unwrap();
    assert!(observables.starts_with("t,sigma3,number,position\n"));
    assert_eq!(observables.lines().count(), 513);
    let spectrum = fs::read_to_string(out.join("spectrum.csv")).unwrap();
    assert!(spectrum.starts_with("omega,power\n"));
    let text = stdout(&result);
    assert!(text.contains("norm drift"), "{text}");
    assert!(text.contains("dominant sigma_3 frequency"), "{text}");
}

#[test]
fn feasibility_emits_proposal_schema() {
    let out = scratch("feasibility");
    let config = configs_dir().join("feasibility_survey.kv");
    let result = run(&[
        "feasibility",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(result.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&result)).unwrap();
    let proposals = json["proposals"].as_object().unwrap();
    assert_eq!(proposals.len(), 7);
    for (_key, entry) in proposals {
        assert!(entry["force_N"].is_f64());
        assert!(entry["gap_orders"].is_f64());
        assert!(entry["flags"].is_array());
    }
    assert!(json["projections"]["baseline"]["force_N"].is_f64());
    assert!(json["quantum_probe"]["distinguishability"].is_f64());
}

#[test]
fn optimize_returns_pinned_point_for_degenerate_bounds() {
    let out = scratch("optimize");
    let config_path = out.join("pinned.kv");
    fs::write(
        &config_path,
        "materials = Ta\nR_min = 5 um\nR_max = 5 um\na_min = 1 um\na_max = 1 um\n\
         L_min = 10 pm\nL_max = 10 pm\nm = 4.0 ng\n",
    )
    .unwrap();
    let result = run(&[
        "optimize",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let f0 = json["f0_N"].as_f64().unwrap();
    assert!((f0 - 5.4e-29).abs() / 5.4e-29 < 0.01, "f0 = {f0}");
    assert_eq!(json["material"].as_str().unwrap(), "Ta");
}

#[test]
fn infeasible_search_exits_one() {
    let out = scratch("infeasible");
    let config_path = out.join("infeasible.kv");
    // All radii below the coherence-length floor.
    fs::write(
        &config_path,
        "materials = Pb\nR_min = 10 nm\nR_max = 50 nm\na_min = 1 um\na_max = 1 um\n\
         L_min = 1 pm\nL_max = 1 pm\nm = 4.0 ng\n",
    )
    .unwrap();
    let result = run(&[
        "optimize",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("no feasible grid point"));
}

#[test]
fn format_flag_selects_stdout_view() {
    let config = configs_dir().join("reinhardt_baseline.kv");
    let out = scratch("format_json");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(result.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&result)).unwrap();
    assert_eq!(parsed["command"].as_str().unwrap(), "estimate");

    let out_both = scratch("format_both");
    let result = run(&[
        "estimate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_both.to_str().unwrap(),
        "--format",
        "both",
    ]);
    let text = stdout(&result);
    assert!(text.contains("force estimate"));
    assert!(text.contains("\"command\""));
}
