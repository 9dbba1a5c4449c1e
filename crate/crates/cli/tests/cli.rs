use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;

use dwt_cli::{run, subcommand_paths, Outcome, OP_MAP};

fn dwt(args: &str) -> Outcome {
    run(std::iter::once("dwt").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let out = dwt(args);
    assert_eq!(out.code, 0, "`{args}` failed: {}", out.stderr);
    out.stdout
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{text}"))
        .to_string()
}

fn temp_json(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn every_operation_maps_to_one_real_subcommand() {
    let paths: BTreeSet<String> = subcommand_paths().into_iter().collect();
    let mut seen = BTreeSet::new();
    for (op, path) in OP_MAP {
        assert!(seen.insert(*op), "{op} listed twice");
        assert!(paths.contains(*path), "{op} maps to missing subcommand `{path}`");
    }
    for required in [
        "fatigue endurance",
        "fatigue sn",
        "fatigue life",
        "blade bending",
        "blade torsion",
        "blade life",
        "tower column",
        "tower life",
        "ballast",
        "aero torque",
        "aero betz",
        "aero sweep",
        "bearing life",
        "weibull fit",
        "weibull cdf",
        "weibull quantile",
        "weibull hazard",
        "weibull sample",
        "system mttf",
        "system reliability",
        "system life",
        "schedule generate",
        "schedule report",
        "schedule rul",
    ] {
        assert!(paths.contains(required), "missing `{required}`");
    }
}

#[test]
fn weibull_cdf_at_origin_is_zero() {
    let out = ok("weibull cdf --beta 1 --eta 10 --t 0");
    assert_eq!(field(&out, "cdf"), "0");
    assert_eq!(field(&out, "survival"), "1");
}

#[test]
fn aero_sweep_json_has_three_rows() {
    let out = ok("aero sweep --json");
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 3);
    for (row, want) in rows.iter().zip([4027.0, 4838.0, 2154.0]) {
        let t = row["torque"].as_f64().unwrap();
        assert!((t - want).abs() / want < 5e-3, "{t} vs {want}");
    }
}

#[test]
fn aero_sweep_csv_default() {
    let out = ok("aero sweep");
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("cp,rpm,"));
    assert!(lines[1].ends_with(",4033.07"), "{}", lines[1]);
}

#[test]
fn system_mttf_is_deterministic_per_seed() {
    let a = ok("system mttf --seed 7 --samples 5000");
    let b = ok("system mttf --seed 7 --samples 5000");
    let c = ok("system mttf --seed 8 --samples 5000");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn system_mttf_reads_topology_document() {
    let f = temp_json(
        r#"{"series": [
            {"leaf": {"id": "a", "model": {"exponential": {"rate": 0.1}}}},
            {"leaf": {"id": "b", "model": {"exponential": {"rate": 0.1}}}}
        ]}"#,
    );
    let out = ok(&format!("system mttf --json --samples 200000 --config {}", f.path().display()));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let (m, se) = (v["mttf"].as_f64().unwrap(), v["standard_error"].as_f64().unwrap());
    assert!((m - 5.0).abs() < 4.0 * se, "{m} ± {se}");
}

#[test]
fn validation_errors_exit_one() {
    let out = dwt("weibull cdf --beta -1 --eta 10 --t 1");
    assert_eq!(out.code, 1, "{out:?}");
    let out = dwt("schedule report --format pdf");
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("pdf"));
    let out = dwt("fatigue sn --sut 58ksi --se 20mm");
    assert_eq!(out.code, 1);
}

#[test]
fn numeric_failures_exit_two() {
    let out = dwt("weibull hazard --beta 0.5 --eta 10 --t 0");
    assert_eq!(out.code, 2, "{out:?}");
    let out = dwt(
        "tower column --load 1e7 --eccentricity 0.01 --centroid 0.05 --gyration 0.05 --height 3 --area 0.003 --inertia 8e-6",
    );
    assert_eq!(out.code, 2, "{out:?}");
    assert!(out.stderr.contains("buckling"));
}

#[test]
fn unknown_subcommand_or_flag_prints_usage() {
    for args in ["frobnicate", "weibull cdf --beta 1 --eta 2 --t 1 --bogus"] {
        let out = dwt(args);
        assert_eq!(out.code, 1, "{args}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("Usage:"), "{}", out.stderr);
    }
    assert_eq!(dwt("--help").code, 0);
}

#[test]
fn imperial_units_at_the_boundary() {
    let si = ok("fatigue endurance --preset tower");
    let imp = ok("fatigue endurance --preset tower --units imperial");
    assert_eq!(field(&imp, "endurance_modified"), "19.7299 ksi");
    assert_eq!(field(&si, "endurance_modified"), "136.033 MPa");
    // Bare numbers take the selected system's unit; tagged ones keep theirs.
    let a = ok("fatigue sn --sut 58 --se 19.7299 --units imperial");
    let b = ok("fatigue sn --sut 58ksi --se 19.7299ksi --units imperial");
    assert_eq!(a, b);
    // JSON stays SI regardless.
    let j1 = ok("fatigue endurance --preset tower --json");
    let j2 = ok("fatigue endurance --preset tower --json --units imperial");
    assert_eq!(j1, j2);
}

#[test]
fn fatigue_cycle_life_matches_preset_chain() {
    let out = ok("tower life");
    assert_eq!(field(&out, "cycles"), "1.4332e7");
    let life = ok("fatigue life --sigma 13.56ksi --a 138.107ksi --b -0.140849 --cycles-per-day 1000");
    let n: f64 = field(&life, "cycles").parse().unwrap();
    assert!((n - 1.4332e7).abs() / 1.4332e7 < 1e-3);
}

#[test]
fn sn_json_feeds_life_config() {
    let sn = ok("fatigue sn --sut 58ksi --se 19.7299ksi --json");
    let f = temp_json(&sn);
    let out = ok(&format!("fatigue life --sigma 13.56ksi --config {}", f.path().display()));
    let n: f64 = field(&out, "cycles").parse().unwrap();
    // The endurance limit went in rounded to six digits.
    assert!((n - 1.4332e7).abs() / 1.4332e7 < 1e-4, "{n}");
}

#[test]
fn weibull_fit_json_round_trips() {
    let fit = ok("weibull fit --p1 10 --t1 5 --p2 50 --t2 20 --json");
    let f = temp_json(&fit);
    let cfg = f.path().display().to_string();
    let q10: f64 = field(&ok(&format!("weibull quantile --p 10 --config {cfg}")), "life").parse().unwrap();
    let q50: f64 = field(&ok(&format!("weibull quantile --p 50 --config {cfg}")), "life").parse().unwrap();
    assert!((q10 - 5.0).abs() < 1e-4 && (q50 - 20.0).abs() < 1e-4, "{q10} {q50}");
}

#[test]
fn bearing_json_round_trips_through_config() {
    let out = ok("bearing life --json");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let y = v["years_raceway_basis"].as_f64().unwrap();
    assert!((75.0..=85.0).contains(&y), "{y}");
    let case = temp_json(
        r#"{"geometry": {"groove_factor_fcm": 38, "rows_i": 1, "ball_count_z": 30,
             "ball_diameter_dr": 12.7, "contact_angle_alpha": 45, "raceway_center_diameter_dm": 368.3},
            "loads": {"radial_fr": 0, "axial_fa": 390.7, "moment_m": 0}}"#,
    );
    let out = ok(&format!("bearing life --json --config {}", case.path().display()));
    let v2: serde_json::Value = serde_json::from_str(&out).unwrap();
    let ratio = v["l10"].as_f64().unwrap() / v2["l10"].as_f64().unwrap();
    assert!((ratio - 8.0).abs() < 0.01, "{ratio}");
}

#[test]
fn schedule_csv_and_markdown() {
    let csv = ok("schedule generate --install 2025-01-01 --horizon 0.25");
    assert!(csv.starts_with("due_date,component_id,task,reason\r\n"));
    assert!(csv.contains("2025-01-31,Screw Jack (Pole Raising System),Inspect monthly for visible corrosion,interval_elapsed\r\n"));
    let md = ok("schedule generate --install 2025-01-01 --horizon 0.25 --format markdown");
    assert!(md.starts_with("| Due date | Component | Task | Reason |"));
    let reg = ok("schedule report --format md");
    assert!(reg.contains("## Fasteners"));
}

#[test]
fn schedule_uses_deployment_document() {
    let dep = temp_json(
        r#"{"installation": {"install_date": "2025-01-01",
             "cycle_log": {"jack_cycles": [{"date": "2025-03-01", "count": 15}]}}}"#,
    );
    let out = ok(&format!("schedule generate --horizon 0.5 --json --config {}", dep.path().display()));
    let entries: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert!(entries
        .iter()
        .any(|e| e["due_date"] == "2025-03-01" && e["reason"] == "cycles_elapsed"));
}

#[test]
fn schedule_rul_reports_remaining_life() {
    let out = ok("schedule rul --component Generator --elapsed 5");
    assert_eq!(field(&out, "remaining"), "15 yr");
    assert_eq!(field(&out, "fraction_consumed"), "0.25");
    assert_eq!(dwt("schedule rul --component Nope --elapsed 1").code, 1);
}

#[test]
fn registry_override_from_file() {
    let reg = temp_json(
        r#"{"components": [{"id": "Widget", "group": "Control", "failure_modes": [],
            "service_life": {"value": 2, "unit": "years"},
            "tasks": [{"description": "Look at it", "trigger": {"calendar_interval": {"years": 1}}}]}]}"#,
    );
    let out = ok(&format!(
        "schedule generate --install 2025-01-01 --horizon 3 --registry {}",
        reg.path().display()
    ));
    assert!(out.contains("2026-01-01,Widget,Look at it,interval_elapsed"), "{out}");
    assert!(out.contains("2027-01-01,Widget,End of service life,life_expired"), "{out}");
}

#[test]
fn small_commands_print_expected_values() {
    assert_eq!(ok("convert 45ksi MPa"), "310.264 MPa\n");
    assert_eq!(field(&ok("aero betz --a0 0"), "cp_max"), "0.592593");
    assert_eq!(field(&ok("aero torque"), "torque"), "3226.46 N·m");
    assert_eq!(field(&ok("ballast"), "required_weight"), "6035 N");
    assert_eq!(field(&ok("system life"), "limiting_component"), "generator");
    assert_eq!(field(&ok("system reliability --series 0.9,0.8"), "reliability"), "0.72");
    assert_eq!(field(&ok("system reliability --parallel 0.9,0.8"), "reliability"), "0.98");
    assert_eq!(field(&ok("system repairs --rate 0.5 --horizon 10"), "expected_repairs"), "5");
    assert_eq!(ok("weibull sample --beta 2 --eta 3 --count 4 --seed 1").lines().count(), 4);
    assert_eq!(field(&ok("blade bending --units imperial"), "stress_flat"), "6.48181 ksi");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dwt");
    let ok = Command::new(bin).args(["aero", "betz", "--a0", "0.2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Usage:"));
    let num = Command::new(bin)
        .args(["weibull", "hazard", "--beta", "0.5", "--eta", "1", "--t", "0"])
        .output()
        .unwrap();
    assert_eq!(num.status.code(), Some(2));
}
