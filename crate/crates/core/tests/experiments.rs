//! Configuration handling, unit conversion, reports and the command line.

use std::fs;
use std::process::Command;

use ghzsim::experiments::{emit_report, preset, run_scenario, ScenarioConfig, SCENARIOS};
use ghzsim::model::Units;
use ghzsim::Error;

fn short_custom(extra: &str) -> ScenarioConfig {
    let text = format!("scenario = custom\nmodel = zpump-only\ntmax = 40\ngrid = 8\n{extra}");
    ScenarioConfig::parse(&text).unwrap()
}

#[test]
fn emitted_configuration_parses_back_unchanged() {
    for name in SCENARIOS {
        let cfg = preset(name).unwrap();
        let back = ScenarioConfig::parse(&cfg.emit()).unwrap();
        assert_eq!(back, cfg, "{name}");
    }
}

#[test]
fn parse_keeps_preset_values_for_absent_keys() {
    let cfg = ScenarioConfig::parse("scenario = fig4-full\ntmax = 100 # short\n\n").unwrap();
    let preset = preset("fig4-full").unwrap();
    assert_eq!(cfg.tmax, 100.0);
    assert_eq!(cfg.params, preset.params);
    assert_eq!(cfg.params.units, Units::Mhz2Pi);
}

#[test]
fn configuration_errors_are_reported() {
    assert!(matches!(ScenarioConfig::parse("scenario = fig9"), Err(Error::UnknownScenario(_))));
    assert!(matches!(preset("nope"), Err(Error::UnknownScenario(_))));
    assert!(ScenarioConfig::parse("colour = blue").is_err());
    assert!(ScenarioConfig::parse("omega").is_err());
    assert!(ScenarioConfig::parse("omega = fast").is_err());
    assert!(ScenarioConfig::parse("units = mhz\ng = 1.0").is_err());
    assert!(ScenarioConfig::parse("units = g\ng_mhz = 50").is_err());
    assert!(ScenarioConfig::parse("tmax = -1").is_err());
    assert!(ScenarioConfig::parse("gamma_e = -0.1").is_err());
    assert!(ScenarioConfig::parse("model = full\ncutoff = 0").is_err());
}

#[test]
fn physical_and_coupling_units_give_the_same_trajectory() {
    let g = 50.0;
    let mhz = short_custom(&format!(
        "units = mhz\ng_mhz = {g}\nomega = {}\ndelta1 = {}\ndelta2 = {}\ndelta3 = {}\ngamma_e = {}\nkappa = {}",
        0.02 * g,
        -0.01 * g,
        0.02 * g,
        -0.01 * g,
        0.1 * g,
        0.05 * g
    ));
    let gu = short_custom("units = g\ng = 1\nomega = 0.02\ndelta1 = -0.01\ndelta2 = 0.02\ndelta3 = -0.01\ngamma_e = 0.1\nkappa = 0.05");
    let a = run_scenario(&mhz).unwrap();
    let b = run_scenario(&gu).unwrap();
    let (ta, tb) = (&a.tables[0], &b.tables[0]);
    assert_eq!(ta.header, tb.header);
    assert_eq!(ta.rows.len(), 9);
    for (ra, rb) in ta.rows.iter().zip(&tb.rows) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).abs() <= 1e-10, "{x} vs {y}");
        }
    }
}

#[test]
fn reruns_write_identical_reports() {
    let cfg = short_custom("");
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a");
    let second = dir.path().join("b");
    emit_report(&run_scenario(&cfg).unwrap(), &cfg.emit(), &first).unwrap();
    emit_report(&run_scenario(&cfg).unwrap(), &cfg.emit(), &second).unwrap();
    let mut names: Vec<_> = fs::read_dir(&first).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    for f in ["custom.csv", "summary.csv", "notes.txt", "plot.gp", "config.txt"] {
        assert!(names.iter().any(|n| n == f), "missing {f}");
    }
    for n in names {
        assert_eq!(fs::read(first.join(&n)).unwrap(), fs::read(second.join(&n)).unwrap(), "{n:?}");
    }
    let config = fs::read_to_string(first.join("config.txt")).unwrap();
    assert_eq!(ScenarioConfig::parse(&config).unwrap(), cfg);
}

#[test]
fn zeno_report_scenario_passes() {
    let out = run_scenario(&preset("zeno-report").unwrap()).unwrap();
    assert!(out.all_pass(), "{:?}", out.checks);
    assert!(out.check("7:eigenvalues").is_some());
}

#[test]
fn symmetric_ladder_runs_from_configuration() {
    let cfg = ScenarioConfig::parse("model = symmetric-4x4\nomega_r = 0.05\ndelta_cap = 1\nu = 1\ntmax = 100\ngrid = 10").unwrap();
    let out = run_scenario(&cfg).unwrap();
    let c3 = out.tables[0].column("c3sq").unwrap();
    assert_eq!(c3.len(), 11);
    assert_eq!(c3[0], 0.0);
}

#[test]
fn command_line_runs_a_scenario_and_writes_its_report() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_ghzsim"))
        .args(["zeno-report", "--check", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let stdout = String::from_utf8_lossy(&status.stdout);
    assert!(stdout.contains("PASS"));
    assert!(dir.path().join("zeno-report").join("summary.csv").exists());
}

#[test]
fn command_line_reads_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "model = zpump-only\ntmax = 20\ngrid = 4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ghzsim"))
        .arg("custom")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.path().join("custom").join("custom.csv")).unwrap();
    assert_eq!(table.lines().count(), 6);
}

#[test]
fn command_line_rejects_unknown_scenarios() {
    let out = Command::new(env!("CARGO_BIN_EXE_ghzsim")).arg("fig9").output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig9"));
}
