use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use devissage_cli::{check, emit_config, parse_config, parse_config_str, run, CliError, Flags};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn devissage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_devissage"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nodal_cubic_verifies_with_rank_one() {
    let out = devissage(&[path_str(&config("nodal-cubic.json")), "--verify", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["rank"], 1);
    assert_eq!(r["equivalence"]["pass"], true);
    let rows = r["equivalence"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row["covers"] == 1));
}

#[test]
fn all_trivial_config_reports_fast_path_rank() {
    let out = devissage(&[path_str(&config("multi-edge-3.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["fast_path"]["rank"], 2);
    assert_eq!(r["fast_path"]["method"], "curve-fast-path");
    assert_eq!(r["assemblies"][0]["presentation"]["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn equivalence_table_only_with_verify() {
    let out = devissage(&[path_str(&config("z2-nodal.json"))]);
    assert!(report(&out).get("equivalence").is_none());
    assert!(report(&out).get("fast_path").is_none());
}

#[test]
fn disconnected_config_exits_with_validation_code() {
    let out = devissage(&[path_str(&config("disconnected.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not connected"));
}

#[test]
fn unknown_field_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(config("nodal-cubic.json"))
        .unwrap()
        .replacen(r#""id": "X","#, r#""id": "X", "colour": "red","#, 1);
    std::fs::write(&path, text).unwrap();
    let out = devissage(&[path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn empty_file_exits_with_parse_code() {
    let file = tempfile::NamedTempFile::new().unwrap();
    assert_eq!(devissage(&[path_str(file.path())]).status.code(), Some(1));
}

#[test]
fn unknown_probe_exits_with_parse_code() {
    let out = devissage(&[path_str(&config("nodal-cubic.json")), "--probes", "Q_8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_verdict_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let verdicts = dir.path().join("v.json");
    std::fs::write(&verdicts, r#"{"X1": "discrete"}"#).unwrap();
    let out = devissage(&[
        path_str(&config("amalgam-two-points.json")),
        "--discreteness",
        path_str(&verdicts),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn discreteness_verdicts_are_folded_per_method() {
    let out = devissage(&[
        path_str(&config("amalgam-two-points.json")),
        "--discreteness",
        path_str(&config("amalgam-two-points.verdicts.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["discreteness"]["direct"]["overall"], "unknown");
    assert_eq!(r["discreteness"]["recursive"]["overall"], "unknown");
}

#[test]
fn methods_agree_on_two_point_config() {
    let out = devissage(&[path_str(&config("amalgam-two-points.json")), "--verify", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let a = r["assemblies"].as_array().unwrap();
    assert_eq!(a.len(), 2);
    assert_eq!(a[0]["fingerprint"], a[1]["fingerprint"]);
}

#[test]
fn report_file_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("r{i}.json"));
            let out = devissage(&[
                path_str(&config("cycle-3.json")),
                "--verify",
                "--max-degree",
                "3",
                "--report",
                path_str(&path),
            ]);
            assert_eq!(out.status.code(), Some(0));
            assert!(out.stdout.is_empty());
            std::fs::read(&path).unwrap()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn timings_appear_only_on_request() {
    let plain = devissage(&[path_str(&config("nodal-cubic.json"))]);
    assert!(report(&plain).get("timings").is_none());
    let timed = devissage(&[path_str(&config("nodal-cubic.json")), "--timings"]);
    assert!(report(&timed)["timings"]["assemble-direct"].is_number());
}

#[test]
fn every_example_config_round_trips() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")).unwrap() {
        let path = entry.unwrap().path();
        if path.to_string_lossy().ends_with(".verdicts.json") {
            continue;
        }
        let c = parse_config(&path).unwrap();
        assert_eq!(parse_config_str(&emit_config(&c)).unwrap(), c, "{}", path.display());
    }
}

#[test]
fn failed_rows_map_to_mismatch_code() {
    let c = parse_config(&config("nodal-cubic.json")).unwrap();
    let mut flags = Flags::for_config(config("nodal-cubic.json"));
    flags.verify = true;
    flags.max_degree = 2;
    let mut r = run(&c, &flags).unwrap();
    assert!(check(&r).is_ok());
    let table = r.equivalence.as_mut().unwrap();
    table.rows[1].covers += 1;
    table.rows[1].pass = false;
    let err = check(&r).unwrap_err();
    assert!(matches!(err, CliError::Mismatch(_)));
    assert_eq!(err.exit_code(), 3);
}
