use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CONFIG: &str = r#"{"step_budget": 256, "max_program_length": 10,
  "input_universe": ["", "0", "1", "00", "01", "10", "11"]}"#;

fn infodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infodist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write_config(dir: &Path) -> String {
    let path = dir.join("machine.json");
    fs::write(&path, CONFIG).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn every_report_has_a_schema_version() {
    let v = json_of(&infodist(&["label", "bound", "--n", "3", "--f", "4"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "label bound");
}

#[test]
fn codec_encode_worked_example() {
    let v = json_of(&infodist(&[
        "codec", "encode", "--k", "5", "--n", "4", "--p", "101", "--m", "3", "--format", "paper",
    ]));
    assert_eq!(v["bits"], "10100011");
    assert_eq!(v["length"], 8);
}

#[test]
fn codec_fixed_decode_inverts_encode() {
    let enc = json_of(&infodist(&[
        "codec", "encode", "--k", "6", "--n", "6", "--p", "01100", "--m", "5",
    ]));
    let bits = enc["bits"].as_str().unwrap();
    let dec = json_of(&infodist(&[
        "codec",
        "decode",
        "--bits",
        bits,
        "--n",
        "6",
        "--programs",
        "00,01100",
    ]));
    assert_eq!(dec["decoded"]["label"]["p"], "01100");
    assert_eq!(dec["decoded"]["label"]["m"], 5);
    let hex = enc["hex"].as_str().unwrap();
    let len = enc["length"].to_string();
    let dec2 = json_of(&infodist(&[
        "codec",
        "decode",
        "--hex",
        hex,
        "--bit-len",
        &len,
        "--n",
        "6",
        "--programs",
        "00,01100",
    ]));
    assert_eq!(dec2["decoded"], dec["decoded"]);
}

#[test]
fn codec_roundtrip_passes_for_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    for format in ["fixed", "paper"] {
        let v = json_of(&infodist(&[
            "--config",
            &cfg,
            "codec",
            "roundtrip",
            "--k-max",
            "6",
            "--n-max",
            "5",
            "--format",
            format,
        ]));
        assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
        assert!(v["checked"].as_u64().unwrap() > 0);
    }
}

#[test]
fn missing_config_is_a_usage_error() {
    let out = infodist(&["machine", "f", "--k-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--config"));
}

#[test]
fn bad_flag_is_a_usage_error() {
    let out = infodist(&["label", "bound", "--n", "x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn machine_f_is_strictly_increasing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let out = infodist(&[
        "--config", &cfg, "--output", "csv", "machine", "f", "--k-max", "10",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let f: Vec<u64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(f.len(), 11);
    assert!(f[2..].windows(2).all(|w| w[0] < w[1]), "{f:?}");
}

#[test]
fn machine_k_of_a_pair() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let v = json_of(&infodist(&[
        "--config", &cfg, "machine", "k", "--member", "0", "--member", "0", "--x", "0",
    ]));
    assert_eq!(v["k"], 7);
}

#[test]
fn machine_check_reports_no_violations() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let v = json_of(&infodist(&[
        "--config",
        &cfg,
        "machine",
        "check",
        "--max-len",
        "1",
        "--skip-incomplete",
    ]));
    assert_eq!(v["lower_bound_violations"].as_array().unwrap().len(), 0);
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn label_run_on_two_sets_sharing_an_element() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    fs::write(&path, r#"{"n": 2, "multisets": [["0", "1"], ["1", "11"]]}"#).unwrap();
    let v = json_of(&infodist(&[
        "label",
        "run",
        "--instance",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["labels"], serde_json::json!([0, 1]));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "--seed", "7", "label", "run", "--random", "--n", "3", "--f", "4", "--sets", "40",
    ];
    let a = infodist(&args);
    let b = infodist(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = infodist(&[
        "--seed", "8", "label", "run", "--random", "--n", "3", "--f", "4", "--sets", "40",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn overlap_xor_recovers_both_sides() {
    let v = json_of(&infodist(&["overlap", "xor", "--x", "0101", "--y", "0011"]));
    assert_eq!(v["p"], "0110");
    assert_eq!(v["recovers_x"], true);
    assert_eq!(v["recovers_y"], true);
    let bad = infodist(&["overlap", "xor", "--x", "01", "--y", "011"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn ncd_matrix_is_symmetric() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    let texts = [
        "the cat sat on the mat ",
        "the cat sat on the hat ",
        "zebra quartz jump vex ",
    ];
    for (i, t) in texts.iter().enumerate() {
        fs::write(corpus.join(format!("doc{i}")), t.repeat(40)).unwrap();
    }
    let v = json_of(&infodist(&[
        "ncd",
        "matrix",
        "--corpus",
        corpus.to_str().unwrap(),
    ]));
    let m = &v["distances"]["values"];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
    assert!(m[0][1].as_f64().unwrap() < m[0][2].as_f64().unwrap());
    let phylip = infodist(&[
        "ncd",
        "matrix",
        "--corpus",
        corpus.to_str().unwrap(),
        "--phylip",
    ]);
    assert!(String::from_utf8(phylip.stdout).unwrap().starts_with("3\n"));
}
