use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn carlitz(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_carlitz"));
    cmd.args(args).env_remove("CARLITZ_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn zeta_prints_small_values() {
    let out = carlitz(&["zeta", "--q", "2", "--jmax", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["cache"]["status"], "disabled");
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["Z"], "1 + X");
    assert_eq!(rows[1]["Z(1)"], "0");
}

#[test]
fn zeta_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = carlitz(&["zeta", "--q", "3", "--jmax", "4", "--csv", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["j", "n", "S_n(j)"]);
    assert!(rd.records().count() > 5);
}

#[test]
fn theta_genus_zero() {
    let out = carlitz(&["theta", "--q", "2", "--p", "t^2+t+1"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["inputs"]["P"], "t^2+t+1");
    let chars = r["results"]["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 3);
    for c in chars.iter().filter(|c| c["type"] != 3) {
        assert_eq!(c["theta"], "1 - X");
        assert_eq!(c["stabilized"], true);
    }
}

#[test]
fn reducible_conductor_is_a_validation_error() {
    let out = carlitz(&["curve", "--q", "2", "--p", "t^2+1"], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("t+1"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(carlitz(&["zeta", "--q", "6"], None).status.code(), Some(2));
    assert_eq!(carlitz(&["zeta"], None).status.code(), Some(2));
    assert_eq!(carlitz(&["theta", "--q", "3", "--p", "t^"], None).status.code(), Some(2));
    assert_eq!(carlitz(&["verify", "--q", "3", "--p", "t", "--which", "nope"], None).status.code(), Some(2));
}

#[test]
fn ceiling_exits_three() {
    let out = carlitz(&["verify", "--q", "3", "--p", "t^2+1", "--which", "euler", "--ceiling", "10"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "skipped");
    let out = carlitz(&["curve", "--q", "2", "--p", "t^4+t+1", "--budget", "100"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn vadic_precondition_is_skipped() {
    let out = carlitz(&["verify", "--q", "3", "--p", "t", "--which", "vadic", "--j", "3", "--i", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"], "skipped");
    let detail = r["results"]["checks"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("congruence precondition"), "{detail}");
}

#[test]
fn result_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--q", "3", "--p", "t", "--which", "all", "--jmax", "4", "--samples", "2"];
    let first = json(&carlitz(&args, Some(dir.path())));
    let second = json(&carlitz(&args, Some(dir.path())));
    assert_eq!(first["cache"]["status"], "miss");
    assert_eq!(second["cache"]["status"], "hit");
    assert_eq!(first["cache"]["key"], second["cache"]["key"]);
    assert_eq!(first["results"], second["results"]);
    assert_eq!(first["verdict"], "pass");
    assert!(first["cache"]["irreducible_misses"].as_u64().unwrap() > 0);

    // the irreducible tables are reused by a run with different inputs
    let third = json(&carlitz(&["verify", "--q", "3", "--p", "t", "--which", "euler"], Some(dir.path())));
    assert_eq!(third["cache"]["status"], "miss");
    assert!(third["cache"]["irreducible_hits"].as_u64().unwrap() > 0);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = carlitz(&["zeta", "--q", "5", "--jmax", "2", "--out", path.to_str().unwrap()], None);
    let written: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(written, json(&out));
}

#[test]
fn curves_match_golden_files() {
    for (q, p, slug) in [("3", "t", "3_t"), ("2", "t^2+t+1", "2_t_2_t_1"), ("2", "t^3+t+1", "2_t_3_t_1"), ("2", "t^4+t+1", "2_t_4_t_1")] {
        let golden = golden_dir();
        assert!(golden.join(slug).join("curve.json").exists(), "missing golden file for {slug}");
        let out = carlitz(&["curve", "--q", q, "--p", p, "--golden", golden.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{p}");
        let r = json(&out);
        assert_eq!(r["results"]["golden"]["status"], "match", "{p}");
        assert_eq!(r["results"]["paths_agree"], true);
        assert_eq!(r["results"]["fitting"]["verdict"], "pass");
    }
}

#[test]
fn golden_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let slot = dir.path().join("3_t");
    std::fs::create_dir_all(&slot).unwrap();
    std::fs::write(slot.join("curve.json"), "{\"h\": 2}").unwrap();
    let out = carlitz(&["curve", "--q", "3", "--p", "t", "--golden", dir.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["golden"]["status"], "mismatch");
}
