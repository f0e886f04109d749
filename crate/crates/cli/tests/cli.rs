use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sidon-lattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--json`; returns the exit code and the parsed envelope.
fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    assert_eq!(v["schema"], "sidon-lattice/1");
    (out.status.code().unwrap(), v)
}

fn save(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn construct_singer_and_decode_walkthrough() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = run_json(&["construct", "singer", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let p = &v["payload"]["verification"]["params"];
    assert_eq!((p["v"].as_u64(), p["k"].as_u64(), p["lambda"].as_u64()), (Some(13), Some(4), Some(1)));
    assert_eq!(v["payload"]["set"]["elements"], serde_json::json!([0, 1, 3, 9]));

    // the whole envelope is accepted wherever a code or a set is expected
    let file = save(dir.path(), "singer13.json", &v);
    let (code, d) = run_json(&["decode", "--code", &file, "--word", "4,4,12"]);
    assert_eq!(code, 0);
    assert_eq!(d["payload"]["codeword"], serde_json::json!([4, 3, 0]));
    assert_eq!(d["payload"]["error"], serde_json::json!([0, 1, -1]));
    assert_eq!(d["payload"]["syndrome"], 7);
    let (code, d2) = run_json(&["code", "decode", "--code", &file, "--word", "4,4,12"]);
    assert_eq!(code, 0);
    assert_eq!(d2["payload"], d["payload"]);

    let (code, r) = run_json(&["verify", "dset", "--set", &file]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["params"]["lambda"], 1);
    let (code, r) = run_json(&["verify", "perfect", "--code", &file, "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["perfect"], true);

    // the bare code artifact works too
    let bare = save(dir.path(), "bare.json", &v["payload"]["code"]);
    assert_eq!(run_json(&["verify", "perfect", "--code", &bare, "--r", "1"]).0, 0);
    assert_eq!(run_json(&["verify", "perfect", "--code", &bare, "--r", "2"]).0, 5);
}

#[test]
fn construct_errors_and_families() {
    let (code, v) = run_json(&["construct", "singer", "--q", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["code"], "NotPrimePower");

    let (code, v) = run_json(&["construct", "perfect-a2", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["verification"]["det"], 19);
    assert_eq!(v["payload"]["verification"]["perfect"], true);

    let (code, v) = run_json(&["construct", "tiling-s2", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["verification"]["quotient_cyclic"], false);
    assert_eq!(v["payload"]["code"]["quotient"], serde_json::json!([2, 6]));

    let (code, v) = run_json(&["construct", "bose-chowla", "--q", "3", "--h", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["set"]["group"], serde_json::json!([8]));
    assert_eq!(v["payload"]["verification"]["bh"], true);

    let (code, v) = run_json(&["construct", "bose-chowla", "--q", "2", "--h", "4"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["code"].is_null());
    assert_eq!(v["payload"]["code_error"]["code"], "NotGenerating");
}

#[test]
fn search_exit_codes() {
    let (code, v) = run_json(&["search", "planar", "--n", "6"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "not-found");
    assert_eq!(v["payload"]["report"]["exhaustive"], true);

    let (code, v) = run_json(&["search", "planar", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["set"]["params"]["v"], 21);

    let (code, v) = run_json(&["search", "planar", "--n", "6", "--max-nodes", "10"]);
    assert_eq!(code, 4);
    assert_eq!(v["payload"]["result"], "budget-exhausted");

    let (code, v) = run_json(&["search", "min-group", "--h", "2", "--k", "4", "--max-v", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["report"]["phi"], 13);

    let (code, _) = run_json(&["search", "bh", "--group", "2,2,2", "--h", "2", "--k", "2"]);
    assert_eq!(code, 3);
}

#[test]
fn search_output_feeds_verify_bh() {
    let dir = tempfile::tempdir().unwrap();
    let (_, v) = run_json(&["search", "min-group", "--h", "3", "--k", "3", "--max-v", "30"]);
    let file = save(dir.path(), "found.json", &v);
    let (code, r) = run_json(&["verify", "bh", "--set", &file]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["h"], 3);
    let (code, _) = run_json(&["verify", "bh", "--set", &file, "--h", "4"]);
    assert_eq!(code, 5);
}

#[test]
fn verify_cover_profile_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = run_json(&["code", "build", "--group", "4", "--elements", "0,1,2"]);
    assert_eq!(code, 0);
    let file = save(dir.path(), "z4.json", &v);
    let (code, r) = run_json(&["verify", "cover", "--code", &file, "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!((r["payload"]["r"].as_u64(), r["payload"]["i"].as_u64(), r["payload"]["j"].as_u64()), (Some(1), Some(1), Some(2)));

    let (code, v) = run_json(&["code", "build", "--group", "7", "--elements", "0,1,2"]);
    assert_eq!(code, 0);
    let file = save(dir.path(), "z7.json", &v);
    let (code, r) = run_json(&["verify", "cover", "--code", &file, "--r", "1"]);
    assert_eq!(code, 5);
    assert_eq!(r["payload"]["j"], "nonuniform");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"v\": 13,").unwrap();
    let (code, v) = run_json(&["verify", "perfect", "--code", bad.to_str().unwrap(), "--r", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "ParseError");
    let (code, _) = run_json(&["verify", "dset", "--set", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
}

#[test]
fn tiling_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (_, v) = run_json(&["construct", "tiling-s2", "--r", "2"]);
    let file = save(dir.path(), "t.json", &v);
    let (code, r) = run_json(&["verify", "tiling", "--code", &file, "--rplus", "3", "--rminus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["shape_size"], 27);
    let (code, _) = run_json(&["verify", "tiling", "--code", &file, "--rplus", "2", "--rminus", "2"]);
    assert_eq!(code, 5);
    let (code, _) = run_json(&["verify", "packing", "--code", &file, "--rplus", "2", "--rminus", "2"]);
    assert_eq!(code, 0);
    // non-cyclic quotient: decoding happens over Z^n
    let (code, d) = run_json(&["decode", "--code", &file, "--word", "5,1", "--rplus", "3", "--rminus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(d["payload"]["outcome"], "corrected");
}

#[test]
fn simulate_requires_seed_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let (_, v) = run_json(&["construct", "singer", "--q", "3"]);
    let file = save(dir.path(), "c.json", &v);
    let (code, v) = run_json(&["simulate", "--code", &file, "--trials", "100"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "MissingSeed");

    let (code, a) = run_json(&["simulate", "--code", &file, "--trials", "3000", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(a["payload"]["corrected"], 3000);
    assert_eq!(a["payload"]["config"]["seed"], 11);
    let (_, b) = run_json(&["simulate", "--code", &file, "--trials", "3000", "--seed", "11", "--threads", "4"]);
    assert_eq!(a["payload"]["corrected"], b["payload"]["corrected"]);

    let (_, o) = run_json(&["simulate", "--code", &file, "--trials", "3000", "--seed", "11", "--overload", "1"]);
    assert_eq!(o["payload"]["detected"], 0);
    let (_, o2) = run_json(&["simulate", "--code", &file, "--trials", "3000", "--seed", "11", "--overload", "1", "--threads", "3"]);
    assert_eq!(o["payload"]["miscorrected"], o2["payload"]["miscorrected"]);
}

#[test]
fn bounds_and_shapes() {
    let (code, v) = run_json(&["bounds", "--h", "2", "--k", "4"]);
    assert_eq!(code, 0);
    let b = &v["payload"]["bounds"][0];
    assert_eq!(b["formula_id"], "phi_k");
    assert_eq!(b["lower"], "9");
    let (code, v) = run_json(&["bounds", "--h", "2", "--k", "4", "--v", "13"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["witness"]["all_satisfied"], true);
    assert_eq!(run_json(&["bounds", "--h", "2"]).0, 2);

    let (code, v) = run_json(&["shape", "size", "--n", "3", "--rplus", "2", "--rminus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["size"], 55);
    let (code, v) = run_json(&["shape", "points", "--n", "3", "--rplus", "2", "--rminus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["points"].as_array().unwrap().len(), 55);
    let (_, v) = run_json(&["shape", "points", "--n", "2", "--limit", "4"]);
    assert_eq!(v["payload"]["emitted"], 4);
    assert_eq!(v["payload"]["truncated"], true);

    let out = run(&["shape", "points", "--n", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 7);
}

#[test]
fn experiments() {
    let (code, v) = run_json(&["experiment", "ppc", "--n-max", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 5);
    let (code, v) = run_json(&["experiment", "cyclicity", "--q-max", "4"]);
    assert_eq!(code, 0);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["label"] == "tiling-s2-1" && r["in_scope"] == false));
}

#[test]
fn json_mode_is_pure_json_and_text_mode_is_tables() {
    let out = run(&["--json", "experiment", "ppc", "--n-max", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_ok());
    let out = run(&["experiment", "ppc", "--n-max", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().any(|c| c == "prime_power")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["construct", "singer"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let (code, _) = run_json(&["code", "build", "--group", "0", "--elements", "0"]);
    assert_eq!(code, 2);
}
