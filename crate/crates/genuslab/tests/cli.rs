use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn workspace_root() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genuslab"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], 1);
    (out.status.code().unwrap(), v)
}

#[test]
fn pic_of_minus_five_has_order_two() {
    let (code, v) = json(&["pic", "--field", "d=-5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], "2");
}

#[test]
fn ramified_milnor_family_exits_with_obstruction() {
    let (code, v) = json(&["milnor", "reduce", "--a", "-1", "--b", "-1", "--c", "t", "--field", "Q(t)"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "obstruction");
    assert_eq!(v["result"]["kind"], "RamifiedAtPlace");
}

#[test]
fn milnor_reduction_logs_verified_steps() {
    let (code, v) = json(&["milnor", "reduce", "--a", "-1", "--b", "2", "--c", "t*(t-3)", "--field", "Q(t)"]);
    assert_eq!(code, 0);
    let steps = v["result"]["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        assert_eq!(s["certificate"]["verified"], true);
        for key in ["place", "phase", "pi_v"] {
            assert!(s[key].is_string());
        }
    }
    assert!(v["assumptions"]["condition_T_used_at"].is_array());
}

#[test]
fn ramify_minus_one_minus_one() {
    let (code, v) = json(&["brauer", "ramify", "--a", "-1", "--b", "-1", "--field", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ramified"], serde_json::json!(["p:2", "real"]));
}

#[test]
fn unit_representative_carries_norm_certificate() {
    let (code, v) = json(&["brauer", "reduce", "--L", "d=-1", "--c", "45/13", "--exclude", "2"]);
    assert_eq!(code, 0);
    assert!(v["result"]["norm_certificate"]["d"].is_string());
    assert!(v["result"]["norm_certificate"]["pi_w"].is_array());
    assert_eq!(v["certificates"][0]["verified"], true);
}

#[test]
fn descent_commands() {
    let (code, v) = json(&["descent", "check", "--R", "Z[1/2]", "--d", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_hold"], true);
    let (code, v) = json(&["descent", "trivialize", "--d", "-1", "--S", "2", "--xi", "[[i]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificates"][0]["verified"], true);
    let (code, _) = json(&["descent", "condition-t", "--a", "-5", "--b", "-1", "--L", "-5"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_exit_one_with_position() {
    let (code, v) = json(&["brauer", "ramify", "--a", "1 + $", "--b", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["kind"], "ParseError");
    assert!(v["result"]["message"].as_str().unwrap().contains("position 4"));
}

#[test]
fn classset_and_cech_flags() {
    let (code, v) = json(&["classset", "gln", "--ring", "Zs[]", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], "1");
    let (code, v) = json(&["cech", "push", "--cover", "2,3", "--g12", "2", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["commutes"], true);
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = json(&["torus", "--d", "-1", "--S", "2"]);
    assert!(v.get("timing_s").is_none());
    let (_, v) = json(&["--timing", "torus", "--d", "-1", "--S", "2"]);
    assert!(v["timing_s"].is_number());
}

#[test]
fn fixtures_replay_byte_identically() {
    let dir = workspace_root().join("fixtures");
    let mut n = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let rel = format!("fixtures/{name}.json");
        for verb in ["push", "verify"] {
            let out = run(&["--json", "cech", verb, "--fixture", &rel]);
            let expected = fs::read(dir.join(format!("expected/{name}.{verb}.json"))).unwrap();
            assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&expected), "{name} {verb}");
            n += 1;
        }
    }
    assert!(n >= 12);
}
