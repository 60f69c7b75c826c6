use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const TREFOIL: &str = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";
const HOPF: &str = "PD[X[1,4,2,3],X[3,2,4,1]]";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_odd-szabo"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("odd-szabo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_json(args: &[&str], name: &str) -> (Output, Value) {
    let path = tmp(name);
    let out = bin().args(args).arg("--json").arg(&path).output().unwrap();
    let v = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    (out, v)
}

#[test]
fn unknot_table() {
    let (out, v) = run_json(&["homology", "--pd", "PD[]"], "unknot.json");
    assert!(out.status.success());
    let rows = v["table"].as_array().unwrap();
    let cells: Vec<(i64, i64, u64)> = rows
        .iter()
        .map(|r| (r["h"].as_i64().unwrap(), r["q"].as_i64().unwrap(), r["free"].as_u64().unwrap()))
        .collect();
    assert_eq!(cells, vec![(0, -1, 1), (0, 1, 1)]);
    assert_eq!(v["jones"], "q^-1 + q");
}

#[test]
fn kinds_give_the_same_table() {
    let (_, x) = run_json(&["homology", "--pd", TREFOIL, "--kind", "x"], "x.json");
    let (_, y) = run_json(&["homology", "--pd", TREFOIL, "--kind", "y"], "y.json");
    assert_eq!(x["table"], y["table"]);
    assert_eq!(x["table"].as_array().unwrap().len(), 6);
}

#[test]
fn mod_two_coefficients() {
    let (out, v) = run_json(&["homology", "--pd", HOPF, "--coeffs", "z2"], "hopf2.json");
    assert!(out.status.success());
    assert_eq!(v["coeffs"], "Z2");
    let total: u64 = v["table"].as_array().unwrap().iter().map(|r| r["free"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);
}

#[test]
fn unknot_pages_are_stable_at_once() {
    let (out, v) = run_json(&["spectral", "--pd", "PD[]", "--r-max", "3"], "unknot_pages.json");
    assert!(out.status.success());
    for s in v["stable_from"].as_array().unwrap() {
        assert_eq!(s["r"], 0);
    }
}

fn pages_from_two(v: &Value) -> Vec<Value> {
    v["pages"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["page"] == "inf" || r["page"].as_str().unwrap().parse::<usize>().unwrap() >= 2)
        .cloned()
        .collect()
}

#[test]
fn orientation_seed_keeps_later_pages() {
    let (_, base) = run_json(&["spectral", "--pd", TREFOIL, "--r-max", "4"], "base.json");
    assert!(base["convergence"].as_array().unwrap().iter().all(|r| r["agree"] == true));
    for seed in ["1", "2", "3"] {
        let (_, v) = run_json(&["spectral", "--pd", TREFOIL, "--r-max", "4", "--orient-seed", seed], "seed.json");
        assert_eq!(pages_from_two(&base), pages_from_two(&v), "seed {seed}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = tmp("det_a.json");
    let b = tmp("det_b.json");
    for p in [&a, &b] {
        let st = bin().args(["spectral", "--pd", HOPF, "--orient-seed", "7", "--json"]).arg(p).output().unwrap().status;
        assert!(st.success());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn verify_passes_and_catches_a_fault() {
    let (out, v) = run_json(&["verify", "--pd", TREFOIL], "verify.json");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(v["ok"], true);
    let out = bin().args(["verify", "--pd", HOPF, "--inject-fault"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("d_squared"));
}

#[test]
fn exit_codes() {
    let bad = bin().args(["homology", "--pd", "PD[X[1,2,3]]"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let torus = bin().args(["homology", "--pd", "PD[X[1,2,3,4],X[2,3,4,1]]"]).output().unwrap();
    assert_eq!(torus.status.code(), Some(2));
    let missing = bin().args(["jones"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let flag = bin().args(["jones", "--pd", "PD[]", "--kind", "z"]).output().unwrap();
    assert_eq!(flag.status.code(), Some(2));
}

#[test]
fn reidemeister_pair_through_the_library() {
    let (name, a, b) = odd_szabo::fixtures::reidemeister_pairs().remove(3);
    let checks = odd_szabo_cli::verify::pair_checks(&a, &b, 4);
    assert!(checks.iter().all(|c| c.ok), "{name}");
}
