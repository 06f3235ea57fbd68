//! End-to-end runs of the `spatialcg` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spatialcg"));
    c.env_remove("SPATIALCG_THREADS");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn embed(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["embed"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = run(dir.path(), &all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn moment_k8_verifies_with_main_identity_21() {
    let dir = TempDir::new().unwrap();
    let file = embed(&dir, "m8.json", &["--kind", "moment", "--n", "8"]);
    let e: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(e["vertices"].as_array().unwrap().len(), 8);
    let o = run(dir.path(), &["verify", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["pass"], true);
    let main = r["identities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["identity_id"] == "main-identity")
        .unwrap();
    assert_eq!((main["lhs"].as_str(), main["rhs"].as_str()), (Some("21"), Some("21")));
    assert!(!dir.path().join("spatialcg-witness.json").exists());
}

#[test]
fn embed_is_reproducible_and_prints_certificate() {
    let dir = TempDir::new().unwrap();
    let a = run(dir.path(), &["embed", "--kind", "random", "--n", "7", "--seed", "1"]);
    let b = run(dir.path(), &["embed", "--kind", "random", "--n", "7", "--seed", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("valid embedding: 7 vertices"));
    let c = run(dir.path(), &["embed", "--kind", "random", "--n", "7", "--seed", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn tiny_range_is_sampling_exhaustion() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["embed", "--kind", "random", "--n", "9", "--range", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 4, \"vertices\": [[0,0,0]]").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", bad])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "missing.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["frobnicate"])), 2);
    let m8 = embed(&dir, "m8.json", &["--kind", "moment", "--n", "8"]);
    let m8 = m8.to_str().unwrap();
    assert_eq!(
        code(&run(dir.path(), &["verify", m8, "--identities", "no-such-check"])),
        2
    );
    assert_eq!(
        code(&run(dir.path(), &["verify", m8, "--identities", "k6-identity"])),
        2
    );
    assert_eq!(code(&run(dir.path(), &["invariant", m8, "--key", "1-2-9"])), 2);
    assert_eq!(
        code(&run(dir.path(), &["embed", "--kind", "k331-random", "--n", "8"])),
        2
    );
}

#[test]
fn collinear_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("flat.json");
    std::fs::write(&f, r#"{"n": 3, "vertices": [[0,0,0],[1,1,1],[2,2,2]]}"#).unwrap();
    let o = run(dir.path(), &["verify", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("collinear"));
}

#[test]
fn large_n_needs_override() {
    let dir = TempDir::new().unwrap();
    let f = embed(&dir, "m11.json", &["--kind", "moment", "--n", "11"]);
    let o = run(dir.path(), &["census", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
}

#[test]
fn k331_runs_only_its_graph_specific_identity() {
    let dir = TempDir::new().unwrap();
    let f = embed(&dir, "k.json", &["--kind", "k331-moment"]);
    let o = run(dir.path(), &["verify", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let ids: Vec<&str> = r["identities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["identity_id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["k331-identity"]);
    assert_eq!(r["graph"], "k331");
    let f = embed(&dir, "kr.json", &["--kind", "k331-random", "--seed", "5"]);
    assert_eq!(code(&run(dir.path(), &["verify", f.to_str().unwrap()])), 0);
}

#[test]
fn census_counts() {
    let dir = TempDir::new().unwrap();
    let m6 = embed(&dir, "m6.json", &["--kind", "moment", "--n", "6"]);
    let r = json(&run(dir.path(), &["census", m6.to_str().unwrap()]));
    assert_eq!(r["hopf_count"], 1);
    let m8 = embed(&dir, "m8.json", &["--kind", "moment", "--n", "8"]);
    let r = json(&run(dir.path(), &["census", m8.to_str().unwrap()]));
    assert_eq!(
        (r["hopf_count"].as_u64(), r["positive_a2_hamiltonian"].as_u64()),
        (Some(28), Some(21))
    );
    assert_eq!(r["positive_a2_witnesses"].as_array().unwrap().len(), 21);
    let r9 = embed(&dir, "r9.json", &["--kind", "random", "--n", "9", "--seed", "11"]);
    let o = run(dir.path(), &["census", r9.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["hopf_count"].as_u64().unwrap() >= 84);
    let csv = run(dir.path(), &["census", m8.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "kind,value,count\na2,0,2499\na2,1,21\nlk,-1,28\nlk,0,252\n"
    );
}

#[test]
fn rn_table_rows() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["rn-table", "--n-max", "9"]);
    let rows = json(&o)["rows"].clone();
    let values: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["r_n"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "2", "12"]);
    let o = run(dir.path(), &["rn-table", "--n-max", "15", "--format", "csv"]);
    assert!(String::from_utf8(o.stdout).unwrap().ends_with("15,10015889\n"));
    let o = run(dir.path(), &["rn-table", "--n-max", "7", "--format", "csv"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "n,r_n\n7,1\n");
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let f = embed(&dir, "p7.json", &["--kind", "polyline", "--n", "7", "--seed", "3"]);
    let f = f.to_str().unwrap();
    let one = run(dir.path(), &["verify", f, "--threads", "1"]);
    let four = run(dir.path(), &["verify", f, "--threads", "4"]);
    let env = bin()
        .current_dir(dir.path())
        .env("SPATIALCG_THREADS", "3")
        .args(["verify", f])
        .output()
        .unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, env.stdout);
    let stamped = json(&run(dir.path(), &["verify", f, "--timestamps"]));
    assert!(stamped.get("generated_unix").is_some());
    assert!(json(&one).get("generated_unix").is_none());
}

#[test]
fn invariant_lookup_matches_census() {
    let dir = TempDir::new().unwrap();
    let m7 = embed(&dir, "m7.json", &["--kind", "moment", "--n", "7"]);
    let m7 = m7.to_str().unwrap();
    let census = json(&run(dir.path(), &["census", m7]));
    let trefoil = census["positive_a2_witnesses"][0]["subject"]
        .as_str()
        .unwrap()
        .to_string();
    let o = run(dir.path(), &["invariant", m7, "--key", &trefoil]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!((r["value"].as_i64(), r["conway"].as_str()), (Some(1), Some("1 + z^2")));
    let hopf = census["hopf_witnesses"][0]["subject"].as_str().unwrap().to_string();
    let r = json(&run(dir.path(), &["invariant", m7, "--key", &hopf]));
    assert_eq!(r["kind"], "link");
    assert_eq!(r["value"].as_i64().unwrap().abs(), 1);
    let frames = r["frames"].as_array().unwrap();
    assert_eq!(frames.len(), 2);
    assert_eq!(frames[0]["value"], frames[1]["value"]);
}
