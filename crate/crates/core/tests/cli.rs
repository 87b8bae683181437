use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use trisweep::cli::read_manifest;
use trisweep::constructions::{convex_polygon, nested_triangles, square, twisted_triangulation};
use trisweep::PointConfiguration;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_trisweep"));
    c.env_remove("TRISWEEP_STORE");
    c
}

fn write_config(dir: &Path, name: &str, c: &PointConfiguration) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(&c.to_json()).unwrap()).unwrap();
    p
}

fn run(dir: &Path, args: &[&str]) -> i32 {
    let out = bin().current_dir(dir).args(args).output().unwrap();
    out.status.code().unwrap()
}

#[test]
fn oracle_on_square_finds_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "square.json", &square());
    let code = run(dir.path(), &["--out", "o", "enumerate", "--config", cfg.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0);
    let lines = fs::read_to_string(dir.path().join("o/triangulations.jsonl")).unwrap();
    let tris = lines.lines().filter(|l| l.contains("\"cells\"")).count();
    assert_eq!(tris, 2, "{lines}");
}

#[test]
fn exhausted_budget_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "hex.json", &convex_polygon(6));
    let code = run(dir.path(), &["--out", "o", "enumerate", "--config", cfg.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(code, 2);
    let m = read_manifest(dir.path().join("o/manifest.json")).unwrap();
    assert_eq!(m.exit_code, 2);
}

#[test]
fn invalid_lift_spec_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sq.json", &square());
    let code = run(
        dir.path(),
        &["--out", "o", "lift", "--config", cfg.to_str().unwrap(), "--epsilons", "1/2,1/2,1/4,1/8"],
    );
    assert_eq!(code, 1);
}

#[test]
fn twisted_triangulation_is_reported_non_regular() {
    let dir = tempfile::tempdir().unwrap();
    let c = nested_triangles();
    let cfg = write_config(dir.path(), "nt.json", &c);
    let t = dir.path().join("t.json");
    fs::write(&t, serde_json::to_string(&twisted_triangulation().to_json(Some(&c))).unwrap()).unwrap();
    let code = run(
        dir.path(),
        &["--out", "o", "regular", "--config", cfg.to_str().unwrap(), "--triangulation", t.to_str().unwrap()],
    );
    assert_eq!(code, 0);
    let r = fs::read_to_string(dir.path().join("o/regularity.json")).unwrap();
    assert!(r.contains("\"regular\": false"), "{r}");
}

#[test]
fn verify_bounds_cyclic_passes() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(dir.path(), &["--out", "o", "verify-bounds", "--construction", "cyclic", "--d", "3", "--n", "6"]);
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("o/bounds.csv")).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap(), "cyclic,3,6,1,6,6,false,PASS");
}

#[test]
fn manifest_replay_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(dir.path(), &["--out", "o", "--seed", "7", "sweep", "--split-hexagon"]);
    assert_eq!(code, 0);
    let m = read_manifest(dir.path().join("o/manifest.json")).unwrap();
    assert!(m.outputs.contains_key("sweep.jsonl"));
    let first = fs::read(dir.path().join("o/sweep.jsonl")).unwrap();
    fs::rename(dir.path().join("o"), dir.path().join("first")).unwrap();
    let code = bin().current_dir(dir.path()).args(&m.argv[1..]).output().unwrap().status.code().unwrap();
    assert_eq!(code, m.exit_code);
    let again = read_manifest(dir.path().join("o/manifest.json")).unwrap();
    assert_eq!(again.outputs, m.outputs);
    assert_eq!(fs::read(dir.path().join("o/sweep.jsonl")).unwrap(), first);
}

#[test]
fn outputs_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "nt.json", &nested_triangles());
    let cfg = cfg.to_str().unwrap();
    assert_eq!(run(dir.path(), &["--out", "a", "--jobs", "1", "enumerate", "--config", cfg]), 0);
    assert_eq!(run(dir.path(), &["--out", "b", "--jobs", "4", "enumerate", "--config", cfg]), 0);
    let a = fs::read(dir.path().join("a/triangulations.jsonl")).unwrap();
    let b = fs::read(dir.path().join("b/triangulations.jsonl")).unwrap();
    assert_eq!(a, b);

    assert_eq!(run(dir.path(), &["--out", "c", "--jobs", "1", "census", "--n", "6", "--d", "4", "--budget", "8"]), 0);
    assert_eq!(run(dir.path(), &["--out", "d", "--jobs", "4", "census", "--n", "6", "--d", "4", "--budget", "8"]), 0);
    let c = fs::read(dir.path().join("c/census.json")).unwrap();
    let d = fs::read(dir.path().join("d/census.json")).unwrap();
    assert_eq!(c, d);
}

#[test]
fn census_store_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("env.store");
    let out = bin()
        .current_dir(dir.path())
        .env("TRISWEEP_STORE", &store)
        .args(["--out", "o", "census", "--n", "6", "--d", "4", "--budget", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = trisweep::census::Store::open(&store).unwrap();
    assert!(!s.is_empty());
    assert!(!dir.path().join("o/types.store").exists());
}

#[test]
fn exhaustive_census_with_small_budget_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(dir.path(), &["--out", "o", "census", "--n", "6", "--d", "4", "--exhaustive", "--budget", "5"]);
    assert_eq!(code, 2);
}
