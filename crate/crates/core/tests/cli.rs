//! End-to-end runs of the `surgeon` binary. JSON outputs are pinned by the
//! files in `tests/golden`; set `SURGEON_UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn surgeon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surgeon"))
        .args(args)
        .current_dir(manifest_dir())
        .env_remove("SURGEON_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let mut full = vec!["--json", "--no-cache"];
    full.extend_from_slice(args);
    let o = surgeon(&full);
    assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    let path: PathBuf = manifest_dir().join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("SURGEON_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(stdout(&o), want, "{name} drifted from its golden file");
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 11] = [
        ("parse", &["parse", "tests/golden/trefoil.pd"]),
        ("lk", &["lk", "--asset"]),
        ("h1", &["h1", "--slopes", "0/1,-1/3,1/3,-1/1", "--link", "assets/L.pd"]),
        ("twist", &["twist", "--asset", "--slopes", "*,-1/2,1/2,-1/2", "--component", "l3", "--t", "2"]),
        ("family", &["family", "--n", "2", "--m-range", "0..2"]),
        ("slope", &["slope", "--m-range", "-1..1", "--n-range", "-1..1"]),
        ("cable_reduce", &["cable-reduce", "--slope", "-3/1", "--cable", "2,-1"]),
        ("alex_knot", &["alex", "--link", "tests/golden/trefoil.pd"]),
        ("alex_sweep", &["alex", "--m-range", "0..1", "--n-range", "0..1"]),
        ("export_dt", &["export", "--m", "1", "--n", "1", "--format", "dt"]),
        ("export_asset", &["export", "--asset"]),
    ];
    for (name, args) in cases {
        golden(name, args);
    }
}

#[test]
fn homology_sphere_example() {
    let o = surgeon(&["h1", "--slopes", "0/1,-1/3,1/3,-1/1", "--link", "assets/L.pd"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "trivial");
}

#[test]
fn cable_reduction_example() {
    let o = surgeon(&["cable-reduce", "--slope", "-3/1", "--cable", "2,-1"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "-3/4\n".to_string()));
}

#[test]
fn family_report_matches_homology() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("out.json");
    let dt = dir.path().join("dt");
    let o = surgeon(&[
        "family",
        "--n",
        "2",
        "--m-range",
        "0..5",
        "--report",
        report.to_str().unwrap(),
        "--dt-dir",
        dt.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 15);
    assert!(reports.iter().all(|r| r["h1_match"] == true && r["h1"][0]["torsion"] == serde_json::json!([2])));
    for m in 0..=5 {
        let code = std::fs::read_to_string(dt.join(format!("k_2_{m}.dt"))).unwrap();
        assert!(code.split_whitespace().all(|t| t.parse::<i64>().is_ok_and(|v| v % 2 == 0)));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(surgeon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(surgeon(&["h1", "--asset"]).status.code(), Some(2));
    assert_eq!(surgeon(&["slope", "--m-range", "3..1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(surgeon(&["--help"]).status.code(), Some(0));
    assert_eq!(surgeon(&["h1", "--asset", "--slopes", "1/0,0/0,*,*"]).status.code(), Some(2));
    let unfilled = surgeon(&["twist", "--asset", "--slopes", "*,-1/2,1/2,-1/2", "--component", "k", "--t", "1"]);
    assert_eq!(unfilled.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unfilled.stderr).starts_with("error:"));
    assert_eq!(surgeon(&["cable-reduce", "--slope", "5/1", "--cable", "2,1"]).status.code(), Some(1));
    assert_eq!(surgeon(&["parse", "no/such/file.pd"]).status.code(), Some(1));
}

#[test]
fn cache_is_transparent_and_faster() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--json", "alex", "--m-range", "1..2", "--n-range", "1..2"];
    let uncached = surgeon(&[&["--no-cache"][..], &args].concat());
    let cold_start = Instant::now();
    let cold = surgeon(&[&["--cache-dir", cache][..], &args].concat());
    let cold_time = cold_start.elapsed();
    let warm_start = Instant::now();
    let warm = surgeon(&[&["--cache-dir", cache][..], &args].concat());
    let warm_time = warm_start.elapsed();
    assert_eq!(uncached.status.code(), Some(0));
    assert_eq!(uncached.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    let entries = walkdir::WalkDir::new(dir.path()).into_iter().flatten().filter(|e| e.file_type().is_file()).count();
    assert_eq!(entries, 4);
    assert!(warm_time * 2 < cold_time, "warm {warm_time:?} vs cold {cold_time:?}");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_surgeon"))
        .args(["alex", "--link", "tests/golden/trefoil.pd"])
        .current_dir(manifest_dir())
        .env("SURGEON_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(walkdir::WalkDir::new(dir.path()).into_iter().flatten().filter(|e| e.file_type().is_file()).count(), 1);
}

#[test]
fn unwritable_cache_warns_and_proceeds() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let o = surgeon(&["--cache-dir", file.path().to_str().unwrap(), "alex", "--link", "tests/golden/trefoil.pd"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("alexander: t - 1 + t^-1"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning:"));
}
