use std::fs;
use std::process::{Command, Output};

fn coxpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxpart"))
        .args(args)
        .env_remove("COXPART_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = coxpart(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn genfun_polynomials() {
    assert_eq!(
        ok(&["genfun", "--group", "A3", "--stat", "bip", "--max-len", "6"]).trim(),
        "q^2 + 2*q^3 + 4*q^4 + 3*q^5 + q^6"
    );
    assert_eq!(
        ok(&["genfun", "--group", "D4", "--stat", "pirr", "--max-len", "12"]).trim(),
        "1 + 4*q + 6*q^2 + 12*q^3 + 11*q^4 + 13*q^5 + 15*q^6 + 13*q^7 + 2*q^8 + q^9"
    );
    assert_eq!(
        ok(&["genfun", "--group", "A3", "--stat", "pirr", "--max-len", "0"]).trim(),
        "1"
    );
    assert_eq!(
        ok(&["genfun", "--group", "A3", "--stat", "bip", "--max-len", "0"]).trim(),
        "0"
    );
}

#[test]
fn genfun_formats() {
    let json = ok(&["genfun", "--group", "A2", "--max-len", "3", "--format", "json"]);
    assert_eq!(json.trim(), r#"{"coeffs":[0,0,0,1]}"#);
    let csv = ok(&[
        "genfun",
        "--group",
        "A2",
        "--stat",
        "pirr",
        "--max-len",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(csv, "length,count\n0,1\n1,2\n2,2\n3,0\n");
    let growth = ok(&["genfun", "--group", "B2", "--stat", "growth", "--max-len", "4"]);
    assert_eq!(growth.trim(), "1 + 2*q + 2*q^2 + 2*q^3 + q^4");
}

#[test]
fn group_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    fs::write(&path, r#"{"rank": 3, "edges": [[1, 2, 3], [2, 3, 3]]}"#).unwrap();
    let out = ok(&["genfun", "--group-file", path.to_str().unwrap(), "--max-len", "6"]);
    assert_eq!(out.trim(), "q^2 + 2*q^3 + 4*q^4 + 3*q^5 + q^6");
}

#[test]
fn bipartitions_listing() {
    let out = ok(&["bipartitions", "--group", "A3", "--word", "32123"]);
    assert!(out.contains("3 bipartitions, 2 proper"), "{out}");
    assert_eq!(
        out.lines()
            .filter(|l| l.contains("proper ") && l.contains("d_R: 2 = 1 + 1"))
            .count(),
        2
    );

    let out = ok(&["bipartitions", "--signed-word", "4 -5 -2 -6 3 1 | -1 -3 6 2 5 -4"]);
    assert!(out.contains("in B6, length 16, d_R = 4"), "{out}");
    assert!(out.contains("u = 4 -5 -2 -6 3 -1 | 1 -3 6 2 5 -4  v = -6 -5 -4 -3 -2 1 | -1 2 3 4 5 6  d_R: 4 = 3 + 1"));

    let out = ok(&["bipartitions", "--group", "A3", "--word", "e"]);
    assert!(out.contains("1 bipartitions, 0 proper"));
    assert!(out.contains("u = e  v = e"));
}

#[test]
fn bipartitions_json_for_permutation() {
    let out = ok(&["bipartitions", "--perm", "526341", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["group"], "A5");
    assert_eq!(doc["d_r"], 3);
    let pairs = doc["bipartitions"].as_array().unwrap();
    assert!(pairs.iter().all(|p| p["additive"] == true));
    assert!(pairs.iter().any(|p| p["u"] == "234561" && p["v"] == "152634"));
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "--conjecture", "1", "--group", "B3", "--max-len", "9"]);
    assert!(out.contains("48 elements") && out.contains("0 violations"), "{out}");
    let out = ok(&["verify", "--conjecture", "2", "--group", "D4-fig1", "--max-len", "12"]);
    assert!(out.contains("0 violations"), "{out}");
    let out = ok(&[
        "verify",
        "--conjecture",
        "3",
        "--group",
        "A2",
        "--max-len",
        "3",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["checked_elements"], 6);
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    ok(&[
        "verify",
        "--conjecture",
        "1",
        "--group",
        "A3",
        "--max-len",
        "6",
        "--report",
        path.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["group"], "A3");
    assert_eq!(doc["conjecture"], 1);
    assert!(doc["elapsed_ms"].is_number());
}

#[test]
fn interval_of_42131_in_d4() {
    let out = ok(&["interval", "--group", "D4-fig1", "--word", "42131"]);
    assert!(out.contains("atoms: 1, 2, 4"), "{out}");
    assert!(out.contains("diameters: 2"));
    assert!(out.contains("{e, 42131}"));
    assert!(out.contains("coatoms 2 = 1 + 1  atoms 3 = 2 + 1"));
    let doc: serde_json::Value = serde_json::from_str(&ok(&[
        "interval", "--group", "D4-fig1", "--word", "42131", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(doc["coatoms"].as_array().unwrap().len(), 2);

    let out = ok(&["interval", "--perm", "4321"]);
    assert!(out.contains("members: 24"));
    let out = ok(&["interval", "--group", "A3", "--word", "e"]);
    assert!(out.contains("members: 1") && out.contains("diameters: 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        coxpart(&["genfun", "--group", "nonsense", "--max-len", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(coxpart(&["genfun", "--max-len", "2"]).status.code(), Some(2));
    assert_eq!(coxpart(&["genfun", "--group", "A3"]).status.code(), Some(2));
    assert_eq!(
        coxpart(&["verify", "--group", "A3", "--conjecture", "4", "--max-len", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coxpart(&["bipartitions", "--group", "A3", "--word", "15"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coxpart(&["interval", "--group", "A3", "--word", "1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coxpart(&["--workers", "0", "genfun", "--group", "A3", "--max-len", "2"])
            .status
            .code(),
        Some(2)
    );
    let capped = coxpart(&[
        "genfun",
        "--group",
        "affineA2",
        "--max-len",
        "12",
        "--element-cap",
        "50",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn outputs_stable_across_workers_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = |workers: &'static str| {
        vec![
            "--workers",
            workers,
            "verify",
            "--conjecture",
            "2",
            "--group",
            "tri(3,3,4)",
            "--max-len",
            "8",
            "--format",
            "json",
        ]
    };
    let base = ok(&args("1"));
    assert_eq!(ok(&args("4")), base);
    let mut cached = args("8");
    cached.extend(["--cache-dir", cache]);
    assert_eq!(ok(&cached), base);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(ok(&cached), base);

    let from_env = Command::new(env!("CARGO_BIN_EXE_coxpart"))
        .args(["genfun", "--group", "B3", "--max-len", "9"])
        .env("COXPART_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}
