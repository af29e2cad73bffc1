use std::process::{Command, Output};

use serde_json::Value;

fn k3split(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3split"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn decide_reducible() {
    let o = k3split(&["decide", "3", "8", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("reducible or non-reduced hyperplane section exists"));
    assert!(out.contains("witness (a, b) = (-1, 1)"));
    assert!(out.contains("g = 5 >= g_min = 5"));
    assert!(stderr(&o).is_empty());
}

#[test]
fn decide_bn_general() {
    let o = k3split(&["decide", "3", "8", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Brill-Noether general: guaranteed"));
}

#[test]
fn decide_json_is_parseable() {
    let o = k3split(&["decide", "2", "4", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], false);
    assert_eq!(v["delta"], 0);
    assert_eq!(v["spec"]["n"], 2);
    assert_eq!(v["brute_force"], Value::Null);
    assert_eq!(v["health"]["degree_zero_minus_two_class"]["a"], -1);
    assert_eq!(v["lemma"]["branch"], "r_le_n");
    // Unhealthy lattice warnings are on by default.
    assert!(stderr(&o).contains("degree-0 (-2)-class"));

    let quiet = k3split(&["decide", "2", "4", "2", "--json", "--no-warnings"]);
    assert!(stderr(&quiet).is_empty());
    assert_eq!(quiet.stdout, o.stdout);
}

#[test]
fn threshold_output() {
    let o = k3split(&["threshold", "2", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("delta = 1"));
    assert!(out.contains("g_min = 3"));

    let o = k3split(&["threshold", "2", "5", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["delta"].as_i64(), v["g_min"].as_i64()),
        (Some(1), Some(3))
    );
}

#[test]
fn witness_output() {
    let o = k3split(&["witness", "2", "5", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("degree 1, D^2 = -2"));
    assert!(out.contains("degrees 1 + 3 = 4"));

    let o = k3split(&["witness", "2", "5", "2"]);
    assert_eq!(stdout(&o).trim(), "none");

    let o = k3split(&["witness", "3", "8", "5", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["class"]["a"], -1);
    assert_eq!(v["splitting"]["complement"]["a"], 2);
    assert_eq!(v["splitting"]["complement_degree"], 4);
}

#[test]
fn exit_codes() {
    assert_eq!(k3split(&[]).status.code(), Some(1));
    assert_eq!(k3split(&["decide", "3", "8"]).status.code(), Some(1));
    assert_eq!(k3split(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(k3split(&["decide", "1", "8", "5"]).status.code(), Some(2));
    assert_eq!(k3split(&["decide", "3", "-8", "5"]).status.code(), Some(2));
    assert_eq!(k3split(&["decide", "3", "8", "x"]).status.code(), Some(2));
    assert_eq!(
        k3split(&["decide", "3", "1000000001", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        k3split(&["decide", "3", "99999999999999999999", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(k3split(&["threshold", "2", "0"]).status.code(), Some(2));
    assert_eq!(
        k3split(&["scan", "--n-min", "3", "--n-max", "2", "--d-min", "1", "--d-max", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(k3split(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_csv_to_stdout() {
    let o = k3split(&[
        "scan", "--n-min", "3", "--n-max", "3", "--d-min", "8", "--d-max", "8", "--g-min", "4",
        "--g-max", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,d,g,delta,g_min,hyperbolic,deg0_m2_class,closed_form,brute_force,witness_a,witness_b,witness_deg,witness_sq,bn_general,agree\n\
         3,8,4,2,5,true,false,false,false,,,,,true,true\n\
         3,8,5,2,5,true,false,true,true,-1,1,2,-2,false,true\n"
    );
}

#[test]
fn scan_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str, format: &str| {
        let path = dir.path().join(name);
        let o = k3split(&[
            "scan",
            "--n-min",
            "2",
            "--n-max",
            "8",
            "--d-min",
            "1",
            "--d-max",
            "40",
            "--format",
            format,
            "--threads",
            threads,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv", "1", "csv"), run("b.csv", "4", "csv"));
    let json = run("a.json", "2", "json");
    assert_eq!(json, run("b.json", "1", "json"));
    let v: Value = serde_json::from_slice(&json).unwrap();
    let csv_rows = run("c.csv", "1", "csv")
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        - 1;
    assert_eq!(v.as_array().unwrap().len(), csv_rows);
}

#[test]
fn verify_reports_only_characterised_disagreements() {
    let o = k3split(&[
        "verify", "--n-min", "2", "--n-max", "10", "--d-min", "1", "--d-max", "60", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_at_delta_zero"], true);
    assert_eq!(v["all_have_deg0_m2_class"], true);
    let dis = v["disagreements"].as_array().unwrap();
    assert!(!dis.is_empty());
    for r in dis {
        let (n, d, g) = (
            r["n"].as_i64().unwrap(),
            r["d"].as_i64().unwrap(),
            r["g"].as_i64().unwrap(),
        );
        assert_eq!(4 * n * g, d * d);
    }
    assert!(stderr(&o).contains("disagreements"));

    let o = k3split(&[
        "verify", "--n-min", "3", "--n-max", "3", "--d-min", "8", "--d-max", "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1, "header only");
}

#[test]
fn bad_output_path_fails() {
    let o = k3split(&[
        "scan",
        "--n-min",
        "2",
        "--n-max",
        "2",
        "--d-min",
        "1",
        "--d-max",
        "1",
        "--output",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn verify_beyond_hyperbolic_range_is_not_a_tripwire() {
    let o = k3split(&[
        "verify", "--n-min", "2", "--n-max", "4", "--d-min", "1", "--d-max", "16", "--g-min", "0",
        "--g-max", "100",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().count() > 1);
}
