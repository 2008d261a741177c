use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopbrauer"))
        .args(args)
        .env_remove("LOOPBRAUER_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn dims_agree() {
    for (family, n, count) in [("A", "3", 76), ("L", "4", 209), ("A", "0", 1)] {
        let o = run(&["dims", "--family", family, "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v[0]["formula"], count);
        assert_eq!(v[0]["enumerated"], count);
    }
}

#[test]
fn dims_csv() {
    let o = run(&["dims", "--n", "2", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "family,n,formula,enumerated,agree\nA,2,10,10,true\nL,2,7,7,true\n"
    );
}

#[test]
fn mult_products() {
    let text = |args: &[&str]| {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        stdout(&o).trim().to_string()
    };
    assert_eq!(text(&["mult", "e1", "e1", "--n", "2", "--format", "text"]), "x * e1");
    assert_eq!(
        text(&[
            "mult",
            "u1",
            "u1",
            "--n",
            "2",
            "--mode",
            "two-param",
            "--format",
            "text"
        ]),
        "x2 * u1"
    );
    assert_eq!(
        text(&["mult", "id", "2; 1 0 3 2", "--format", "text", "--n", "2"]),
        "e1"
    );
    assert_eq!(
        text(&["mult", "2; 2 3 0 1", "g1", "--n", "2", "--format", "text"]),
        "g1"
    );
    assert_eq!(text(&["mult", "g1", "g1", "--n", "2", "--format", "text"]), "id");
}

#[test]
fn mult_json_terms() {
    let v = json(&run(&["mult", "e1", "e1", "--n", "2"]));
    assert_eq!(v["product"], "x * e1");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["name"], "e1");
}

#[test]
fn parse_errors_exit_3() {
    assert_eq!(run(&["mult", "e1", "bogus", "--n", "2"]).status.code(), Some(3));
    assert_eq!(run(&["mult", "e1", "e1"]).status.code(), Some(3));
    assert_eq!(run(&["mult", "2; 0 0 0 0", "e1"]).status.code(), Some(3));
    assert_eq!(
        run(&["cell", "--n", "2", "--lambda", "2", "--x0", "1/0"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["dims", "--family", "Q", "--n", "2"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn cell_reports_radicals() {
    let v = json(&run(&[
        "cell", "--family", "A", "--n", "2", "--lambda", "", "--x0", "1", "--x0", "1/2",
    ]));
    assert_eq!(v["dim"], 2);
    assert_eq!(v["t"], 2);
    assert_eq!(v["lambda"], serde_json::json!([]));
    assert_eq!(v["radical_dim"]["1"], 1);
    assert_eq!(v["radical_dim"]["1/2"], 0);
    let v = json(&run(&["cell", "--family", "L", "--n", "3", "--lambda", "2,1"]));
    assert_eq!(v["dim"], 2);
    assert!(v.get("radical_dim").is_none());
}

#[test]
fn radical_scan_filters_by_t() {
    let v = json(&run(&[
        "radical", "--family", "A", "--n", "3", "--t", "1", "--x0", "-1",
    ]));
    let probes = v["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 2);
    assert!(probes.iter().all(|p| p["t"] == 1 && p["radical_dim"] == 0));
}

#[test]
fn radical_basis_for_one_module() {
    let v = json(&run(&[
        "radical", "--family", "A", "--n", "2", "--lambda", "", "--x0", "1",
    ]));
    assert_eq!(v["radical"][0]["radical_dim"], 1);
    assert_eq!(v["radical"][0]["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn eval_at_zero_exits_4() {
    assert_eq!(run(&["report", "--x0", "0"]).status.code(), Some(4));
    assert_eq!(
        run(&["cell", "--n", "2", "--lambda", "1", "--x0", "0"]).status.code(),
        Some(4)
    );
}

#[test]
fn relations_central_branch_pass() {
    for args in [
        &["relations", "--n", "3"][..],
        &["central", "--family", "A", "--n", "3"],
        &["central", "--family", "L", "--n", "3", "--x0", "1/2"],
        &["branch", "--family", "L", "--n", "3"],
        &["branch", "--family", "A", "--n", "2", "--ind-res"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn enumerate_lists_family() {
    let v = json(&run(&["enumerate", "--family", "L", "--n", "2"]));
    assert_eq!(v["count"], 7);
    assert_eq!(v["diagrams"][0]["index"], 0);
}

#[test]
fn report_is_deterministic_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let cold = run(&["report", "--cache-dir", path, "--no-timing"]);
    assert_eq!(cold.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = Command::new(env!("CARGO_BIN_EXE_loopbrauer"))
        .args(["report", "--no-timing"])
        .env("LOOPBRAUER_CACHE", path)
        .output()
        .unwrap();
    let uncached = run(&["report", "--no-timing", "--jobs", "1"]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
    let v = json(&cold);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["proven_failures"], 0);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn integer_radicals_do_not_fail_the_report() {
    let o = run(&["report", "--family", "A", "--n", "2", "--x0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    assert_eq!(v["summary"]["proven_failures"], 0);
}
