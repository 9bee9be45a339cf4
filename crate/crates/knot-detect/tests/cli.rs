use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot-detect")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn jones_of_the_trefoil() {
    let o = run(&["invariant", "--invariant", "jones", "--dt", "4 6 2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.trim().split('+').count(), 3, "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--invariant", "nope", "--dt", "4 6 2"]).status.code(), Some(2));
    assert_eq!(run(&["invariant"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--dt", "4 4 2"]).status.code(), Some(1));
    assert_eq!(run(&["parse", "--pd", "X(1,2,3)"]).status.code(), Some(1));
    assert_eq!(run(&["detect", "--input", "/nonexistent/table.csv"]).status.code(), Some(1));
}

#[test]
fn detect_reproduces_the_jones_row() {
    let o = run(&["detect", "--invariant", "jones", "--max-n", "10", "--cumulative"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().last(), Some("10,249,240,96.38"));
}

#[test]
fn detect_output_is_independent_of_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["detect", "--invariant", "jones+det", "--max-n", "8", "--output", "json", "--cache-dir", cache];
    let outputs: Vec<String> = [["--jobs", "1"], ["--jobs", "4"], ["--jobs", "1"]]
        .iter()
        .map(|jobs| {
            let args: Vec<&str> = base.iter().chain(jobs).copied().collect();
            let o = run(&args);
            assert!(o.status.success());
            stdout(&o)
        })
        .collect();
    // the echoed config differs only in the job count
    assert_eq!(outputs[0], outputs[2]);
    assert_eq!(outputs[0].replace("\"jobs\": 1", "\"jobs\": 4"), outputs[1]);
    let v: serde_json::Value = serde_json::from_str(&outputs[0]).unwrap();
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["config"]["command"]["detect"]["invariant"], "jones+det");
}

#[test]
fn growth_json() {
    let o = run(&["growth", "--series-order", "40"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["constants"]["lower"]["decimal"].as_str().unwrap().starts_with("6.1479"));
    assert!(v["constants"]["upper"]["decimal"].as_str().unwrap().starts_with("6.1432"));
    assert_eq!(v["delta"]["holds"], true);
    assert_eq!(v["series"]["at"].as_array().unwrap().len(), 41);
    assert_eq!(v["config"]["command"]["growth"]["series_order"], 40);
    assert_eq!(run(&["growth", "--series-order", "3"]).status.code(), Some(2));
}

#[test]
fn mutate_lists_oriented_flags() {
    let o = run(&["mutate", "--dt", "4 8 12 2 -16 -18 6 -20 -22 -14 -10", "--max-size", "5", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mutants = v["mutants"].as_array().unwrap();
    assert!(mutants.iter().any(|m| m["region"] == serde_json::json!([0, 1, 2, 3, 6])
        && m["symmetry"] == "RotateX"
        && m["oriented"] == true));
    assert!(mutants.iter().any(|m| m["oriented"] == false));
}

#[test]
fn parse_round_trips_codes() {
    let o = run(&["parse", "--dt", "4 6 8 2", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pd = v["diagrams"][0]["pd"].as_str().unwrap().to_string();
    let o = run(&["parse", "--pd", &pd, "--output", "json"]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["diagrams"][0]["pd"], v["diagrams"][0]["pd"]);
    assert_eq!(w["diagrams"][0]["crossings"], 4);
}
