use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use spanlf_core::{clique_plus_isolated, to_graph6, Graph};

fn spanlf(args: &[&str]) -> Output {
    run(args, None)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spanlf"))
        .args(args)
        .env_remove("SPANLF_BUDGET_SECS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn maxlf_on_small_graphs() {
    let k5 = to_graph6(&Graph::complete(5).unwrap());
    let out = spanlf(&["maxlf", &k5]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 4);
    assert_eq!(v["schema"], 1);

    let g0 = to_graph6(&clique_plus_isolated(10, 3).unwrap());
    assert_eq!(json(&spanlf(&["maxlf", &g0]))["size"], 7);

    let empty = to_graph6(&Graph::empty(6).unwrap());
    for method in ["auto", "dp", "bnb"] {
        let out = spanlf(&["maxlf", &empty, "--method", method]);
        assert_eq!(json(&out)["size"], 0);
    }
}

#[test]
fn hcn_on_paths_cycles_and_the_construction() {
    let c = to_graph6(&Graph::cycle(8).unwrap());
    let p = to_graph6(&Graph::path(8).unwrap());
    let g0 = to_graph6(&clique_plus_isolated(9, 3).unwrap());
    assert_eq!(json(&spanlf(&["hcn", &c]))["hcn"], 0);
    assert_eq!(json(&spanlf(&["hcn", &p]))["hcn"], 1);
    assert_eq!(json(&spanlf(&["hcn", &g0]))["hcn"], 3);
}

#[test]
fn batch_input_from_stdin_and_file() {
    let text = "D~{\nDQc\n\nD??\n";
    let out = run(&["hcn"], Some(text));
    assert_eq!(code(&out), 0);
    let hcn: Vec<_> = lines(&out).iter().map(|v| v["hcn"].clone()).collect();
    assert_eq!(hcn, vec![Value::from(0), Value::from(1), Value::from(5)]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.g6");
    std::fs::write(&path, text).unwrap();
    let from_file = spanlf(&["hcn", "--input", path.to_str().unwrap()]);
    assert_eq!(from_file.stdout, out.stdout);
    let dash = run(&["hcn", "--input", "-"], Some(text));
    assert_eq!(dash.stdout, out.stdout);
}

#[test]
fn bad_lines_are_reported_and_set_the_exit_code() {
    let out = run(&["maxlf"], Some("D~{\nxx\nDQc\n"));
    assert_eq!(code(&out), 2);
    let records = lines(&out);
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["size"], 4);
    assert_eq!(records[1]["exit"], 2);
    assert!(records[1]["error"].as_str().unwrap().contains("graph6"));
    assert_eq!(records[2]["size"], 4);
}

#[test]
fn table_format() {
    let out = spanlf(&["maxlf", "D~{", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().next().unwrap().contains("size"));
}

#[test]
fn unsupported_format_is_an_input_error() {
    assert_eq!(code(&spanlf(&["maxlf", "D~{", "--format", "graph6"])), 2);
    assert_eq!(
        code(&spanlf(&["ex", "--n", "6", "--k", "2", "--format", "csv"])),
        2
    );
}

#[test]
fn augment_success_and_preconditions() {
    let out = spanlf(&[
        "augment",
        "--graph",
        "D~{",
        "--forest",
        r#"{"paths":[[0,1],[2,3,4]]}"#,
        "--u",
        "1",
        "--v",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["edges"], 4);
    assert_eq!(v["k"], 2);

    // same component
    let out = spanlf(&[
        "augment",
        "--graph",
        "D~{",
        "--forest",
        r#"{"paths":[[0,1,2],[3,4]]}"#,
        "--u",
        "0",
        "--v",
        "2",
    ]);
    assert_eq!(code(&out), 4);

    // two disjoint edges on four vertices: degree sum 2 against the required 3
    let g = to_graph6(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
    let out = spanlf(&[
        "augment",
        "--graph",
        &g,
        "--forest",
        r#"{"paths":[[0,1],[2,3]]}"#,
        "--u",
        "1",
        "--v",
        "2",
    ]);
    assert_eq!(code(&out), 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degree sum 2"), "{err}");
}

#[test]
fn augment_reads_the_forest_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"paths":[[0,1],[2,3,4]]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let out = spanlf(&[
        "augment", "--graph", "D~{", "--forest", &arg, "--u", "1", "--v", "2",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn ex_reports_exact_values() {
    let out = spanlf(&["ex", "--n", "6", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["exact"], 10);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["complete"], true);
    assert!(v["elapsed_ms"].is_null());

    let v = json(&spanlf(&["ex", "--n", "9", "--k", "3"]));
    let exact = v["exact"].as_u64().unwrap();
    assert!((21..=23).contains(&exact));
    assert_eq!(v["within_bounds"], true);

    // outside the theorem's range the bounds check is skipped
    let v = json(&spanlf(&["ex", "--n", "7", "--k", "3"]));
    assert!(v["exact"].is_u64());
    assert!(v["upper"].is_null());
    assert!(v["within_bounds"].is_null());
}

#[test]
fn ex_writes_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.g6");
    let out = spanlf(&[
        "ex",
        "--n",
        "9",
        "--k",
        "3",
        "--witnesses-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let catalog = std::fs::read_to_string(&path).unwrap();
    assert_eq!(catalog.lines().count(), 2);
    assert_eq!(json(&out)["witness_count"], 2);
    let g6 = spanlf(&["ex", "--n", "9", "--k", "3", "--format", "graph6"]);
    assert_eq!(String::from_utf8(g6.stdout).unwrap(), catalog);
}

#[test]
fn exit_codes() {
    let budget = spanlf(&["ex", "--n", "12", "--k", "4", "--budget-nodes", "1"]);
    assert_eq!(code(&budget), 3);
    assert_eq!(json(&budget)["verdict"], "inconclusive");
    assert_eq!(code(&spanlf(&["ex", "--n", "17", "--k", "3"])), 2);
    assert_eq!(
        code(&spanlf(&["ex", "--n", "6", "--k", "2", "--workers", "0"])),
        2
    );
    assert_eq!(code(&spanlf(&["hcn", "A_"])), 4);
    assert_eq!(code(&spanlf(&["maxlf", "D?"])), 2);
}

#[test]
fn budget_env_var_is_a_default() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spanlf"));
    let out = cmd
        .args(["ex", "--n", "6", "--k", "2"])
        .env("SPANLF_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn sweep_formats() {
    let out = spanlf(&["sweep", "--n", "6..7", "--k", "2..3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    let csv = spanlf(&["sweep", "--n", "6..7", "--k", "2..3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 5);
    let table = spanlf(&["sweep", "--n", "6..7", "--k", "2..3", "--format", "table"]);
    assert!(String::from_utf8(table.stdout).unwrap().contains("k0"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = spanlf(&["maxlf", "D~{", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let direct = spanlf(&["maxlf", "D~{"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn timing_is_opt_in() {
    let v = json(&spanlf(&["ex", "--n", "6", "--k", "2", "--timing"]));
    assert!(v["elapsed_ms"].is_u64());
}
