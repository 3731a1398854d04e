use std::io::Write;
use std::process::{Command, Output, Stdio};

fn burge(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_burge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn burge");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const FIG_GRAPH: &str = r#"{"n":4,"edges":[[1,2],[1,3],[2,3],[2,4]]}"#;

#[test]
fn encode_graph_from_stdin() {
    let o = burge(&["encode"], FIG_GRAPH);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[[1,1,2],[2,2],[3,3],[4]]\n");
}

#[test]
fn encode_graph_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(FIG_GRAPH.as_bytes()).unwrap();
    let o = burge(&["encode", "--graph", f.path().to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[[1,1,2],[2,2],[3,3],[4]]\n");
}

#[test]
fn decode_to_array_and_graph() {
    let t = "[[1,1,2],[2,2],[3,3],[4]]";
    let o = burge(&["decode"], t);
    assert_eq!(stdout(&o), "{\"top\":[2,3,3,4],\"bottom\":[1,2,1,2]}\n");
    let o = burge(&["decode", "--n", "4"], t);
    assert_eq!(
        stdout(&o),
        "{\"n\":4,\"edges\":[[2,1],[3,1],[3,2],[4,2]]}\n"
    );
    // graph JSON round-trips back through encode
    let o2 = burge(&["encode"], &stdout(&o));
    assert_eq!(stdout(&o2), format!("{t}\n"));
}

#[test]
fn decode_rejects_non_threshold_shape() {
    let o = burge(&["decode"], "[[1,2],[2]]");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not threshold"));
}

#[test]
fn shape_of_graph_and_array() {
    assert_eq!(stdout(&burge(&["shape"], FIG_GRAPH)), "[3,2,2,1]\n");
    let o = burge(&["shape"], r#"{"top":[4,8,8,9,9],"bottom":[1,3,2,5,2]}"#);
    assert_eq!(stdout(&o), "[3,3,2,2]\n");
}

#[test]
fn pvcheck_report() {
    let o = burge(
        &["pvcheck", "--array", "-"],
        r#"{"top":[2,4,4],"bottom":[1,3,2]}"#,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"peak\":[1,2,3],\"valley\":null,\"pv_free\":false,\"hook_shape\":false}\n"
    );
}

#[test]
fn malformed_inputs_exit_2_with_invariant() {
    let o = burge(&["pvcheck"], r#"{"top":[3,2],"bottom":[1,1]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("top row not weakly increasing"),
        "{}",
        stderr(&o)
    );
    let o = burge(&["encode"], "not json");
    assert_eq!(o.status.code(), Some(2));
    let o = burge(&["encode"], r#"{"n":2,"edges":[[1,1]]}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = burge(&["decode"], "[[2,1]]");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not weakly increasing"));
}

#[test]
fn standardize_both_kinds() {
    let o = burge(&["standardize"], r#"{"top":[2,3,3,4],"bottom":[1,2,1,2]}"#);
    assert_eq!(stdout(&o), "{\"top\":[3,6,7,8],\"bottom\":[1,4,2,5]}\n");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"[[1,1,2],[2,2],[3,3],[4]]").unwrap();
    let path = f.path().to_str().unwrap();
    let o = burge(&["standardize", "--tableau", path], "");
    assert_eq!(stdout(&o), "[[1,2,5],[3,4],[6,7],[8]]\n");
    let o = burge(
        &["standardize", "--tableau", path, "--alphabet", "1,2,3"],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn crystal_dot_is_deterministic() {
    let args = [
        "crystal",
        "--objects",
        "arrays",
        "--shape",
        "2,1,1",
        "--max-letter",
        "4",
    ];
    let a = burge(&args, "");
    let b = burge(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dot = stdout(&a);
    assert_eq!(dot.matches(" -> ").count(), 18);
    assert_eq!(dot.matches("[label=\"").count(), 15 + 18);
    assert!(dot.contains("color=blue"));
    assert!(dot.contains("label=\"23/11\""));
}

#[test]
fn crystal_json_schema() {
    let o = burge(
        &[
            "crystal",
            "--objects",
            "tableaux",
            "--shape",
            "1",
            "--max-letter",
            "2",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(
        stdout(&o),
        "{\"vertices\":[[[1]],[[2]]],\"edges\":[[0,1,1]],\"weights\":[[1,0],[0,1]]}\n"
    );
    let o = burge(&["crystal", "--shape", "2,2", "--max-letter", "4"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = burge(&["verify", "all", "--max-n", "4"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let o = burge(
        &[
            "verify",
            "hook-characterization",
            "--max-n",
            "4",
            "--mutation",
            "ignore-peaks",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL hook-characterization"));
    let o = burge(&["verify", "no-such-suite"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_is_byte_identical() {
    let args = [
        "verify",
        "round-trip",
        "littlewood",
        "--max-n",
        "4",
        "--json",
        "--timings",
    ];
    let a = burge(&args, "");
    let b = burge(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    // timings only on stderr
    assert!(stderr(&a).contains("round-trip"));
    assert!(!stdout(&a).contains(" ms"));
}

#[test]
fn verify_list_names_suites() {
    let o = burge(&["verify", "list"], "");
    let names = stdout(&o);
    assert!(names.lines().any(|l| l == "hook-characterization"));
    assert!(names.lines().any(|l| l == "reference-crystals"));
}
