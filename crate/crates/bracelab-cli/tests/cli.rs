use std::process::{Command, Output};

fn bracelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bracelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn build_emits_brace_json_with_the_requested_order() {
    let out = bracelab(&["build", "example:z4_radical"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"n\":4"), "{text}");
    assert!(text.contains("\"name\":\"z4_radical\""), "{text}");
}

#[test]
fn analyze_reports_the_pq_f_component_structure() {
    let out = bracelab(&["analyze", "pq:F p=5 q=2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("λ-graph: 3 vertices, 1 edge; components [1, 2]; diameters [0, 1]"),
        "{text}"
    );
}

#[test]
fn analyze_accepts_a_brace_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let built = bracelab(&["build", "triv:Z6"]);
    let path = dir.path().join("b.json");
    std::fs::write(&path, stdout(&built)).unwrap();

    let out = bracelab(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 6"), "{text}");
    assert!(text.contains("additive group: Z6"), "{text}");
    assert!(text.contains("trivial=true"), "{text}");
}

#[test]
fn verify_passing_suite_exits_zero() {
    let out = bracelab(&["verify", "order6-table"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("suite order6-table: PASS"));
}

#[test]
fn verify_failing_suite_exits_one_with_witnesses() {
    let out = bracelab(&["verify", "two-vertex-classification"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("suite two-vertex-classification: FAIL"), "{text}");
    assert!(text.contains("add A4"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bracelab(&["build", "nonsense:thing"]).status.code(), Some(2));
    assert_eq!(bracelab(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(bracelab(&["census"]).status.code(), Some(2));
    assert_eq!(bracelab(&["census", "14"]).status.code(), Some(2));
}

#[test]
fn census_prints_group_counts_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_dir = dir.path().join("json");
    let out = bracelab(&[
        "census",
        "6",
        "--emit-json",
        json_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("census order 6: 6 braces"), "{text}");
    assert!(text.contains("additive group Z6: 2"), "{text}");
    assert!(text.contains("additive group S3: 4"), "{text}");

    let report = std::fs::read_to_string(json_dir.join("census6.json")).unwrap();
    assert!(report.contains("\"total\":6"), "{report}");

    let again = bracelab(&["census", "6"]);
    assert_eq!(stdout(&out), stdout(&again), "census output is deterministic");
}

#[test]
fn solution_emits_valid_ybe_data() {
    let out = bracelab(&["solution", "example:z12_cyclic"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"n\":12"));
    assert!(stderr(&out).contains("YBE check: pass"));
}

#[test]
fn emit_dot_writes_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot_dir = dir.path().join("dot");
    let out = bracelab(&[
        "analyze",
        "example:z12_cyclic",
        "--emit-dot",
        dot_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let theta = std::fs::read_to_string(dot_dir.join("z12-cyclic.theta.dot")).unwrap();
    assert!(theta.starts_with("graph theta {"), "{theta}");
    assert_eq!(theta.matches(" -- ").count(), 3, "triangle has 3 edges");
}
