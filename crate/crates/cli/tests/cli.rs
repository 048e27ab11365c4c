use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn qsl2(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qsl2"));
    cmd.args(args).current_dir(root()).env_remove("QSL2_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_exit_codes() {
    let ok = qsl2(
        &["classify", "docs/examples/single_vertex_dim2.json", "--q", "qvar"],
        &[],
    );
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdict"], "accept");

    let bad = qsl2(&["classify", "docs/examples/a3_path.json", "--q", "qvar"], &[]);
    assert_eq!(bad.status.code(), Some(1));
    let reasons = json(&bad)["reasons"].as_array().unwrap().clone();
    assert!(reasons.iter().any(|r| r == "ADET component A(3)"));
}

#[test]
fn hilbert_matches_at_degree_two() {
    let o = qsl2(
        &[
            "hilbert",
            "docs/examples/affine_a1.json",
            "--max-degree",
            "4",
            "--compare-expected",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["matrices"][2], serde_json::json!([[3, 0], [0, 3]]));
    assert_eq!(v["expected"][2], serde_json::json!([[3, 0], [0, 3]]));
}

#[test]
fn budget_override_exits_with_three() {
    let o = qsl2(
        &["hilbert", "docs/examples/affine_a1.json", "--max-degree", "6"],
        &[("QSL2_BUDGET", "paths=20,words=20")],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"));
    let o = qsl2(
        &["hopf", "dims", "docs/examples/standard_form.json", "--max-degree", "3"],
        &[("QSL2_BUDGET", "50")],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = qsl2(
        &["hopf", "dims", "docs/examples/standard_form.json", "--max-degree", "1"],
        &[("QSL2_BUDGET", "lots")],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_diagnostics() {
    let f = temp_json("{\n  \"field\": \"rational\",\n  \"vertices\": [\"a\"\n  \"dims\": []\n}\n");
    let o = qsl2(&["hilbert", f.path().to_str().unwrap(), "--max-degree", "2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let f = temp_json(r#"{"field": "rational", "vertices": ["a", "b"], "dims": [["a", "c", 1]]}"#);
    let o = qsl2(&["hilbert", f.path().to_str().unwrap(), "--max-degree", "2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dims[0]: unknown vertex \"c\""), "{}", stderr(&o));

    let f = temp_json(r#"{"field": "fp:6", "vertices": ["a"], "dims": []}"#);
    let o = qsl2(&["hilbert", f.path().to_str().unwrap(), "--max-degree", "2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field"), "{}", stderr(&o));

    let f = temp_json(
        r#"{"field": "rational", "vertices": ["a"], "dims": [[0, 0, 2]], "forms": [[0, 0, [[1, "x"], [0, 1]]]]}"#,
    );
    let o = qsl2(&["star-check", f.path().to_str().unwrap(), "--q", "1"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("forms[0][2][0][1]"), "{}", stderr(&o));

    let f = temp_json(
        r#"{"field": "rational", "vertices": ["a"], "dims": [[0, 0, 2]], "forms": [[0, 0, [[1, 2], [2, 4]]]]}"#,
    );
    let o = qsl2(&["classify", f.path().to_str().unwrap(), "--q", "1"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["forms_nondegenerate"], false);
    let o = qsl2(&["star-check", f.path().to_str().unwrap(), "--q", "1"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tl_and_jw() {
    let o = qsl2(&["tl", "e(1,2) * e(1,2)"], &[]);
    assert_eq!(json(&o)["result"], "[(-q^2 - 1)/(q)] * cup * cap");
    let o = qsl2(&["tl", "id(2) * id(3)"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("boundary mismatch"));
    let o = qsl2(&["jw", "3", "--field", "cyclotomic:6", "--q", "z"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let o = qsl2(&["jw", "2", "--field", "rational"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = qsl2(&["jw", "2", "--field", "rational", "--q", "2"], &[]);
    assert_eq!(json(&o)["result"], "[2/5] * cup * cap + id(2)");
}

#[test]
fn table_output() {
    let o = qsl2(
        &[
            "--output",
            "table",
            "hopf",
            "dims",
            "docs/examples/standard_form.json",
            "--max-degree",
            "2",
        ],
        &[],
    );
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("cumulative: [1, 5, 14]"), "{}", text);
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = qsl2(
        &[
            "hilbert",
            "docs/examples/triangle_f5.json",
            "--max-degree",
            "4",
            "--seed",
            "9",
        ],
        &[],
    );
    let b = qsl2(
        &[
            "hilbert",
            "docs/examples/triangle_f5.json",
            "--max-degree",
            "4",
            "--seed",
            "9",
        ],
        &[],
    );
    assert_eq!(a.stdout, b.stdout);
}
