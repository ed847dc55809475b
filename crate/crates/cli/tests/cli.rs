use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gvdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvdual")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

const EPS: &str = r#"[[[[0,0],"1"],[[1,0],"1"]],[[[0,0],"2"]]]"#;

#[test]
fn dual_of_polynomial_is_exterior() {
    let o = gvdual(&["qa", "dual", "-f", &data("poly.qa")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "algebra P_dual { gens x, y; rels x*x, x*y + y*x, y*y; }\n");

    // Dualizing the exterior algebra gives back the commutator relation.
    let ext = gvdual(&["qa", "dual", "-f", &data("ext.qa"), "--json"]);
    let back = report(&ext)["result"]["algebra"]["rel"].clone();
    let poly = gvdual(&["--json", "qa", "dual", "-f", &data("poly.qa")]);
    let dual_rel = report(&poly)["result"]["algebra"]["rel"].clone();
    assert_eq!(back, serde_json::json!([["0", "1", "-1", "0"]]));
    assert_eq!(dual_rel.as_array().unwrap().len(), 3);
}

#[test]
fn json_algebra_input_matches_text_input() {
    let text = gvdual(&["--json", "qa", "hilbert", "--maxdeg", "4", "-f", &data("ext.qa")]);
    let json = gvdual(&["--json", "qa", "hilbert", "--maxdeg", "4", "-f", &data("ext.json")]);
    assert_eq!(report(&text)["result"]["dims"], report(&json)["result"]["dims"]);
    assert_eq!(report(&text)["result"]["dims"], serde_json::json!([1, 2, 1, 0, 0]));
}

#[test]
fn products_need_two_inputs() {
    let o = gvdual(&["qa", "black", "-f", &data("poly.qa")]);
    assert_eq!(o.status.code(), Some(2));
    let o = gvdual(&["qa", "white", "-f", &data("poly.qa"), "-f", &data("ext.qa")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("algebra P_white_E { gens x_x, x_y, y_x, y_y;"));
}

#[test]
fn qa_gvcheck_passes() {
    let o = gvdual(&["qa", "gvcheck", "--seed", "7", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("quadratic algebras (seed 7, 50 objects"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn op_gvcheck_reports_the_comparison_failure() {
    let o = gvdual(&["--json", "op", "gvcheck", "-f", "@lie", "-f", "@comm", "-f", "@assoc"]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&o);
    let failed: Vec<&str> = r["result"]["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["passed"] == false)
        .map(|a| a["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["comparison"]);
    let cx = &r["result"]["axioms"][6]["counterexample"];
    assert!(!cx["objects"].as_array().unwrap().is_empty());
}

#[test]
fn operad_dual_of_lie_is_comm() {
    let lie = gvdual(&["--json", "op", "dual", "-f", "@lie"]);
    let comm = gvdual(&["--json", "op", "dual", "-f", "@comm"]);
    assert_eq!(lie.status.code(), Some(0));
    assert_eq!(report(&lie)["result"]["operad"]["sigma"], serde_json::json!([["1"]]));
    assert_eq!(report(&comm)["result"]["operad"]["sigma"], serde_json::json!([["-1"]]));
    assert_eq!(report(&comm)["result"]["operad"]["rel"], serde_json::json!([["1", "-1", "1"]]));
}

#[test]
fn operad_json_file_input() {
    let o = gvdual(&["op", "black", "-f", &data("lie.json"), "-f", "@lie"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("relations: 1 of 3"));
}

#[test]
fn coisotropy_of_semisimple_passes() {
    let o = gvdual(&["fm", "coisotropy", "-f", &data("semisimple2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = gvdual(&["fm", "coisotropy", "-f", "@control"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn f_check_and_eventual_identities() {
    let o = gvdual(&["fm", "check", "-f", "@i2_3", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = gvdual(&["fm", "check", "-f", "@control", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1));

    let o = gvdual(&["fm", "eventual", "-f", "@semisimple2", "--eps", EPS, "--eps2", "@e", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let nilpotent = r#"[[[[1,0],"1"]],[[[0,0],"1"]]]"#;
    let o = gvdual(&["fm", "eventual", "-f", "@i2_3", "--eps", nilpotent, "--samples", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gvdual(&["fm", "dual", "-f", "@i2_3", "--eps", nilpotent, "--samples", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dual_and_commutator_identity() {
    let o = gvdual(&["--json", "fm", "dual", "-f", "@semisimple2", "--cap", "4", "--eps", EPS, "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let c = &report(&o)["result"]["structure"]["c"];
    assert_eq!(c["1,1,1"], serde_json::json!([[[0, 0], "1/2"]]));

    let o = gvdual(&["fm", "ex38", "-f", "@semisimple2", "--eps", EPS, "--pow-n", "-1", "--pow-m", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fiber_semisimplicity() {
    let o = gvdual(&["fm", "fiber", "-f", "@i2_3", "--point", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = gvdual(&["fm", "fiber", "-f", "@i2_3", "--point", r#"["0","0"]"#]);
    assert_eq!(o.status.code(), Some(1));
    let o = gvdual(&["fm", "fiber", "-f", "@i2_3", "--point", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    let o = gvdual(&["qa", "dual", "-f", &data("bad.qa")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column 29: non-quadratic term"), "{err}");

    assert_eq!(gvdual(&["qa", "dual", "-f", "missing.qa"]).status.code(), Some(2));
    assert_eq!(gvdual(&["op", "dual", "-f", "@heisenberg"]).status.code(), Some(2));
    assert_eq!(gvdual(&["fm", "check", "-f", &data("poly.qa")]).status.code(), Some(2));
    assert_eq!(gvdual(&["qa", "gvcheck", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(gvdual(&["qa", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn fixed_seed_gives_identical_json() {
    for args in [
        &["--json", "qa", "gvcheck", "--seed", "11", "--samples", "20"][..],
        &["--json", "op", "gvcheck", "--seed", "11", "--samples", "8"][..],
        &["--json", "fm", "check", "-f", "@i2_3", "--seed", "11", "--samples", "8"][..],
    ] {
        let a = gvdual(args);
        let b = gvdual(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
