use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn floer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer")).args(args).output().expect("spawn floer")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = floer(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn code(args: &[&str]) -> i32 {
    floer(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(floer(args).stdout).unwrap()
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(floer(args).stderr).unwrap()
}

#[test]
fn polytope_f_vectors() {
    let (c, v) = json(&["polytope", "assoc", "--l", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v, serde_json::json!([14, 21, 9]));
    assert_eq!(stdout(&["polytope", "assoc", "--l", "5", "--f-vector", "--text"]), "K_5: 14 21 9\n");
    let (_, v) = json(&["polytope", "assoc", "--l", "4", "--boundary-check"]);
    assert_eq!(v["passed"], true);
    let (_, v) = json(&["polytope", "multi", "--l", "3", "--facet-signs"]);
    assert!(v.as_array().is_some_and(|a| !a.is_empty()));
    assert_eq!(code(&["polytope", "assoc", "--l", "4", "--faces", "--f-vector"]), 2);
}

#[test]
fn novikov_eval() {
    assert_eq!(stdout(&["novikov", "eval", "inv([1 - t], 3)", "--text"]), "t^0 + t^1 + t^2 + O(t^3)\n");
    let (c, v) = json(&["novikov", "eval", "[1 - t] * [1 + t]"]);
    assert_eq!(c, 0);
    assert_eq!(v["value"], "t^0 - t^2");
    assert_eq!(v["valuation"], "0");
    let bad = floer(&["novikov", "eval", "[1 + t^]"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1, column 8"));
}

#[test]
fn maslov_example_one() {
    let (c, v) = json(&["maslov", "index", &data("example_one.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["rs_index"], "-1/2");
    assert_eq!(v["string_index"], 1);
}

#[test]
fn ainfty_ops() {
    assert_eq!(code(&["ainfty", "check", &data("chain.json"), &data("augmented.json")]), 0);
    assert_eq!(code(&["ainfty", "check", &data("chain_bad.json")]), 1);
    assert_eq!(code(&["ainfty", "check", &data("chain.json"), &data("chain_bad.json")]), 1);
    assert_eq!(code(&["ainfty", "map", &data("map_ok.json")]), 0);
    assert_eq!(code(&["ainfty", "map", &data("map_bad.json")]), 1);
    assert_eq!(code(&["ainfty", "homotopy", &data("homotopy.json")]), 0);
    assert_eq!(code(&["ainfty", "compose", &data("compose.json")]), 0);
    let (c, v) = json(&["ainfty", "augment", &data("augment.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["augmentation"]["passed"], true);
}

#[test]
fn floer_commands() {
    let (c, v) = json(&["floer", "sphere", "--n", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["degrees"], serde_json::json!([0, 3]));
    assert_eq!(v["unit"], true);
    let (c, v) = json(&["floer", "hf", &data("torus.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["cohomology"]["total_rank"], 4);
    assert_eq!(code(&["floer", "hf", &data("not_a_complex.json")]), 2);
}

#[test]
fn sft_bound() {
    assert_eq!(stdout(&["sft", "bound", "--n", "3", "--g", "0", "--v", "1", "--m", "1", "--text"]), "bound=-2 satisfies=true\n");
    assert_eq!(code(&["sft", "bound", "--n", "1", "--g", "0", "--v", "1", "--m", "1"]), 2);
}

#[test]
fn conductor_exact() {
    let (c, v) = json(&["conductor", "exact", &data("exact.json")]);
    assert_eq!((c, &v["exact"]), (0, &Value::Bool(true)));
    assert_eq!(code(&["conductor", "exact", &data("not_exact.json")]), 1);
}

#[test]
fn input_errors() {
    assert_eq!(code(&["polytope", "assoc", "--l", "5", "--bogus"]), 2);
    assert_eq!(code(&["ainfty", "check", &data("missing.json")]), 2);
    let err = stderr(&["ainfty", "check", &data("malformed.json")]);
    assert!(err.contains("line 4, column 16"), "{err}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["floer".to_string(), "sphere".into(), "--n".into(), "4".into()],
        vec!["floer".into(), "hf".into(), data("torus.json")],
        vec!["polytope".into(), "multi".into(), "--l".into(), "4".into(), "--faces".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(floer(&args).stdout, floer(&args).stdout);
    }
}
