use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use outclass::bratteli::{check_certificate, check_intertwining, BratteliDiagram, Verdict};
use outclass::permgrp::{GroupCaps, GroupHom, HomRecord};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_outclass")).args(args).output().unwrap()
}

fn d(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn read_diagram(name: &str) -> BratteliDiagram {
    serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn compose_matches_golden() {
    let o = run(&["compose", "--left", &d("f.json"), "--right", &d("g.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("compose.json"));
    assert_eq!(json(&o)["matrix"], serde_json::json!([[3]]));
}

#[test]
fn hom_exists_exit_codes() {
    let yes = run(&["hom-exists", "--source", "(2)", "--target", "(6)", "--unital"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["exists"], true);
    let no = run(&["hom-exists", "--source", "(2)", "--target", "(5)", "--unital"]);
    assert_eq!(no.status.code(), Some(1));
    // without unitality the map into (5) exists
    assert_eq!(run(&["hom-exists", "--source", "(2)", "--target", "(5)"]).status.code(), Some(0));
}

#[test]
fn enumerate_homs_matches_golden() {
    let o = run(&["enumerate-homs", "--source", "(1,2)", "--target", "(5)", "--unital"]);
    assert_eq!(stdout(&o), golden("enumerate_homs.json"));
    assert_eq!(json(&o)["matrices"], serde_json::json!([[[1, 2]], [[3, 1]], [[5, 0]]]));
}

#[test]
fn telescope_matches_golden() {
    let o = run(&["telescope", &d("car.json"), "--indices", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("telescope.json"));
}

#[test]
fn equiv_distinct_certificate_rechecks() {
    let o = run(&["equiv", &d("car.json"), &d("three.json"), "--depth", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("equiv_distinct.json"));
    let v: Verdict = serde_json::from_value(strip(json(&o))).unwrap();
    let Verdict::Distinct { certificate } = v else { panic!() };
    assert!(check_certificate(&read_diagram("car.json"), &read_diagram("three.json"), &certificate));
}

/// Drops the CLI's echo fields so the rest parses as a library verdict.
fn strip(mut v: Value) -> Value {
    let m = v.as_object_mut().unwrap();
    m.remove("checked");
    if m["verdict"] != "unknown" {
        m.remove("bounds");
    }
    v
}

#[test]
fn equiv_witness_rechecks() {
    let o = run(&["equiv", &d("car.json"), &d("four.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("equiv_equivalent.json"));
    let v: Verdict = serde_json::from_value(strip(json(&o))).unwrap();
    let Verdict::Equivalent { witness } = v else { panic!() };
    assert!(check_intertwining(&read_diagram("car.json"), &read_diagram("four.json"), &witness).unwrap());
}

#[test]
fn equiv_unknown_echoes_bounds() {
    let o = run(&[
        "equiv",
        &d("fibonacci.json"),
        &d("car.json"),
        "--depth",
        "3",
        "--level-bound",
        "6",
        "--entry-bound",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["verdict"], "unknown");
    assert_eq!(v["bounds"]["level_bound"], 6);
}

#[test]
fn k0_queries() {
    let eq = run(&["k0-eq", &d("car.json"), "--x", "0:1", "--y", "1:2", "--depth", "1"]);
    assert_eq!(eq.status.code(), Some(0));
    assert_eq!(json(&eq)["level"], 1);
    let ne = run(&["k0-eq", &d("car.json"), "--x", "0:1", "--y", "0:-1"]);
    assert_eq!(ne.status.code(), Some(1));
    let pos = run(&["k0-pos", &d("fibonacci.json"), "--x", "0:1,-1", "--depth", "1"]);
    assert_eq!(pos.status.code(), Some(0));
    let neg = run(&["k0-pos", &d("car.json"), "--x", "0:-1"]);
    assert_eq!(neg.status.code(), Some(1));
    let open = run(&["k0-pos", &d("fibonacci.json"), "--x", "0:-2,1", "--depth", "0"]);
    assert_eq!(open.status.code(), Some(2));
}

#[test]
fn dot_to_stdout_and_file() {
    let o = run(&["dot", &d("car.json"), "--levels", "3"]);
    assert_eq!(stdout(&o), golden("car.dot"));
    let path = std::env::temp_dir().join(format!("outclass-dot-{}.dot", std::process::id()));
    let o = run(&["dot", &d("car.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text, golden("car.dot"));
}

#[test]
fn intertwine_twisted_pair() {
    let o = run(&["intertwine", &d("twisted_a5.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("intertwine.json"));
    let v = json(&o);
    assert_eq!(v["mutually_inverse"], true);
    // the emitted pair re-verifies through the library
    let caps = GroupCaps::default();
    let f: HomRecord = serde_json::from_value(v["f"].clone()).unwrap();
    let g: HomRecord = serde_json::from_value(v["g"].clone()).unwrap();
    let (f, g) = (f.to_hom(&caps).unwrap(), g.to_hom(&caps).unwrap());
    assert_eq!(f.then(&g).unwrap(), GroupHom::identity(f.source()));

    for flags in [["--schedule", "geometric"], ["--oracle", "first"]] {
        let o = run(&["intertwine", &d("twisted_a5.json"), flags[0], flags[1]]);
        assert_eq!(o.status.code(), Some(0), "{flags:?}");
        assert_eq!(json(&o)["cauchy_bounds_hold"], true);
    }
}

#[test]
fn intertwine_precondition() {
    let o = run(&["intertwine", &d("a5_into_a6.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "precondition_failed");
}

#[test]
fn counterexample_report() {
    let o = run(&["verify-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("counterexample.json"));
    let v = json(&o);
    assert_eq!(v["sigma"]["images"][0], "(123)(456)");
    assert_eq!(v["straight_cycle_type"], serde_json::json!([3]));
    assert_eq!(v["twisted_cycle_type"], serde_json::json!([3, 3]));
    assert_eq!(v["holds"], true);
}

#[test]
fn quotient_check_builtins_and_files() {
    for b in ["a5", "matcat:3", "injections:4"] {
        let o = run(&["quotient-check", "--builtin", b]);
        assert_eq!(o.status.code(), Some(0), "{b}");
        assert_eq!(json(&o)["holds"], true);
    }
    let maps = run(&["quotient-check", "--builtin", "all-maps:3"]);
    assert_eq!(maps.status.code(), Some(1));
    assert!(!json(&maps)["axiom_violations"].as_array().unwrap().is_empty());

    let o = run(&["quotient-check", &d("injections3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["quotient"]["thin"], true);
    assert_eq!(v["quotient"]["cantor_bernstein_violations"], serde_json::json!([]));
    let emitted = run(&["quotient-check", "--builtin", "injections:3", "--emit-spec"]);
    assert_eq!(stdout(&emitted), std::fs::read_to_string(data("injections3.json")).unwrap());
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["hom-exists", "--source", "(0)", "--target", "(1)"]).status.code(), Some(64));
    assert_eq!(run(&["k0-pos", &d("car.json"), "--x", "nonsense"]).status.code(), Some(64));
    assert_eq!(run(&["quotient-check", "--builtin", "cube:3"]).status.code(), Some(64));
    assert_eq!(run(&["telescope", "/nonexistent.json", "--indices", "0"]).status.code(), Some(66));
    // not a diagram
    assert_eq!(run(&["telescope", &d("f.json"), "--indices", "0"]).status.code(), Some(65));
    // inadmissible composite shapes
    assert_eq!(run(&["compose", "--left", &d("g.json"), "--right", &d("f.json")]).status.code(), Some(65));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["equiv", &d("car.json"), &d("four.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["quotient-check", "--builtin", "all-maps:3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
