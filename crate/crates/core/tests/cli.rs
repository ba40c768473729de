use std::path::Path;
use std::process::{Command, Output};

use ainfp::barcode::{BarEntry, Barcode};
use ainfp::complex::FilteredSimplicialComplex;
use ainfp::dga::FilteredDgAlgebra;
use ainfp::field::Field;
use ainfp::fixtures;
use serde_json::Value;

fn ainfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfp")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const SQUARE: &str = "0,0\n1,0\n1,1\n0,1\n";

#[test]
fn outputs_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "square.csv", SQUARE);
    for args in [
        vec!["barcode", pts.as_str(), "--field", "Fp", "--p", "3"],
        vec!["transfer", pts.as_str(), "-N", "3", "--seed", "4"],
        vec!["distance", "fixture:torus", "fixture:wedge", "-N", "2"],
        vec!["verify", "fixture:heisenberg", "--field", "Q"],
    ] {
        let a = ainfp(&args);
        let b = ainfp(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ainfp"))
            .args(["distance", "fixture:heisenberg", "fixture:formal", "-N", "3"])
            .env("AINFP_THREADS", threads)
            .output()
            .unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["value"], "inf");
}

#[test]
fn emissions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "square.csv", SQUARE);

    let out = ainfp(&["rips", &pts, "--max-dim", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let c = FilteredSimplicialComplex::from_json_str(&text).unwrap();
    assert_eq!(c, fixtures::square_complex());
    // the complex file is accepted as input and gives the same barcode
    let cfile = write(dir.path(), "square.json", &text);
    let from_points = json(&ainfp(&["barcode", &pts]));
    let from_complex = json(&ainfp(&["barcode", &cfile]));
    assert_eq!(from_points["bars"], from_complex["bars"]);

    let entries: Vec<BarEntry> = serde_json::from_value(from_points["bars"].clone()).unwrap();
    let bars = Barcode::from_entries(&entries).unwrap();
    assert_eq!(serde_json::to_value(bars.to_entries()).unwrap(), from_points["bars"]);

    let alg = fixtures::heisenberg(Field::Fp(3));
    let dga_text = serde_json::to_string(&alg.to_json()).unwrap();
    assert_eq!(FilteredDgAlgebra::from_json_str(&dga_text).unwrap(), alg);
    let dfile = write(dir.path(), "heis.json", &dga_text);
    let out = ainfp(&["verify", &dfile, "-N", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn square_loop_bar() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "square.csv", SQUARE);
    let svg = dir.path().join("bars.svg");
    let out = ainfp(&["barcode", &pts, "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    let h1: Vec<&Value> = v["absolute"].as_array().unwrap().iter().filter(|b| b["degree"] == 1).collect();
    assert_eq!(h1.len(), 1);
    assert_eq!(h1[0]["lower"], 1);
    assert_eq!(h1[0]["upper"].as_f64(), Some(2f64.sqrt()));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn json_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("t.json");
    let out = ainfp(&["transfer", "fixture:formal", "-N", "2", "--json", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["field"], "F2");
    assert_eq!(v["seed"], 0);
    assert!(v["structure"].is_object());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "");
    let out = ainfp(&["barcode", &empty]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bars"], Value::Array(vec![]));

    let bad = write(dir.path(), "bad.txt", "0 1 2\n3 0 4\n5 6 0\n");
    let out = ainfp(&["barcode", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not symmetric"));

    assert_eq!(ainfp(&["barcode", "/nonexistent/x.csv"]).status.code(), Some(1));
    assert_eq!(ainfp(&["barcode", "fixture:nope"]).status.code(), Some(1));
    assert_eq!(ainfp(&["barcode", &empty, "--field", "Fp", "--p", "4"]).status.code(), Some(1));
    assert_eq!(ainfp(&["barcode", &empty, "--field", "Fp"]).status.code(), Some(1));

    let out = ainfp(&["verify", "fixture:heisenberg-mutated"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["passed"], false);

    let out = ainfp(&["distance", "fixture:torus", "fixture:wedge", "--exact-only"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ainfp(&["distance", "fixture:torus", "fixture:wedge", "--classical"]);
    assert_eq!(json(&out)["value"], 0);
}

#[test]
fn lower_triangular_and_full_matrices_agree() {
    let dir = tempfile::tempdir().unwrap();
    let lower = write(dir.path(), "lower.txt", "\n1\n1.4142135623730951 1\n1 1.4142135623730951 1\n");
    let full = write(
        dir.path(),
        "full.txt",
        "0 1 1.4142135623730951 1\n1 0 1 1.4142135623730951\n1.4142135623730951 1 0 1\n1 1.4142135623730951 1 0\n",
    );
    let a = ainfp(&["barcode", &lower]);
    let b = ainfp(&["barcode", &full]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
