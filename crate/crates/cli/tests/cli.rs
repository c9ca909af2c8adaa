use std::path::PathBuf;
use std::process::{Command, Output};

use symchain::complex::{direct_sum, koszul, tensor};
use symchain::homology::homology_bounded;
use symchain::io::{parse_complex, serialize_complex, serialize_map};
use symchain::minimal::minimize;
use symchain::sym2::{alpha, sym2};
use symchain::theorems::check_symm07;
use symchain::{ChainMap, FreeComplex, Ring, Scalar};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symchain")).args(args).env_remove("SYMCHAIN_DEGREE_BOUND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn kxy() -> FreeComplex {
    let r = Ring::graded(&["x", "y"]).unwrap();
    koszul(&[Scalar::variable(&r, "x").unwrap(), Scalar::variable(&r, "y").unwrap()]).unwrap()
}

fn line(ring: &Ring, n: i64) -> FreeComplex {
    FreeComplex::concentrated(ring, n, 1, None).unwrap()
}

#[test]
fn constructions_match_the_library() {
    let dir = TempDir::new().unwrap();
    let o = run(&["koszul", "--ring", "QQ[x,y]", "--elements", "x,y"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), serialize_complex(&kxy()));
    let k = write(&dir, "k.json", &stdout(&o));
    let k = k.to_str().unwrap();
    let x = kxy();
    assert_eq!(stdout(&run(&["tensor", k, k])), serialize_complex(&tensor(&x, &x).unwrap()));
    assert_eq!(stdout(&run(&["dsum", k, k])), serialize_complex(&direct_sum(&x, &x).unwrap()));
    assert_eq!(stdout(&run(&["sym2", k])), serialize_complex(&sym2(&x).unwrap().complex));
    assert_eq!(stdout(&run(&["weak-sym2", k])), serialize_complex(&sym2(&x).unwrap().complex));
    assert_eq!(stdout(&run(&["alpha", k])), serialize_map(&alpha(&x).unwrap()));
    assert_eq!(stdout(&run(&["shift", k, "-n", "-3"])), serialize_complex(&x.shift(-3)));
    assert_eq!(stdout(&run(&["minimize", k])), serialize_complex(&minimize(&x).unwrap().complex));
    assert_eq!(stdout(&run(&["homology", k, "--bound", "4"])), homology_bounded(&x, Some(4)).unwrap().to_string());
}

#[test]
fn series_and_checks() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.json", &serialize_complex(&kxy()));
    let o = run(&["series", "--verify", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "identity holds: 1+2t+2t^2+2t^3+t^4\n");
    assert_eq!(stdout(&run(&["series", k.to_str().unwrap()])), "1+2t+t^2\n");

    let q = Ring::rationals();
    let s2r = write(&dir, "s2r.json", &serialize_complex(&line(&q, 2)));
    let o = run(&["check", "symm07", s2r.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conditions: TTTT"));
    assert_eq!(stdout(&o), check_symm07(&line(&q, 2), None).unwrap().to_string());
    let o = run(&["check", "symm07pp", s2r.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conditions"].as_array().unwrap().len(), 6);
    for t in ["s2fpd01", "s2fpd02", "symm09"] {
        assert_eq!(run(&["check", t, s2r.to_str().unwrap()]).status.code(), Some(0), "{t}");
    }
}

#[test]
fn degree_bound_from_environment() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.json", &serialize_complex(&kxy()));
    let o = Command::new(env!("CARGO_BIN_EXE_symchain"))
        .args(["check", "symm09", k.to_str().unwrap()])
        .env("SYMCHAIN_DEGREE_BOUND", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound: 5\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_symchain"))
        .args(["homology", k.to_str().unwrap()])
        .env("SYMCHAIN_DEGREE_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let q = Ring::rationals();
    // a non-quasi-isomorphism: zero map R → R
    let zero = ChainMap::zero(&line(&q, 0), &line(&q, 0)).unwrap();
    let f = write(&dir, "zero.json", &serialize_map(&zero));
    assert_eq!(run(&["quasi-iso", f.to_str().unwrap()]).status.code(), Some(1));
    let id = write(&dir, "id.json", &serialize_map(&ChainMap::identity(&line(&q, 0))));
    assert_eq!(run(&["quasi-iso", id.to_str().unwrap()]).status.code(), Some(0));

    // ∂∂ ≠ 0 is a validation failure
    let bad = serialize_complex(&kxy()).replace("[\"y\"],\n      [\"-x\"]", "[\"y\"],\n      [\"x\"]");
    assert!(parse_complex(&bad).is_err());
    let bad = write(&dir, "bad.json", &bad);
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    let broken = write(&dir, "broken.json", "{\"format\": ");
    assert_eq!(run(&["validate", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["sym2", "/nonexistent.json"]).status.code(), Some(2));

    // 2 is not a unit over ZZ
    let z = write(&dir, "z.json", &serialize_complex(&line(&Ring::integers(), 1)));
    assert_eq!(run(&["check", "symm07", z.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["koszul", "--ring", "QQ[x]", "--elements", "x^"]).status.code(), Some(2));
}

#[test]
fn corpus_and_lemma() {
    let o = run(&["corpus", "run"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("all 8 fixtures pass\n"));
    let o = run(&["poinc", "--coeffs", "2", "--sign", "-", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constant: 2\n"));
    assert!(stdout(&o).contains("(d) Q(t)^2-Q(-t^2) = 2 implies Q = 2: holds"));
    assert_eq!(run(&["poinc", "--coeffs", "0,1", "--sign", "+"]).status.code(), Some(2));
}

#[test]
fn weak_square_over_the_integers() {
    let dir = TempDir::new().unwrap();
    let z = Ring::integers();
    let k = write(&dir, "k3.json", &serialize_complex(&koszul(&[Scalar::from_int(&z, 3)]).unwrap()));
    let o = run(&["weak-sym2", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("H0: Z/3\nH1: 0\nH2: Z/2\n"), "{out}");
}
