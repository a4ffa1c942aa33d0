use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dglkit_core::lie::to_bracket_terms;
use dglkit_core::models::{build_model, Flavor};
use dglkit_core::scalar::format_scalar;
use dglkit_core::series::bch;
use dglkit_core::{FreeLieAlgebra, Generator};
use serde_json::{json, Value};
use tempfile::TempDir;

fn dglkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dglkit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Number of Lyndon words of length k on r letters.
fn witt(r: i64, k: i64) -> i64 {
    let mobius = |n: i64| -> i64 {
        let (mut n, mut sign, mut p) = (n, 1, 2);
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    };
    (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * r.pow((k / d) as u32)).sum::<i64>() / k
}

#[test]
fn build_model_prints_the_library_model() {
    let out = dglkit(&["build-model", "--n", "1", "--trunc", "6"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let lib: Value = serde_json::from_str(&build_model(1, 6, Flavor::Seed).unwrap().to_json().unwrap()).unwrap();
    assert_eq!(doc, lib);
    let edge = doc["differential"].as_array().unwrap().iter().find(|e| e["generator"] == "a01").unwrap();
    let terms = edge["terms"].as_array().unwrap();
    // ∂a01 = a1 − a0 + ½[a01, a0 + a1] and [a01, ai] = −[ai, a01]
    for expected in [json!(["-1/1", "a0"]), json!(["1/1", "a1"]), json!(["-1/2", "[a0,a01]"]), json!(["-1/2", "[a1,a01]"])] {
        assert!(terms.contains(&expected), "missing {expected}");
    }
}

#[test]
fn check_accepts_built_models_and_rejects_corrupted_ones() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("model.json");
    for flavor in ["seed", "inductive"] {
        let out = dglkit(&["build-model", "--n", "2", "--trunc", "3", "--flavor", flavor, "--out", path_str(&good)]);
        assert_eq!(code(&out), 0);
        let out = dglkit(&["check", "--model", path_str(&good)]);
        assert_eq!(code(&out), 0, "{flavor}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json_of(&out)["passed"], true);
    }
    let text = fs::read_to_string(&good).unwrap();
    assert!(text.contains("\"1/12\""));
    let bad = write(&dir, "bad.json", &text.replacen("\"1/12\"", "\"1/11\"", 1));
    let out = dglkit(&["check", "--model", &bad]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["passed"], false);
}

#[test]
fn malcev_layers_of_the_figure_eight() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "f8.txt", "0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n");
    let out = dglkit(&["malcev", "--complex", &k, "--trunc", "4"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let expected: Vec<i64> = (1..=4).map(|n| witt(2, n)).collect();
    assert_eq!(doc["layer_dims"], json!(expected));
    assert_eq!(doc["group_axioms"], json!([true, true, true, true]));
}

#[test]
fn bch_matches_the_library() {
    let out = dglkit(&["bch", "--trunc", "4", "x", "-1/2*[x,y]+y"]);
    assert_eq!(code(&out), 0);
    let alg = FreeLieAlgebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)], 4).unwrap();
    let (x, y) = (alg.gen(0), alg.gen(1));
    let second = &y - &x.bracket(&y).unwrap().scale(&dglkit_core::scalar::ratio(1, 2));
    let z = bch(&x, &second).unwrap();
    let expected: Vec<Value> = to_bracket_terms(&z)
        .unwrap()
        .into_iter()
        .map(|(c, b)| json!([format_scalar(&c), b]))
        .collect();
    assert_eq!(json_of(&out)["terms"], json!(expected));
}

#[test]
fn homology_and_minimal_model_of_a_circle() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "circle.txt", "0 1\n1 2\n0 2\n");
    let out = dglkit(&["homology", "--complex", &k, "--linear", "--trunc", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let doc = json_of(&out);
    let dims: Vec<(i64, i64)> = doc["degrees"]
        .as_array()
        .unwrap_or_else(|| panic!("{text}"))
        .iter()
        .map(|d| (d["degree"].as_i64().unwrap(), d["dim"].as_i64().unwrap()))
        .filter(|&(_, dim)| dim > 0)
        .collect();
    assert_eq!(dims, vec![(-1, 1), (0, 1)]);

    let out = dglkit(&["model-of-complex", "--complex", &k, "--minimal", "--trunc", "3"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 1);
    assert_eq!(doc["generators"][0]["degree"], 0);
    assert_eq!(doc["differential"][0]["terms"], json!([]));
}

#[test]
fn pi_two_of_an_odd_generator() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "truncation": 3,
        "generators": [{ "name": "y", "degree": 1 }],
        "differential": [{ "generator": "y", "terms": [] }],
    });
    let m = write(&dir, "y.json", &doc.to_string());
    let out = dglkit(&["pi", "--n", "2", "--model", &m]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["dim"], 1);
}

#[test]
fn whitney_suite_passes() {
    for n in ["0", "1", "2", "3"] {
        let out = dglkit(&["whitney", "--n", n, "--check"]);
        assert_eq!(code(&out), 0, "n = {n}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| -> Vec<u8> {
        let p = dir.path().join(name);
        let out = dglkit(&["build-model", "--n", "2", "--trunc", "4", "--symmetric", "--out", path_str(&p)]);
        assert_eq!(code(&out), 0);
        let check = dglkit(&["check", "--model", path_str(&p), "--verbose"]);
        let mut bytes = fs::read(&p).unwrap();
        bytes.extend(check.stdout);
        bytes
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad_complex = write(&dir, "bad.txt", "0 1\n1 q\n");
    let triangle = dir.path().join("tri.json");
    assert_eq!(code(&dglkit(&["build-model", "--n", "2", "--trunc", "2", "--out", path_str(&triangle)])), 0);
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["build-model"],
        vec!["build-model", "--n", "1", "--trunc", "0"],
        vec!["model-of-complex", "--complex", &bad_complex],
        vec!["check", "--model", "/nonexistent/model.json"],
        vec!["pi", "--n", "1", "--model", path_str(&triangle)],
        vec!["bch", "x", "[x,z]"],
    ];
    for args in cases {
        let out = dglkit(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = dglkit(&["model-of-complex", "--complex", &bad_complex]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
