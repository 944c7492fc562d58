use std::io::Write;
use std::process::{Command, Output, Stdio};

use peakhcl::parse::parse_element;
use peakhcl::FreeElement;
use serde_json::Value;

fn peakhcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakhcl")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn expand_q4_in_h() {
    let out = peakhcl(&["expand", "Q[4]", "--basis", "H"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let x = FreeElement::from_json(&v["element"]).unwrap();
    assert_eq!(x.len(), 5);
    assert_eq!(parse_element(v["expression"].as_str().unwrap()).unwrap(), x);
    assert_eq!(parse_element("2*H[1,3] + 2*H[3,1] - 2*H[1,2,1] - 2*H[2,1,1] + 2*H[1,1,1,1]").unwrap(), x);
}

#[test]
fn json_output_round_trips_through_convert() {
    let first = peakhcl(&["expand", "3/2*K{2}@4 - K{}@4 + N[1,2]", "--basis", "K"]);
    assert_eq!(first.status.code(), Some(0));
    let v = json_of(&first);
    let x = FreeElement::from_json(&v["element"]).unwrap();
    assert_eq!(parse_element(v["expression"].as_str().unwrap()).unwrap(), x);

    let mut child = Command::new(env!("CARGO_BIN_EXE_peakhcl"))
        .args(["convert", "-", "--basis", "F"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&first.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let y = FreeElement::from_json(&json_of(&out)["element"]).unwrap();
    assert_eq!(peakhcl::hopf::convert(&y, peakhcl::Basis::K).unwrap(), x);
}

#[test]
fn decompose_projective_21() {
    let out = peakhcl(&["module", "decompose", "--alpha", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let s = v["summands"].as_array().unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s[0]["peak_set"], serde_json::json!([]));
    assert_eq!(s[0]["n"], 3);
    assert_eq!(s[0]["multiplicity"], 1);
    assert_eq!(s[1]["peak_set"], serde_json::json!([2]));
    assert_eq!(s[1]["multiplicity"], 2);
}

#[test]
fn module_dump_round_trips_to_class() {
    let built = peakhcl(&["module", "build", "--alpha", "1,2", "--kind", "simple"]);
    assert_eq!(built.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("peakhcl-module-{}.json", std::process::id()));
    std::fs::write(&path, &built.stdout).unwrap();
    let out = peakhcl(&["module", "class", "--file", path.to_str().unwrap(), "--format", "text"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[G~] K{}@3");
}

#[test]
fn fock_action_and_pairings() {
    let out = peakhcl(&["act", "Q[1]", "N[1,1]", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2*N[1]");
    let out = peakhcl(&["pair", "Q[1]", "N[1]", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let out = peakhcl(&["pair", "R[2,1]", "F[2,1]", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = peakhcl(&["expand", "H[2,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 5"), "{err}");
    assert!(err.contains("']'"), "{err}");
    assert_eq!(peakhcl(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(peakhcl(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_euler_passes() {
    let out = peakhcl(&["verify", "euler", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["suites"][0]["reports"].as_array().unwrap().len(), 12);
}

#[test]
fn strict_turns_skips_into_exit_3() {
    let lax = peakhcl(&["verify", "projectives", "--max-n", "5"]);
    assert_eq!(lax.status.code(), Some(0));
    assert_eq!(json_of(&lax)["status"], "skipped-resource");
    let strict = peakhcl(&["verify", "projectives", "--max-n", "5", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn verify_all_small_fails_only_on_even_isomorphism() {
    let out = peakhcl(&["verify", "all", "--max-n", "4", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 15);
    for s in suites {
        for r in s["reports"].as_array().unwrap() {
            if r["status"] != "verified" {
                assert_eq!(r["claim"], "simples.even-isomorphism", "{r}");
                assert_eq!(r["witness"]["type"], "M");
                assert_eq!(r["witness"]["pairwise_up_to_parity"], true);
            }
        }
    }
}
