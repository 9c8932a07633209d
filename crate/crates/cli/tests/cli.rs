use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorbit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("valid JSON"))
}

#[test]
fn mnumbers_f4_text_and_json() {
    let o = run(&["mnumbers", "F4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 3 2 1\n"));
    let (code, v) = json(&["mnumbers", "F4"]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], serde_json::json!([2, 3, 2, 1]));
}

#[test]
fn invalid_type_is_usage_error() {
    let o = run(&["mnumbers", "Q9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<family><rank>"), "{err}");
}

#[test]
fn bad_node_is_usage_error() {
    assert_eq!(run(&["hamiltonian", "A2", "--node", "3", "--order", "1"]).status.code(), Some(2));
}

#[test]
fn over_cap_reports_weyl_dimension() {
    let o = run(&["mnumbers", "E8", "--method", "rep", "--dim-cap", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("3875"), "{err}");
}

#[test]
fn verify_commute_g2() {
    let (code, v) = json(&["verify", "commute", "G2", "--samples", "50", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["seed"], 7);
    let pairs = v["details"]["pairs"].as_array().unwrap();
    assert!(!pairs.is_empty());
    for p in pairs {
        assert_eq!(p["passing_samples"], 50);
    }
}

#[test]
fn verify_output_is_deterministic() {
    let a = run(&["--json", "verify", "independence", "B2", "--seed", "3"]);
    let b = run(&["--json", "verify", "independence", "B2", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn envelope_schema_round_trips() {
    let (_, v) = json(&["verify", "structure", "B3"]);
    for key in ["claim", "params", "status", "counterexample", "details"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn g2_quadratic_hamiltonian() {
    let o = run(&["hamiltonian", "G2", "--node", "2", "--order", "2"]);
    assert_eq!(stdout(&o).trim(), "f_{2,2} = f2*e2 + 3*f3*e3 + 3*f4*e4 + f5*e5 + 2*f6*e6 + h2^2");
}

#[test]
fn matrix_basis_gives_trace_and_scalar() {
    let o = run(&["hamiltonian", "B3", "--node", "2", "--order", "2", "--basis", "matrix"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 1/2 * f_{2,2}"));
    assert_eq!(run(&["hamiltonian", "G2", "--node", "1", "--order", "1", "--basis", "matrix"]).status.code(), Some(2));
}

#[test]
fn quantize_check_passes() {
    let o = run(&["quantize", "B2", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[H_j, Q_2k] = 0: true"));
}

#[test]
fn tables_verify_with_two_warnings() {
    let (code, v) = json(&["verify", "tables"]);
    assert_eq!(code, 0);
    let warnings: usize = v["details"]["comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["cells"].as_array().unwrap().iter())
        .filter(|c| c["status"] == "Warning")
        .count();
    assert_eq!(warnings, 2);
}

#[test]
fn heisenberg_tables_json() {
    let (code, v) = json(&["heisenberg-tables", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "G2");
}
