use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_wachspress"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json, out)
}

fn all_passed(v: &Value) -> bool {
    v["checks"].as_array().map_or(true, |cs| cs.iter().all(|c| c["passed"] == true))
}

#[test]
fn adjoint_of_pentagon_both_methods() {
    let (code, v, _) = run(&["adjoint", "fixtures/pentagon", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["degree"], 2);
    assert_eq!(v["result"]["warren"], v["result"]["kernel"]);
    assert!(all_passed(&v));
}

#[test]
fn segre_prints_the_example() {
    let (code, v, _) = run(&["segre", "--points", "2,6;3,4;4,3;5,1;7,0"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["adjoint"],
        "1-15t_1-22t_2+71t_1^2+212t_1t_2+95t_2^2-105t_1^3-476t_1^2t_2-511t_1t_2^2-84t_2^3"
    );
    assert_eq!(v["result"]["denominator"], "X_2(1+2X_1+6X_2)(1+3X_1+4X_2)(1+5X_1+X_2)(1+7X_1)");
}

#[test]
fn coords_at_square_center() {
    let (code, v, _) = run(&["coords", "fixtures/unit-square", "--point", "1/2,1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["coordinates"], serde_json::json!(["1/4", "1/4", "1/4", "1/4"]));
}

#[test]
fn map_check_is_reproducible() {
    let args = ["map-check", "quadrilateral", "--suite", "all", "--seed", "5"];
    let (code, v, a) = run(&args);
    let (_, _, b) = run(&args);
    assert_eq!(code, 0);
    assert!(all_passed(&v));
    assert_eq!(v["seed"], 5);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn map_check_dim_needs_low_degree_adjoint() {
    let (code, _, _) = run(&["map-check", "heptagon", "--suite", "dim"]);
    assert_eq!(code, 2);
}

#[test]
fn residual_and_moments() {
    let (code, v, _) = run(&["residual", "triangular-prism"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["codims"], serde_json::json!({"2": 1, "3": 1}));
    let (code, v, _) = run(&["moments", "triangle", "--max-degree", "3", "--verify"]);
    assert_eq!(code, 0);
    assert!(all_passed(&v));
    assert_eq!(v["result"]["moments"].as_array().unwrap().len(), 10);
}

#[test]
fn invalid_inputs_exit_with_2() {
    assert_eq!(run(&["coords", "no-such-polytope", "--point", "0,0"]).0, 2);
    assert_eq!(run(&["coords", "unit-square", "--point", "1/0,1"]).0, 2);
    assert_eq!(run(&["coords", "unit-square", "--point", "1,2,3"]).0, 2);
    assert_eq!(run(&["moments", "cube-regular", "--verify"]).0, 2);
    assert_eq!(run(&["segre", "--points", "1,x"]).0, 2);
    assert_eq!(run(&["adjoint", "cube-regular", "--method", "kernel"]).0, 2);
}

#[test]
fn invariants_of_a_fixture() {
    let (code, v, _) = run(&["invariants3d", "pentagonal-prism", "--no-gamma"]);
    assert_eq!(code, 0);
    let inv = &v["result"]["invariants"];
    assert_eq!(inv["wachspress"], serde_json::json!([14, 8]));
    assert_eq!(inv["d_bar"], serde_json::json!([18, 11]));
    assert_eq!(v["result"]["irreducibility_filter"]["passes"], true);
}

#[test]
fn table_reconciliation_without_gamma() {
    let (code, v, _) = run(&["invariants3d", "--table1", "--no-gamma"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert!(v["result"]["rejected"].as_array().unwrap().contains(&Value::from("7 7 4 4 4 4 4 4 4")));
}

#[test]
fn plot_writes_svg() {
    let path = std::env::temp_dir().join(format!("wachspress-plot-{}.svg", std::process::id()));
    let (code, _, _) = run(&["plot", "pentagon", "--svg", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("<svg") && text.contains("<polygon") && text.contains("<circle"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn fixtures_regenerate_identically() {
    let dir = std::env::temp_dir().join(format!("wachspress-cli-fixtures-{}", std::process::id()));
    let (code, _, _) = run(&["fixtures", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let repo = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let entry = entry.unwrap();
        let committed = std::fs::read(std::path::Path::new(repo).join(entry.file_name())).unwrap();
        assert_eq!(std::fs::read(entry.path()).unwrap(), committed, "{:?}", entry.file_name());
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
