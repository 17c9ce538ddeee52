use std::process::{Command, Output};

use serde_json::Value;
use tetralattice::arith::{parse_rational, ParamPoint};
use tetralattice::discrepancy::{Certificate, Verdict};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetralattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn codes_list_and_graph() {
    let o = run(&["codes", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("C1 span{(1,0,-1,-1), (0,1,1,-1)}"));
    assert!(text.contains("orbit 1: C1 C3 C5 C7\norbit 2: C2 C4 C6 C8\n"));

    let v = json(&run(&["codes", "graph", "--format", "json"]));
    assert_eq!(v["edges"], 16);
    assert_eq!(v["bipartite"], true);

    let csv = stdout(&run(&["codes", "list", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn pair_show_schema() {
    let v = json(&run(&["pair", "show", "--format", "json"]));
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["lattice"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["L", "L1", "L2", "L12", "M"]);
    for e in v.as_array().unwrap() {
        assert_eq!(e["generators"].as_array().unwrap().len(), 4);
        let hnf = e["hnf"].as_array().unwrap();
        // lower triangular
        for (i, row) in hnf.iter().enumerate() {
            for j in i + 1..4 {
                assert_eq!(row[j], 0);
            }
        }
    }
    let text = stdout(&run(&["pair", "show"]));
    assert!(text.contains("[L:L1] = 9") && text.contains("[L1:L12] = 3"));
}

#[test]
fn spectrum_rows() {
    let o = run(&[
        "spectrum",
        "--lattice",
        "l1",
        "--params",
        "1",
        "7",
        "13",
        "19",
        "--budget",
        "12",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[..3], ["exponent,coefficient", "0,1", "48,2"]);
}

#[test]
fn fractional_exponents_stay_exact() {
    let csv = stdout(&run(&[
        "spectrum", "--params", "1/2", "2", "3", "5", "--budget", "12", "--format", "csv",
    ]));
    assert!(csv
        .lines()
        .skip(1)
        .any(|l| l.split(',').next().unwrap().contains('/')));
    assert!(!csv.contains('.'));
}

#[test]
fn isospectral_at_rational_point() {
    let o = run(&[
        "isospectral",
        "--params",
        "1/3",
        "2",
        "5/2",
        "7",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["isospectral"], true);
}

#[test]
fn certify_reference_point() {
    let o = run(&["certify", "--params", "1", "7", "13", "19"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("min exponent  144\n"));
    assert!(text.contains("total         -1008\n"));
    assert!(text.contains("verdict       NonIsometric\n"));
}

#[test]
fn certificate_json_round_trip() {
    let o = run(&[
        "certify", "--params", "2/3", "5", "11/2", "9", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in [
        "params",
        "sorted_params",
        "min_exponent",
        "terms",
        "total",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let cert: Certificate = serde_json::from_value(v).unwrap();
    assert_eq!(cert.verdict, Verdict::NonIsometric);
    let mut sum = parse_rational("0").unwrap();
    for t in &cert.terms {
        assert_eq!(t.polynomial.eval(&cert.sorted_params), t.value);
        sum += &t.value;
    }
    assert_eq!(Some(sum), cert.total);
    let expected =
        ParamPoint::from_slice(&["2/3", "5", "11/2", "9"].map(|s| parse_rational(s).unwrap()))
            .unwrap();
    assert_eq!(cert.params, expected);
}

#[test]
fn certify_degenerate_is_inconclusive() {
    let o = run(&["certify", "--params", "1", "1", "2", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Inconclusive"));
}

#[test]
fn errors_exit_one() {
    let o = run(&[
        "certify", "--params", "1", "2.5", "3", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"].as_str().unwrap().contains("2.5"));

    let o = run(&["certify", "--params", "0", "1", "2", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = run(&["certify", "--budget", "20", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o).get("error").is_some());

    let o = run(&["spectrum", "--params", "1", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o).get("error").is_some());
}

#[test]
fn verify_all_anchors() {
    let o = run(&["verify", "--budget", "36"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 14);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));

    let v = json(&run(&["verify", "--budget", "36", "--format", "json"]));
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "pass");
        assert!(r["anchor"].is_string());
    }

    assert_eq!(run(&["verify", "--budget", "0"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["delta", "--budget", "30", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let path = std::env::temp_dir().join(format!("tetralattice-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["certify", "--format", "json", "--out", p]);
    assert!(o.status.success() && o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run(&["certify", "--format", "json"]).stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn delta_routes_agree() {
    let a = run(&[
        "delta", "--route", "theta", "--budget", "24", "--format", "csv",
    ]);
    let b = run(&[
        "delta", "--route", "psi", "--budget", "24", "--format", "csv",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let sym = stdout(&run(&["delta", "--symbolic", "--budget", "36"]));
    assert!(sym.contains("(10,10,2,2) -12*a*c + 12*a*d + 12*b*c - 12*b*d\n"));
    assert!(sym.contains("(25,5,5,1) 96*a*b - 96*a*c\n"));
}
