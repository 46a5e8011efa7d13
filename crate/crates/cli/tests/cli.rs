use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_arsite");

struct Out {
    code: Option<i32>,
    stdout: String,
}

impl Out {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run(args: &[&str], stdin: &str) -> Out {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Out { code: out.status.code(), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn error_kind(o: &Out) -> String {
    o.json()["error"].as_str().unwrap().to_string()
}

#[test]
fn field_info_for_every_field() {
    for d in [1, 2, 3, 7, 11, 19, 43, 67, 163] {
        let o = run(&["field-info", "--field", &d.to_string()], "");
        assert_eq!(o.code, Some(0));
        let v = o.json();
        assert_eq!(v["d"], d);
        assert_eq!(
            v["unit_order"],
            match d {
                1 => 4,
                3 => 6,
                _ => 2,
            }
        );
    }
}

#[test]
fn polygon_output_reads_back_unchanged() {
    let sum = run(&["poly"], r#"{"op":"minkowski","a":"D_K","b":"D_K"}"#);
    assert_eq!(sum.code, Some(0));
    assert_eq!(sum.json(), json!({"field":1,"tag":"proper","sector":[[2,1,0,1]]}));
    let again = run(&["poly"], &sum.stdout);
    assert_eq!(again.json(), sum.json());
    let contains = run(&["poly"], &format!(r#"{{"op":"contains","a":{},"b":"D_K"}}"#, sum.stdout.trim()));
    assert_eq!(contains.json(), json!({"contains": true}));
}

#[test]
fn files_for_input_and_figure() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.json");
    let svg = dir.path().join("p.svg");
    std::fs::write(&input, r#"{"points":[[2,1],[1,-1]]}"#).unwrap();
    let o = run(&["member", "--input", input.to_str().unwrap(), "--svg", svg.to_str().unwrap()], "");
    assert_eq!(o.code, Some(0));
    assert_eq!(o.json()["member"], true);
    let figure = std::fs::read_to_string(&svg).unwrap();
    assert!(figure.contains("<svg") && figure.contains("stroke-dasharray"));
    let missing = run(&["poly", "--input", dir.path().join("none.json").to_str().unwrap()], "");
    assert_eq!((missing.code, error_kind(&missing).as_str()), (Some(2), "malformed"));
}

#[test]
fn exit_codes() {
    let help = run(&["--help"], "");
    assert_eq!(help.code, Some(0));
    for (args, stdin) in [
        (vec!["frobnicate"], ""),
        (vec!["field-info", "--field", "5"], ""),
        (vec!["poly"], "{not json"),
        (vec!["poly"], r#"{"op":"spin","a":"D_K"}"#),
        (vec!["selftest", "--group", "99_nothing"], ""),
        (vec!["stalk"], r#"{"polygon":"D_K"}"#),
    ] {
        let o = run(&args, stdin);
        assert_eq!(o.code, Some(2), "{args:?}");
        assert_eq!(error_kind(&o), "malformed");
    }
    for (args, stdin) in [
        (vec!["dual", "--field", "2"], r#""D_K""#),
        (vec!["poly", "--field", "3"], r#"{"field":1,"tag":"zero"}"#),
        (vec!["adele"], r#"{"op":"act","vector":{"exps":[],"free":[]},"k":[0,0]}"#),
    ] {
        let o = run(&args, stdin);
        assert_eq!(o.code, Some(1), "{args:?}");
        assert_eq!(error_kind(&o), "domain");
    }
}

#[test]
fn dual_round_trip_for_gaussian_integers() {
    let e = run(&["dual"], r#"{"points":[[2,1]]}"#);
    assert_eq!(e.code, Some(0));
    let back = run(&["dual"], &e.stdout);
    let p = run(&["poly"], r#"{"points":[[2,1]]}"#);
    assert_eq!(back.json(), p.json());
}

#[test]
fn primes_and_adeles() {
    let o = run(&["primes", "--bound", "13"], "");
    let primes = o.json()["primes"].as_array().unwrap().len();
    // 2 ramified, 3, 7, 11 inert, 5 and 13 split
    assert_eq!(primes, 1 + 3 + 4);
    let v = run(&["adele"], r#"{"exps":[[{"p":3},2]],"free":[]}"#);
    assert_eq!(v.code, Some(0));
    assert_eq!(v.json()["roundtrip"], true);
}

#[test]
fn tensor_commands() {
    let empty = run(&["tensor", "experiment", "--samples", "0"], "");
    assert_eq!((empty.code, empty.stdout.as_str()), (Some(0), ""));
    let some = run(&["tensor", "experiment", "--samples", "5", "--threads", "2"], "");
    assert_eq!(some.code, Some(0));
    assert_eq!(some.stdout.lines().count(), 5);
    let first: Value = serde_json::from_str(some.stdout.lines().next().unwrap()).unwrap();
    let sep = run(&["tensor", "sep"], &json!({"a": first["a"], "b": first["a"]}).to_string());
    assert_eq!(sep.json(), json!({"separator": "possibly_equal", "normalize_equal": true}));
}

#[test]
fn selftest_single_group() {
    let o = run(&["selftest", "--group", "06_primes_and_ideals", "--seed", "3"], "");
    assert_eq!(o.code, Some(0));
    let last: Value = serde_json::from_str(o.stdout.lines().last().unwrap()).unwrap();
    assert_eq!(last["passed"], 1);
}
