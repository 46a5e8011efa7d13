use serde_json::{json, Value};

use arsite_web::{combine_json, dual_json, membership_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn combine_matches_the_core() {
    let v = parse(combine_json(1, "minkowski", "D_K", "D_K").unwrap());
    assert_eq!(v["polygon"], json!({"field":1,"tag":"proper","sector":[[2,1,0,1]]}));
    assert!(v["svg"].as_str().unwrap().contains("<svg"));
    let u = parse(combine_json(1, "union", "[[2,0]]", "d_k").unwrap());
    assert_eq!(u["polygon"], parse(combine_json(1, "union", "[[2,0]]", "[[2,0]]").unwrap())["polygon"]);
    let m = parse(combine_json(1, "meet", "[[2,0]]", "[[0,0]]").unwrap());
    assert_eq!(m["polygon"]["tag"], "zero");
}

#[test]
fn membership_overlay() {
    let yes = parse(membership_json(3, "[[2,1],[1,-1]]").unwrap());
    assert_eq!(yes["member"], true);
    assert!(yes["svg"].as_str().unwrap().contains("stroke-dasharray"));
    let no = parse(membership_json(2, "[[3,0],[0,1]]").unwrap());
    assert_eq!(no["member"], false);
}

#[test]
fn dual_envelope() {
    let v = parse(dual_json("D_K").unwrap());
    assert!(v["envelope"]["lines"].is_array());
    assert!(v["svg"].as_str().unwrap().contains("polyline"));
}

#[test]
fn bad_inputs_are_messages() {
    assert!(combine_json(5, "union", "D_K", "D_K").unwrap_err().contains('5'));
    assert!(combine_json(1, "rotate", "D_K", "D_K").is_err());
    assert!(membership_json(1, "[[1,").unwrap_err().starts_with("not JSON"));
    assert!(membership_json(3, r#"{"field":1,"tag":"zero"}"#).is_err());
}
