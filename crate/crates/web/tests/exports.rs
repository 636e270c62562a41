use serde_json::Value;

use tropical_web::{decode_pruefer, intersect_curves, plane_curve};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn line_has_three_rays() {
    let v = parse(plane_curve("max(0,x,y)"));
    assert_eq!(v["balanced"], true);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c["weight"] == 1 && c["vertices"][0]["exact"] == serde_json::json!(["0", "0"])));
}

#[test]
fn conic_meets_line_twice() {
    let v = parse(intersect_curves("max(0,x,y,2x-1,x+y-1,2y-1)", "max(1/2,x,y-1/3)"));
    assert_eq!(v["total"], 2, "{v}");
}

#[test]
fn line_meets_itself_at_origin() {
    let v = parse(intersect_curves("max(0,x,y)", "max(0,x,y)"));
    assert_eq!(v["total"], 1);
    assert_eq!(v["points"][0]["point"]["exact"], serde_json::json!(["0", "0"]));
}

#[test]
fn pruefer_decodes() {
    let v = parse(decode_pruefer(4, "(5,6,5,6)"));
    assert_eq!(v["curve"], "(1,3)");
    assert_eq!(v["metric"].as_array().unwrap().len(), 6);
}

#[test]
fn errors_are_reported() {
    assert!(parse(plane_curve("max(0,x,")).get("error").is_some());
    assert!(parse(decode_pruefer(4, "5,5")).get("error").is_some());
    assert!(parse(intersect_curves("max(0,x,y)", "oops")).get("error").is_some());
}
