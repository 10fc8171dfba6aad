use qdvol_wasm::{f_coefficients, lplus_points, volume_points};
use serde_json::Value;

fn parse(s: String) -> Vec<Value> {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn volume_curve_starts_with_known_values() {
    let pts = parse(volume_points(1, 4).unwrap());
    assert_eq!(pts[0]["n"], 2);
    assert_eq!(pts[0]["exact"], "1/3 * pi^4");
    assert_eq!(pts[1]["exact"], "11/60 * pi^6");
}

#[test]
fn lplus_curve_approaches_its_limit() {
    let pts = parse(lplus_points(1, 300).unwrap());
    assert_eq!(pts[0]["exact"], "2/3");
    let last = pts.last().unwrap();
    let (s, l) = (last["scaled"].as_f64().unwrap(), last["limit"].as_f64().unwrap());
    assert!((s / l - 1.0).abs() < 0.05);
}

#[test]
fn f_table_lists_nonzero_entries() {
    let pts = parse(f_coefficients(2, 1).unwrap());
    assert_eq!(pts.len(), 5);
    assert_eq!(pts[4]["value"], "1/9216");
    assert!(f_coefficients(4, 2).is_err());
    assert!(volume_points(0, 5).is_err());
}
