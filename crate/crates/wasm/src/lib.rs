//! Browser bindings. Every call returns a JSON string; the page parses and plots it.
//!
//! Curves in `n` go through the fixed-genus polynomials, so after the first call
//! for a genus each further point is cheap.

use qdvol_core::analytics::{asymptotics, check_stratum, lplus_via_rs, volume_via_pq, AsymptoticMode};
use qdvol_core::spectral::f_table;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
pub struct VolumePoint {
    pub n: u32,
    pub exact: String,
    pub log10: f64,
    /// Value over its large-n estimate.
    pub ratio: Option<f64>,
}

#[derive(Serialize)]
pub struct LplusPoint {
    pub n: u32,
    pub exact: String,
    pub value: f64,
    /// `L+ sqrt(n)` and its limit.
    pub scaled: f64,
    pub limit: Option<f64>,
}

#[derive(Serialize)]
pub struct Coefficient {
    pub indices: Vec<usize>,
    pub value: String,
}

const MAX_GENUS: u32 = 3;
const MAX_POLES: u32 = 400;

fn check_range(g: u32, n_max: u32) -> Result<(), String> {
    if !(1..=MAX_GENUS).contains(&g) {
        return Err(format!("genus must be between 1 and {MAX_GENUS}"));
    }
    if n_max > MAX_POLES {
        return Err(format!("at most {MAX_POLES} poles"));
    }
    Ok(())
}

fn json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn volume_points(g: u32, n_max: u32) -> Result<String, String> {
    check_range(g, n_max)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        if check_stratum(g, n).is_err() {
            continue;
        }
        let v = volume_via_pq(g, n).map_err(|e| e.to_string())?;
        let log10 = qdvol_core::exact::to_f64(v.coefficient()).log10() + v.pi_power() as f64 * std::f64::consts::PI.log10();
        let ratio = asymptotics(g, n, AsymptoticMode::Volume).ok().map(|a| a.ratio());
        out.push(VolumePoint { n, exact: v.to_string(), log10, ratio });
    }
    json(&out)
}

pub fn lplus_points(g: u32, n_max: u32) -> Result<String, String> {
    check_range(g, n_max)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        if check_stratum(g, n).is_err() || 2 * g + n < 4 {
            continue;
        }
        let l = lplus_via_rs(g, n).map_err(|e| e.to_string())?;
        let value = qdvol_core::exact::to_f64(&l);
        let root = (n as f64).sqrt();
        let limit = asymptotics(g, n, AsymptoticMode::Lplus).ok().map(|a| a.estimate() * root);
        out.push(LplusPoint { n, exact: format!("{}/{}", l.numer(), l.denom()), value, scaled: value * root, limit });
    }
    json(&out)
}

pub fn f_coefficients(g: u32, n: u32) -> Result<String, String> {
    if 2 * g + n > 9 {
        return Err("the demo stops at 2g - 2 + n <= 7".into());
    }
    let t = f_table(g, n).map_err(|e| e.to_string())?;
    let out: Vec<Coefficient> =
        t.entries().map(|(k, v)| Coefficient { indices: k, value: format!("{}/{}", v.numer(), v.denom()) }).collect();
    json(&out)
}

#[wasm_bindgen(js_name = volumeCurve)]
pub fn volume_curve(g: u32, n_max: u32) -> Result<String, JsError> {
    volume_points(g, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = lplusCurve)]
pub fn lplus_curve(g: u32, n_max: u32) -> Result<String, JsError> {
    lplus_points(g, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fTable)]
pub fn f_table_json(g: u32, n: u32) -> Result<String, JsError> {
    f_coefficients(g, n).map_err(|e| JsError::new(&e))
}
