//! Browser bindings. Each export takes text from the page and returns a JSON
//! string carrying the result and an SVG figure; errors come back as plain
//! message strings.
//!
//! Polygons are written as `D_K`, as a JSON array of elements (`[a, b]`
//! for `a + bω`, or `{"num": [a, b], "den": n}`) whose orbit hull is taken,
//! or in the full polygon schema.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use arsite::envelope::phi;
use arsite::json::{polygon_from_json, quad_rat_from_json, ToJson};
use arsite::polygeom::SymPolygon;
use arsite::quadfield::FieldId;
use arsite::svg::{render_envelope, render_polygon};

fn field(d: u32) -> Result<FieldId, String> {
    FieldId::new(d).map_err(|e| e.to_string())
}

pub fn parse_polygon(field: FieldId, text: &str) -> Result<SymPolygon, String> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("D_K") {
        return Ok(SymPolygon::dk(field));
    }
    let v: Value = serde_json::from_str(text).map_err(|e| format!("not JSON: {e}"))?;
    match &v {
        Value::Array(pts) => {
            let pts = pts.iter().map(|p| quad_rat_from_json(field, p)).collect::<Result<Vec<_>, _>>();
            SymPolygon::from_elements(field, &pts.map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        _ => {
            let p = polygon_from_json(&v).map_err(|e| e.to_string())?;
            if p.field() != field {
                return Err(format!("polygon is over d = {}", p.field().d()));
            }
            Ok(p)
        }
    }
}

fn polygon_result(p: &SymPolygon) -> Result<String, String> {
    let svg = render_polygon(p, None).map_err(|e| e.to_string())?;
    Ok(json!({ "polygon": p.to_json(), "svg": svg }).to_string())
}

/// `op` is `union`, `minkowski` or `meet`.
pub fn combine_json(d: u32, op: &str, a: &str, b: &str) -> Result<String, String> {
    let f = field(d)?;
    let (a, b) = (parse_polygon(f, a)?, parse_polygon(f, b)?);
    let r = match op {
        "union" => a.hull_union(&b),
        "minkowski" => a.minkowski_sum(&b),
        "meet" => a.lattice_meet(&b),
        _ => return Err(format!("unknown operation \"{op}\"")),
    };
    polygon_result(&r.map_err(|e| e.to_string())?)
}

pub fn membership_json(d: u32, a: &str) -> Result<String, String> {
    let p = parse_polygon(field(d)?, a)?;
    let m = p.in_generator_semiring().map_err(|e| e.to_string())?;
    let svg = render_polygon(&p, m.decomposition.as_ref()).map_err(|e| e.to_string())?;
    let mut out = m.to_json();
    out["svg"] = svg.into();
    Ok(out.to_string())
}

/// Support-function envelope of a polygon over the Gaussian integers.
pub fn dual_json(a: &str) -> Result<String, String> {
    let p = parse_polygon(field(1)?, a)?;
    let e = phi(&p).map_err(|e| e.to_string())?;
    Ok(json!({ "envelope": e.to_json(), "svg": render_envelope(&e) }).to_string())
}

#[wasm_bindgen]
pub fn combine(d: u32, op: &str, a: &str, b: &str) -> Result<String, JsValue> {
    combine_json(d, op, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn membership(d: u32, a: &str) -> Result<String, JsValue> {
    membership_json(d, a).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dual(a: &str) -> Result<String, JsValue> {
    dual_json(a).map_err(|e| JsValue::from_str(&e))
}
