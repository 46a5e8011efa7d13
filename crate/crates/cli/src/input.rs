//! Input parsing with the CLI's shorthands layered over the core schemas.

use serde_json::Value;

use arsite::adelic::ValuationVector;
use arsite::envelope::Envelope;
use arsite::json::{
    envelope_from_json, field_from_json, polygon_from_json, quad_rat_from_json, tensor_from_json, vector_from_json,
    JsonError,
};
use arsite::polygeom::SymPolygon;
use arsite::quadfield::{FieldId, QuadRat, Rational};
use arsite::tensorlab::{FormalTensor, ReducedElement};

use crate::CliError;

pub fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

pub fn key<'a>(v: &'a Value, names: &[&str]) -> Result<&'a Value, CliError> {
    names.iter().find_map(|n| v.get(*n)).ok_or_else(|| malformed(format!("missing key \"{}\"", names[0])))
}

pub fn op(v: &Value) -> Option<&str> {
    v.get("op").and_then(Value::as_str)
}

/// A polygon given by the full schema, the string `"D_K"`, or
/// `{"points": [element, …]}` spanning the orbit hull of the elements.
pub fn polygon(field: FieldId, v: &Value) -> Result<SymPolygon, CliError> {
    if v.as_str() == Some("D_K") {
        return Ok(SymPolygon::dk(field));
    }
    if let Some(pts) = v.get("points") {
        let field = match v.get("field") {
            Some(f) => field_from_json(f)?,
            None => field,
        };
        let Value::Array(pts) = pts else { return Err(malformed("\"points\" must be an array")) };
        let elems = pts.iter().map(|p| quad_rat_from_json(field, p)).collect::<Result<Vec<_>, _>>()?;
        return SymPolygon::from_elements(field, &elems).map_err(CliError::from);
    }
    let p = polygon_from_json(v)?;
    if p.field() != field {
        return Err(CliError::Domain(format!("polygon over d = {} given with --field {}", p.field().d(), field.d())));
    }
    Ok(p)
}

pub fn element(field: FieldId, v: &Value) -> Result<QuadRat, CliError> {
    Ok(quad_rat_from_json(field, v)?)
}

pub fn envelope(v: &Value) -> Result<Envelope, CliError> {
    Ok(envelope_from_json(v)?)
}

pub fn is_envelope(v: &Value) -> bool {
    v.get("lines").is_some() || v.get("tag").and_then(Value::as_str) == Some("bottom")
}

pub fn rational(v: &Value) -> Result<Rational, CliError> {
    let err = || malformed(format!("expected [num, den], got {v}"));
    let Value::Array(a) = v else { return Err(err()) };
    let n = a.first().ok_or_else(err)?;
    let d = a.get(1).map_or(Ok(1.into()), arsite::json::parse_big)?;
    let n = arsite::json::parse_big(n)?;
    if d == 0.into() {
        return Err(malformed("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn vector(field: FieldId, v: &Value) -> Result<ValuationVector, CliError> {
    if let Some(f) = v.get("field") {
        if field_from_json(f)? != field {
            return Err(CliError::Domain(format!("vector over d = {f} given with --field {}", field.d())));
        }
    }
    Ok(vector_from_json(field, v)?)
}

pub fn tensor(v: &Value) -> Result<FormalTensor, CliError> {
    Ok(tensor_from_json(v)?)
}

pub fn reduced(v: &Value) -> Result<ReducedElement, CliError> {
    Ok(ReducedElement::new(tensor(key(v, &["p"])?)?, tensor(key(v, &["q"])?)?))
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Malformed(e.to_string())
    }
}
