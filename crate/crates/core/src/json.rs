//! JSON encodings. Integers are written as JSON numbers of arbitrary size;
//! on input, decimal strings are accepted as well.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::adelic::{primes_above, ModuleHandle, PrimeIdeal, ValuationVector};
use crate::envelope::{Envelope, Line};
use crate::polygeom::{GeneratorDecomposition, Membership, PolyTag, SymPolygon};
use crate::quadfield::{FieldId, PlanePoint, QuadInt, QuadRat, Rational};
use crate::tensorlab::FormalTensor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JsonError {
    #[error("malformed input: {0}")]
    Malformed(String),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Malformed(msg.into()))
}

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn parse_big(v: &Value) -> Result<BigInt, JsonError> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return bad(format!("expected an integer, got {v}")),
    };
    BigInt::from_str(&s).or_else(|_| bad(format!("expected an integer, got {s}")))
}

pub fn parse_i64(v: &Value) -> Result<i64, JsonError> {
    v.as_i64().map_or_else(|| bad(format!("expected a small integer, got {v}")), Ok)
}

fn array(v: &Value, len: Option<usize>) -> Result<&Vec<Value>, JsonError> {
    let Value::Array(a) = v else { return bad(format!("expected an array, got {v}")) };
    if let Some(n) = len {
        if a.len() != n {
            return bad(format!("expected {n} entries, got {}", a.len()));
        }
    }
    Ok(a)
}

fn field_of(v: &Value, key: &str) -> Result<Value, JsonError> {
    v.get(key).cloned().map_or_else(|| bad(format!("missing key \"{key}\"")), Ok)
}

fn rational_pair(n: &BigInt, d: &BigInt) -> [Value; 2] {
    [big(n), big(d)]
}

fn parse_rational(n: &Value, d: &Value) -> Result<Rational, JsonError> {
    let d = parse_big(d)?;
    if d == BigInt::from(0) {
        return bad("zero denominator");
    }
    Ok(Rational::new(parse_big(n)?, d))
}

impl ToJson for FieldId {
    fn to_json(&self) -> Value {
        json!({ "d": self.d() })
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldId, JsonError> {
    let d = match v {
        Value::Object(_) => parse_i64(&field_of(v, "d")?)?,
        _ => parse_i64(v)?,
    };
    u32::try_from(d)
        .ok()
        .and_then(|d| FieldId::new(d).ok())
        .map_or_else(|| bad(format!("d = {d} is not an admissible field")), Ok)
}

impl ToJson for QuadInt {
    fn to_json(&self) -> Value {
        json!([big(&self.a), big(&self.b)])
    }
}

pub fn quad_int_from_json(field: FieldId, v: &Value) -> Result<QuadInt, JsonError> {
    let a = array(v, Some(2))?;
    Ok(QuadInt::from_big(field, parse_big(&a[0])?, parse_big(&a[1])?))
}

impl ToJson for QuadRat {
    fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": big(&self.den) })
    }
}

/// Accepts `{"num":[a,b],"den":n}`, or a bare `[a, b]` for an integral
/// element.
pub fn quad_rat_from_json(field: FieldId, v: &Value) -> Result<QuadRat, JsonError> {
    if v.is_array() {
        return Ok(QuadRat::from_int(quad_int_from_json(field, v)?));
    }
    let num = quad_int_from_json(field, &field_of(v, "num")?)?;
    let den = match v.get("den") {
        Some(d) => parse_big(d)?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return bad("zero denominator");
    }
    Ok(QuadRat::new(num, den))
}

impl ToJson for PlanePoint {
    fn to_json(&self) -> Value {
        let [a, b] = rational_pair(self.x.numer(), self.x.denom());
        let [c, d] = rational_pair(self.y.numer(), self.y.denom());
        json!([a, b, c, d])
    }
}

fn point_from_json(v: &Value) -> Result<PlanePoint, JsonError> {
    let a = array(v, Some(4))?;
    Ok(PlanePoint::new(parse_rational(&a[0], &a[1])?, parse_rational(&a[2], &a[3])?))
}

impl ToJson for SymPolygon {
    fn to_json(&self) -> Value {
        json!({
            "field": self.field().d(),
            "tag": self.tag().as_str(),
            "sector": self.sector().iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Reads a polygon. For `"proper"`, `"sector"` may be any list of points;
/// the orbit hull is recomputed, so non-canonical input is normalized.
pub fn polygon_from_json(v: &Value) -> Result<SymPolygon, JsonError> {
    let field = field_from_json(&field_of(v, "field")?)?;
    let tag = field_of(v, "tag")?;
    match tag.as_str() {
        Some("empty") => Ok(SymPolygon::empty(field)),
        Some("zero") => Ok(SymPolygon::zero(field)),
        Some("proper") => {
            let pts =
                array(&field_of(v, "sector")?, None)?.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
            if pts.is_empty() {
                return bad("a proper polygon needs at least one sector vertex");
            }
            match SymPolygon::from_points(field, &pts) {
                Ok(p) if p.tag() == PolyTag::Proper => Ok(p),
                _ => bad("sector vertices do not span a polygon with interior"),
            }
        }
        _ => bad(format!("unknown polygon tag {tag}")),
    }
}

impl ToJson for Envelope {
    fn to_json(&self) -> Value {
        match self {
            Envelope::Bottom => json!({ "tag": "bottom" }),
            Envelope::Lines(ls) => json!({
                "lines": ls
                    .iter()
                    .map(|l| {
                        let [a, b] = rational_pair(l.a.numer(), l.a.denom());
                        let [c, d] = rational_pair(l.b.numer(), l.b.denom());
                        json!([a, b, c, d])
                    })
                    .collect::<Vec<_>>()
            }),
        }
    }
}

pub fn envelope_from_json(v: &Value) -> Result<Envelope, JsonError> {
    if v.get("tag").and_then(Value::as_str) == Some("bottom") {
        return Ok(Envelope::Bottom);
    }
    let lines = array(&field_of(v, "lines")?, None)?
        .iter()
        .map(|l| {
            let a = array(l, Some(4))?;
            Ok(Line::new(parse_rational(&a[0], &a[1])?, parse_rational(&a[2], &a[3])?))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(Envelope::from_lines(lines))
}

impl ToJson for PrimeIdeal {
    fn to_json(&self) -> Value {
        json!({ "p": self.p, "kind": self.kind.as_str(), "gen": self.generator.to_json() })
    }
}

pub fn prime_from_json(field: FieldId, v: &Value) -> Result<PrimeIdeal, JsonError> {
    let p = parse_i64(&field_of(v, "p")?)?;
    if p < 2 || !crate::adelic::is_prime(p as u64) {
        return bad(format!("{p} is not a rational prime"));
    }
    let above = primes_above(field, p as u64);
    match v.get("gen") {
        None if above.len() == 1 => Ok(above[0].clone()),
        None => bad(format!("{p} splits; give \"gen\" to pick a prime")),
        Some(g) => {
            let g = quad_int_from_json(field, g)?;
            above
                .into_iter()
                .find(|q| q.generator.divides(&g) && g.divides(&q.generator))
                .map_or_else(|| bad(format!("no prime above {p} is generated by {g}")), Ok)
        }
    }
}

impl ToJson for ValuationVector {
    fn to_json(&self) -> Value {
        json!({
            "field": self.field().d(),
            "exps": self.exps().iter().map(|(p, e)| json!([p.to_json(), e])).collect::<Vec<_>>(),
            "free": self.free().iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn vector_from_json(field: FieldId, v: &Value) -> Result<ValuationVector, JsonError> {
    let exps = match v.get("exps") {
        None => Vec::new(),
        Some(e) => array(e, None)?
            .iter()
            .map(|pe| {
                let pe = array(pe, Some(2))?;
                Ok((prime_from_json(field, &pe[0])?, parse_i64(&pe[1])?))
            })
            .collect::<Result<Vec<_>, JsonError>>()?,
    };
    let free = match v.get("free") {
        None => Vec::new(),
        Some(f) => array(f, None)?.iter().map(|p| prime_from_json(field, p)).collect::<Result<Vec<_>, _>>()?,
    };
    let overlap = free.iter().any(|q| exps.iter().any(|(p, _)| p == q));
    if overlap {
        return bad("a free prime may not carry an exponent");
    }
    ValuationVector::new(field, exps, free).or_else(|e| bad(e.to_string()))
}

impl ToJson for ModuleHandle {
    fn to_json(&self) -> Value {
        match self {
            ModuleHandle::Zero => json!({ "kind": "zero" }),
            ModuleHandle::Principal(g) => json!({ "kind": "principal", "gen": g.to_json() }),
            ModuleHandle::Localized(g, free) => json!({
                "kind": "localized",
                "gen": g.to_json(),
                "free": free.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn module_from_json(field: FieldId, v: &Value) -> Result<ModuleHandle, JsonError> {
    match field_of(v, "kind")?.as_str() {
        Some("zero") => Ok(ModuleHandle::Zero),
        Some(kind @ ("principal" | "localized")) => {
            let g = quad_rat_from_json(field, &field_of(v, "gen")?)?;
            if g.is_zero() {
                return bad("module generator must be nonzero");
            }
            if kind == "principal" {
                return Ok(ModuleHandle::Principal(g));
            }
            let free = array(&field_of(v, "free")?, None)?
                .iter()
                .map(|p| prime_from_json(field, p))
                .collect::<Result<BTreeSet<_>, _>>()?;
            Ok(ModuleHandle::Localized(g, free))
        }
        _ => bad("unknown module kind"),
    }
}

impl ToJson for FormalTensor {
    fn to_json(&self) -> Value {
        json!({
            "pairs": self
                .pairs()
                .iter()
                .map(|(e, f)| json!([e.to_json(), f.to_json()]))
                .collect::<Vec<_>>()
        })
    }
}

/// Reads a tensor as a raw formal sum; callers normalize as needed.
pub fn tensor_from_json(v: &Value) -> Result<FormalTensor, JsonError> {
    let pairs = array(&field_of(v, "pairs")?, None)?
        .iter()
        .map(|p| {
            let p = array(p, Some(2))?;
            Ok((envelope_from_json(&p[0])?, envelope_from_json(&p[1])?))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(FormalTensor::raw(pairs))
}

impl ToJson for GeneratorDecomposition {
    fn to_json(&self) -> Value {
        json!({
            "summands": self
                .summand_sets
                .iter()
                .map(|s| s.iter().map(ToJson::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
    }
}

pub fn decomposition_from_json(field: FieldId, v: &Value) -> Result<GeneratorDecomposition, JsonError> {
    let summand_sets = array(&field_of(v, "summands")?, None)?
        .iter()
        .map(|s| array(s, None)?.iter().map(|q| quad_rat_from_json(field, q)).collect())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorDecomposition { summand_sets })
}

impl ToJson for Membership {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("member".into(), Value::Bool(self.member));
        if let Some(d) = &self.decomposition {
            m.insert("decomposition".into(), d.to_json());
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: u32) -> FieldId {
        FieldId::new(d).unwrap()
    }

    #[test]
    fn polygon_roundtrip() {
        for d in FieldId::all() {
            let p = SymPolygon::dk(d).scale(&QuadRat::from_parts(d, 3, -1, 2)).unwrap();
            assert_eq!(polygon_from_json(&p.to_json()).unwrap(), p);
        }
        let e = SymPolygon::empty(f(7));
        assert_eq!(polygon_from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn big_integers_survive() {
        let n: BigInt = BigInt::from(10).pow(40u32) + BigInt::from(7);
        let q = QuadRat::new(QuadInt::from_big(f(1), n.clone(), BigInt::from(3)), BigInt::from(11));
        let text = q.to_json().to_string();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(quad_rat_from_json(f(1), &back).unwrap(), q);
    }

    #[test]
    fn prime_encoding_matches_documented_shape() {
        let p = &primes_above(f(1), 5)[0];
        assert_eq!(p.to_json().to_string(), r#"{"p":5,"kind":"split","gen":[2,1]}"#);
        assert_eq!(&prime_from_json(f(1), &p.to_json()).unwrap(), p);
    }

    #[test]
    fn envelope_and_tensor_roundtrip() {
        let e = Envelope::from_lines(vec![Line::from_ints(1, 0), Line::from_ints(0, 1)]);
        assert_eq!(envelope_from_json(&e.to_json()).unwrap(), e);
        assert_eq!(envelope_from_json(&json!({"tag":"bottom"})).unwrap(), Envelope::Bottom);
        let t = FormalTensor::raw([(e.clone(), Envelope::zero())]);
        assert_eq!(tensor_from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(polygon_from_json(&json!({"field": 5, "tag": "zero"})).is_err());
        assert!(polygon_from_json(&json!({"field": 2, "tag": "proper", "sector": [[1,1,1,1]]})).is_err());
        assert!(quad_rat_from_json(f(1), &json!({"num":[1,0],"den":0})).is_err());
        assert!(envelope_from_json(&json!({"lines": [[1, 0, 1]]})).is_err());
    }
}
