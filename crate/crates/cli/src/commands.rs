use serde_json::{json, Value};

use arsite::adelic::{
    adele_from_module, complementary_generator, fiber_member, iso_class_equal, module_from_adele, point_iso,
    primes_up_to, FiberPoint, FiniteSection,
};
use arsite::envelope::{lattice_meet, phi, phi_inv};
use arsite::json::{decomposition_from_json, module_from_json, prime_from_json, ToJson};
use arsite::polygeom::{
    aut_orbit_equiv, global_sections_check, membership_in_generated, reconstruct_from_summits, sector_decompose,
    stalk_scale, GeneratorDecomposition, Membership, SymPolygon,
};
use arsite::quadfield::FieldId;
use arsite::svg::{render_envelope, render_polygon};
use arsite::tensorlab::{
    cancellativity_experiment, eval_separator, normalize, normalize_equal, reduced_equal, ReducedVerdict,
};

use crate::input::{self, key, malformed, op};
use crate::{CliError, Output};

pub fn field_info(field: FieldId) -> Output {
    let (c1, c0) = field.omega_min_poly();
    Output::Json(json!({
        "d": field.d(),
        "disc": -i64::from(field.abs_discriminant()),
        "half_integral": field.half_integral(),
        "omega_min_poly": [1, c1, c0],
        "unit_order": field.unit_order(),
        "units": field.units().iter().map(ToJson::to_json).collect::<Vec<_>>(),
        "dk": SymPolygon::dk(field).to_json(),
        "inverse_different": complementary_generator(field).to_json(),
    }))
}

pub fn poly(field: FieldId, v: &Value) -> Result<(Output, Option<SymPolygon>), CliError> {
    let a = || match (op(v), v.get("a").or(v.get("A"))) {
        (None, None) => input::polygon(field, v),
        _ => input::polygon(field, key(v, &["a", "A"])?),
    };
    let b = || input::polygon(field, key(v, &["b", "B"])?);
    let poly_out = |p: SymPolygon| Ok((Output::Json(p.to_json()), Some(p)));
    match op(v).unwrap_or("normalize") {
        "normalize" => poly_out(a()?),
        "union" => poly_out(a()?.hull_union(&b()?)?),
        "minkowski" => poly_out(a()?.minkowski_sum(&b()?)?),
        "meet" => poly_out(a()?.lattice_meet(&b()?)?),
        "scale" => poly_out(a()?.scale(&input::element(field, key(v, &["k"])?)?)?),
        "contains" => Ok((Output::Json(json!({ "contains": a()?.contains(&b()?) })), None)),
        "decompose" => {
            let s = sector_decompose(&a()?)?;
            Ok((Output::Json(json!({ "summits": s.iter().map(ToJson::to_json).collect::<Vec<_>>() })), None))
        }
        "reconstruct" => {
            let Value::Array(s) = key(v, &["summits"])? else { return Err(malformed("\"summits\" must be an array")) };
            let s = s.iter().map(|q| input::element(field, q)).collect::<Result<Vec<_>, _>>()?;
            poly_out(reconstruct_from_summits(field, &s)?)
        }
        "global_section" => Ok((Output::Json(json!({ "global_section": global_sections_check(&a()?) })), None)),
        "aut_orbit" => {
            let mu = input::element(field, key(v, &["mu"])?)?;
            let nu = input::element(field, key(v, &["nu"])?)?;
            Ok((Output::Json(json!({ "equivalent": aut_orbit_equiv(&mu, &nu)? })), None))
        }
        other => Err(malformed(format!("unknown poly op \"{other}\""))),
    }
}

pub fn member(field: FieldId, v: &Value) -> Result<(Membership, SymPolygon), CliError> {
    if let Some(p) = v.get("polygon") {
        let p = input::polygon(field, p)?;
        let Value::Array(gens) = key(v, &["generators"])? else {
            return Err(malformed("\"generators\" must be an array"));
        };
        let gens = gens.iter().map(|g| input::element(field, g)).collect::<Result<Vec<_>, _>>()?;
        return Ok((membership_in_generated(&p, &gens)?, p));
    }
    let p = input::polygon(field, v)?;
    Ok((p.in_generator_semiring()?, p))
}

pub enum Dual {
    Envelope(arsite::envelope::Envelope),
    Polygon(SymPolygon),
    Other(Value),
}

pub fn dual(field: FieldId, v: &Value) -> Result<Dual, CliError> {
    if field.d() != 1 {
        return Err(CliError::Domain(format!("the functional model exists only for d = 1 (got d = {})", field.d())));
    }
    let f = || input::envelope(key(v, &["f", "envelope"])?);
    let g = || input::envelope(key(v, &["g"])?);
    let implicit = if input::is_envelope(v) { "phi_inv" } else { "phi" };
    match op(v).unwrap_or(implicit) {
        "phi" => {
            let p = match v.get("polygon") {
                Some(p) => input::polygon(field, p)?,
                None => input::polygon(field, v)?,
            };
            Ok(Dual::Envelope(phi(&p)?))
        }
        "phi_inv" => {
            let e = if input::is_envelope(v) { input::envelope(v)? } else { f()? };
            Ok(Dual::Polygon(phi_inv(&e)))
        }
        "max" => Ok(Dual::Envelope(f()?.tmax(&g()?))),
        "plus" => Ok(Dual::Envelope(f()?.tplus(&g()?))),
        "meet" => lattice_meet(&f()?, &g()?)
            .map(Dual::Envelope)
            .ok_or_else(|| CliError::Domain("meet needs envelopes of lattice polygons".into())),
        "leq" => Ok(Dual::Other(json!({ "leq": f()?.leq(&g()?) }))),
        "eval" => {
            let t = input::rational(key(v, &["t"])?)?;
            let value = f()?.eval_at(&t)?;
            Ok(Dual::Other(json!({
                "value": value.map(|x| json!([arsite::json::big(x.numer()), arsite::json::big(x.denom())]))
            })))
        }
        other => Err(malformed(format!("unknown dual op \"{other}\""))),
    }
}

pub fn primes(field: FieldId, bound: u64) -> Output {
    let ps: Vec<Value> = primes_up_to(field, bound).iter().map(ToJson::to_json).collect();
    Output::Json(json!({ "field": field.d(), "bound": bound, "primes": ps }))
}

pub fn adele(field: FieldId, bound: u64, v: &Value) -> Result<Output, CliError> {
    let vec_at = |k: &str| input::vector(field, key(v, &[k])?);
    let implicit = if v.get("exps").is_some() || v.get("free").is_some() { "roundtrip" } else { "" };
    let out = match op(v).unwrap_or(implicit) {
        "module" => module_from_adele(&vec_at("vector")?).to_json(),
        "vector" => adele_from_module(&module_from_json(field, key(v, &["module"])?)?)?.to_json(),
        "roundtrip" => {
            let a = if implicit.is_empty() { vec_at("vector")? } else { input::vector(field, v)? };
            let m = module_from_adele(&a);
            let back = adele_from_module(&m)?;
            json!({ "module": m.to_json(), "vector": back.to_json(), "roundtrip": back == a })
        }
        "iso" => {
            let w = iso_class_equal(&vec_at("a")?, &vec_at("b")?)?;
            json!({ "isomorphic": w.is_some(), "witness": w.map(|k| k.to_json()) })
        }
        "contains" => {
            let q = input::element(field, key(v, &["element"])?)?;
            json!({ "contains": module_from_adele(&vec_at("vector")?).contains(&q)? })
        }
        "act" => vec_at("vector")?.act(&input::element(field, key(v, &["k"])?)?)?.to_json(),
        "point_iso" => {
            let lam = input::element(field, key(v, &["lambda"])?)?;
            let mu = input::element(field, key(v, &["mu"])?)?;
            json!({ "isomorphic": point_iso(&vec_at("a")?, &lam, &vec_at("b")?, &mu)? })
        }
        "section" => {
            let Value::Array(vals) = key(v, &["values"])? else { return Err(malformed("\"values\" must be an array")) };
            let mut s = FiniteSection::zero(field, bound);
            for pv in vals {
                let Value::Array(pv) = pv else { return Err(malformed("section values are [prime, element]")) };
                if pv.len() != 2 {
                    return Err(malformed("section values are [prime, element]"));
                }
                s.values.insert(prime_from_json(field, &pv[0])?, input::element(field, &pv[1])?);
            }
            s.validate()?;
            json!({ "valid": true })
        }
        "" => return Err(malformed("missing key \"op\"")),
        other => return Err(malformed(format!("unknown adele op \"{other}\""))),
    };
    Ok(Output::Json(out))
}

/// The polygon to draw and an optional overlay.
pub type Figure = (SymPolygon, Option<GeneratorDecomposition>);

pub fn stalk(field: FieldId, v: &Value) -> Result<(Output, Option<Figure>), CliError> {
    let p = input::polygon(field, key(v, &["polygon"])?)?;
    if let Some(k) = v.get("k") {
        let k = input::element(field, k)?;
        let s = stalk_scale(&k, &p)?;
        let m = s.membership()?;
        let out = json!({
            "generator": s.generator.to_json(),
            "polygon": s.polygon.to_json(),
            "membership": m.to_json(),
        });
        return Ok((Output::Json(out), Some((s.polygon, m.decomposition))));
    }
    let point = match v.get("prime") {
        Some(q) => FiberPoint::Closed(prime_from_json(field, q)?),
        None if v.get("generic").and_then(Value::as_bool) == Some(true) => FiberPoint::Generic,
        None => return Err(malformed("give \"k\", \"prime\" or \"generic\": true")),
    };
    let fiber = if matches!(point, FiberPoint::Generic) { "boolean" } else { "stalk" };
    let member = fiber_member(&point, &p)?;
    Ok((Output::Json(json!({ "fiber": fiber, "member": member })), Some((p, None))))
}

pub fn tensor_normalize(v: &Value) -> Result<Output, CliError> {
    Ok(Output::Json(normalize(&input::tensor(v)?).to_json()))
}

pub fn tensor_sep(v: &Value) -> Result<Output, CliError> {
    let a = input::tensor(key(v, &["a"])?)?;
    let b = input::tensor(key(v, &["b"])?)?;
    Ok(Output::Json(json!({
        "separator": eval_separator(&a, &b).as_str(),
        "normalize_equal": normalize_equal(&a, &b),
    })))
}

pub fn tensor_reduce(v: &Value, witness_bound: usize) -> Result<Output, CliError> {
    let a = input::reduced(key(v, &["a"])?)?;
    let b = input::reduced(key(v, &["b"])?)?;
    let hints = match v.get("hints") {
        None => Vec::new(),
        Some(Value::Array(h)) => h.iter().map(input::tensor).collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(malformed("\"hints\" must be an array")),
    };
    let out = match reduced_equal(&a, &b, witness_bound, &hints) {
        ReducedVerdict::Equal { witness } => json!({ "verdict": "equal", "witness": witness.to_json() }),
        ReducedVerdict::Distinct => json!({ "verdict": "distinct" }),
        ReducedVerdict::Unknown => json!({ "verdict": "unknown", "witness_bound": witness_bound }),
    };
    Ok(Output::Json(out))
}

pub fn tensor_experiment(samples: u64, seed: u64, threads: usize) -> (Output, bool) {
    let records = cancellativity_experiment(samples, seed, threads);
    let consistent = records.iter().all(|r| r.consistent());
    let mut s = String::new();
    for r in &records {
        s.push_str(&r.to_json().to_string());
        s.push('\n');
    }
    (Output::Lines(s), consistent)
}

pub fn render(field: FieldId, v: &Value, overlay: bool) -> Result<String, CliError> {
    if input::is_envelope(v) {
        return Ok(render_envelope(&input::envelope(v)?));
    }
    if let Some(e) = v.get("envelope") {
        return Ok(render_envelope(&input::envelope(e)?));
    }
    let (p, dec) = match v.get("polygon") {
        Some(p) => {
            let p = input::polygon(field, p)?;
            let dec = v.get("decomposition").map(|d| decomposition_from_json(p.field(), d)).transpose()?;
            (p, dec)
        }
        None => (input::polygon(field, v)?, None),
    };
    let dec = match dec {
        Some(d) => Some(d),
        None if overlay => p.in_generator_semiring()?.decomposition,
        None => None,
    };
    Ok(render_polygon(&p, dec.as_ref())?)
}
