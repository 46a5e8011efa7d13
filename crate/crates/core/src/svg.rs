//! Standalone SVG 1.1 figures. Coordinates are the only decimals produced
//! anywhere; `√d` is carried to 30 significant digits and printed rounded
//! to six places.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::envelope::Envelope;
use crate::polygeom::{GeneratorDecomposition, PolyError, PolyTag, SymPolygon};
use crate::quadfield::{FieldId, PlanePoint, Rational};

const DIGITS: u32 = 30;
const PRINTED: u32 = 6;

fn pow10(n: u32) -> BigInt {
    BigInt::from(10).pow(n)
}

/// Round half away from zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (r.abs() * 2u32) >= d.abs() {
        if n.is_negative() != d.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Fixed-point value with `DIGITS` fractional digits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Fixed(BigInt);

impl Fixed {
    fn from_rational(q: &Rational) -> Fixed {
        Fixed(round_div(&(q.numer() * pow10(DIGITS)), q.denom()))
    }

    fn abs(&self) -> Fixed {
        Fixed(self.0.abs())
    }

    fn show(&self) -> String {
        let v = round_div(&self.0, &pow10(DIGITS - PRINTED));
        let (int, frac) = v.abs().div_rem(&pow10(PRINTED));
        let sign = if v.is_negative() { "-" } else { "" };
        format!("{sign}{int}.{frac:0>width$}", width = PRINTED as usize)
    }
}

/// `√d · 10^DIGITS`, truncated.
fn sqrt_scaled(d: u32) -> BigInt {
    (BigInt::from(d) * pow10(2 * DIGITS)).sqrt()
}

/// Screen coordinates of `x + y√d·i`, with the vertical axis flipped.
fn screen(field: FieldId, p: &PlanePoint) -> (Fixed, Fixed) {
    let s = sqrt_scaled(field.d());
    let x = Fixed::from_rational(&p.x);
    let y = Fixed(-round_div(&(p.y.numer() * &s), p.y.denom()));
    (x, y)
}

fn path(pts: &[(Fixed, Fixed)]) -> String {
    let mut s = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(s, "{cmd}{} {} ", x.show(), y.show()).expect("write to string");
    }
    s.push('Z');
    s
}

fn header(min_x: &Fixed, min_y: &Fixed, w: &Fixed, h: &Fixed) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        min_x.show(),
        min_y.show(),
        w.show(),
        h.show()
    )
}

/// The full orbit as a closed path in a viewBox centered at the origin,
/// with each summand set of `decomposition` overlaid dashed.
pub fn render_polygon(p: &SymPolygon, decomposition: Option<&GeneratorDecomposition>) -> Result<String, PolyError> {
    let field = p.field();
    let mut overlays = Vec::new();
    if let Some(dec) = decomposition {
        for set in &dec.summand_sets {
            let one = GeneratorDecomposition { summand_sets: vec![set.clone()] };
            overlays.push(one.replay(field)?);
        }
    }
    let outline: Vec<_> = p.full_orbit().iter().map(|v| screen(field, v)).collect();
    let dashed: Vec<Vec<_>> =
        overlays.iter().map(|q| q.full_orbit().iter().map(|v| screen(field, v)).collect()).collect();
    let mut r = outline
        .iter()
        .chain(dashed.iter().flatten())
        .flat_map(|(x, y)| [x.abs(), y.abs()])
        .max()
        .unwrap_or(Fixed(BigInt::zero()));
    // margin of 10% plus one unit
    r = Fixed(&r.0 + &r.0 / 10 + pow10(DIGITS));
    let side = Fixed(&r.0 * 2);
    let neg = Fixed(-r.0.clone());
    let mut out = header(&neg, &neg, &side, &side);
    let stroke = Fixed(&r.0 / 100);
    writeln!(
        out,
        "<g fill=\"none\" stroke-width=\"{}\"><path d=\"M{} 0 L{} 0 M0 {} L0 {}\" stroke=\"#bbbbbb\"/>",
        stroke.show(),
        neg.show(),
        r.show(),
        neg.show(),
        r.show()
    )
    .expect("write to string");
    match p.tag() {
        PolyTag::Empty => {}
        PolyTag::Zero => {
            writeln!(out, "<circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"#000000\"/>", stroke.show())
                .expect("write to string");
        }
        PolyTag::Proper => {
            writeln!(out, "<path d=\"{}\" stroke=\"#000000\"/>", path(&outline)).expect("write to string");
        }
    }
    let dash = Fixed(&r.0 / 25);
    for d in &dashed {
        if d.is_empty() {
            continue;
        }
        writeln!(
            out,
            "<path d=\"{}\" stroke=\"#c0392b\" stroke-dasharray=\"{} {}\"/>",
            path(d),
            dash.show(),
            dash.show()
        )
        .expect("write to string");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// The graph of `f` over `[0, 1]` as a polyline through its breakpoints.
pub fn render_envelope(f: &Envelope) -> String {
    let mut ts = vec![Rational::zero()];
    ts.extend(f.breakpoints());
    ts.push(Rational::one());
    let pts: Vec<(Rational, Rational)> =
        ts.into_iter().filter_map(|t| f.eval_at(&t).expect("t in [0, 1]").map(|v| (t, v))).collect();
    let lo = pts.iter().map(|p| p.1.clone()).min().unwrap_or_else(Rational::zero).min(Rational::zero());
    let hi = pts.iter().map(|p| p.1.clone()).max().unwrap_or_else(Rational::one).max(Rational::one());
    let pad = (&hi - &lo) / Rational::from_integer(10.into());
    let min_y = Fixed::from_rational(&(-(&hi + &pad)));
    let h = Fixed::from_rational(&(&hi - &lo + &pad * Rational::from_integer(2.into())));
    let min_x = Fixed::from_rational(&Rational::new((-1).into(), 10.into()));
    let w = Fixed::from_rational(&Rational::new(12.into(), 10.into()));
    let stroke = Fixed(&h.0 / 200);
    let mut out = header(&min_x, &min_y, &w, &h);
    writeln!(
        out,
        "<g fill=\"none\" stroke-width=\"{}\"><path d=\"M0 0 L1.000000 0 M0 {} L0 {}\" stroke=\"#bbbbbb\"/>",
        stroke.show(),
        Fixed::from_rational(&-&hi).show(),
        Fixed::from_rational(&-&lo).show()
    )
    .expect("write to string");
    if !pts.is_empty() {
        let coords: Vec<String> = pts
            .iter()
            .map(|(t, v)| format!("{},{}", Fixed::from_rational(t).show(), Fixed::from_rational(&-v).show()))
            .collect();
        writeln!(out, "<polyline points=\"{}\" stroke=\"#000000\"/>", coords.join(" ")).expect("write to string");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rounding() {
        let q = |n: i64, d: i64| Fixed::from_rational(&Rational::new(n.into(), d.into())).show();
        assert_eq!(q(1, 3), "0.333333");
        assert_eq!(q(-2, 3), "-0.666667");
        assert_eq!(q(5, 1), "5.000000");
        assert_eq!(q(-1, 2_000_000), "-0.000001");
    }

    #[test]
    fn sqrt_digits() {
        assert_eq!(sqrt_scaled(2).to_string(), "1414213562373095048801688724209");
        assert_eq!(sqrt_scaled(163).to_string()[..12], *"127671453348");
    }

    #[test]
    fn polygon_svg_is_deterministic() {
        let f = FieldId::new(2).unwrap();
        let p = SymPolygon::dk(f);
        let a = render_polygon(&p, None).unwrap();
        assert_eq!(a, render_polygon(&p, None).unwrap());
        assert!(a.contains("viewBox=\"-"));
        assert!(a.contains("1.414214"));
        assert!(!a.contains("stroke-dasharray"));
        let m = p.in_generator_semiring().unwrap();
        let b = render_polygon(&p, m.decomposition.as_ref()).unwrap();
        assert!(b.contains("stroke-dasharray"));
    }

    #[test]
    fn envelope_svg() {
        let e = crate::envelope::phi(&SymPolygon::dk(FieldId::new(1).unwrap())).unwrap();
        let s = render_envelope(&e);
        assert!(s.contains("<polyline points=\"0.000000,-1.000000 0.500000,-0.500000 1.000000,-1.000000\""));
        assert!(!render_envelope(&Envelope::Bottom).contains("polyline"));
    }
}
