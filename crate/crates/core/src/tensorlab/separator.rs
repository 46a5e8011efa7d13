//! The evaluation separator: compares the bivariate functions
//! `F_T(x, y) = max_i e_i(x) + f_i(y)` on `[0, 1]²` exactly.
//!
//! Every bilinear `Ψ_{x,y,θ}(e, f) = [e(x) + f(y) ≥ θ]` factors through
//! `F_T`, so different functions prove different tensors.

use num_traits::{One, Zero};

use super::FormalTensor;
use crate::quadfield::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SepVerdict {
    Distinct,
    PossiblyEqual,
}

impl SepVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            SepVerdict::Distinct => "distinct",
            SepVerdict::PossiblyEqual => "possibly_equal",
        }
    }
}

/// `c0 + cx·x + cy·y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Affine {
    c0: Rational,
    cx: Rational,
    cy: Rational,
}

impl Affine {
    fn eval(&self, p: &(Rational, Rational)) -> Rational {
        &self.c0 + &self.cx * &p.0 + &self.cy * &p.1
    }

    fn sub(&self, o: &Affine) -> Affine {
        Affine { c0: &self.c0 - &o.c0, cx: &self.cx - &o.cx, cy: &self.cy - &o.cy }
    }
}

fn pieces(t: &FormalTensor) -> Vec<Affine> {
    let mut out: Vec<Affine> = Vec::new();
    for (e, f) in t.pairs() {
        for l in e.lines() {
            for m in f.lines() {
                out.push(Affine { c0: &l.a + &m.a, cx: l.slope(), cy: m.slope() });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

type Pt = (Rational, Rational);

/// Sutherland–Hodgman step: keep the part of `poly` where `h ≥ 0`.
fn clip(poly: &[Pt], h: &Affine) -> Vec<Pt> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let hp = h.eval(p);
        let hq = h.eval(q);
        let p_in = hp >= Rational::zero();
        let q_in = hq >= Rational::zero();
        if p_in {
            out.push(p.clone());
        }
        if p_in != q_in && hp != hq {
            let s = &hp / (&hp - &hq);
            out.push((&p.0 + &s * (&q.0 - &p.0), &p.1 + &s * (&q.1 - &p.1)));
        }
    }
    out
}

/// Whether some point of the unit square has `g > h` for every `h` in `hs`.
fn beats_somewhere(g: &Affine, hs: &[Affine]) -> bool {
    let (zero, one) = (Rational::zero(), Rational::one());
    let mut region: Vec<Pt> = vec![
        (zero.clone(), zero.clone()),
        (one.clone(), zero.clone()),
        (one.clone(), one.clone()),
        (zero.clone(), one.clone()),
    ];
    let diffs: Vec<Affine> = hs.iter().map(|h| g.sub(h)).collect();
    for d in &diffs {
        region = clip(&region, d);
        if region.is_empty() {
            return false;
        }
    }
    // Each difference is affine and non-negative on the region; at the
    // vertex average it vanishes only if it vanishes on the whole region.
    let n = Rational::from_integer((region.len() as i64).into());
    let cx = region.iter().fold(Rational::zero(), |acc, p| acc + &p.0) / &n;
    let cy = region.iter().fold(Rational::zero(), |acc, p| acc + &p.1) / &n;
    let c = (cx, cy);
    diffs.iter().all(|d| d.eval(&c) > Rational::zero())
}

/// `F_S ≤ F_T` everywhere on the square.
fn below(s: &[Affine], t: &[Affine]) -> bool {
    if s.is_empty() {
        return true;
    }
    if t.is_empty() {
        return false;
    }
    !s.iter().any(|g| beats_somewhere(g, t))
}

pub fn eval_separator(s: &FormalTensor, t: &FormalTensor) -> SepVerdict {
    let (ps, pt) = (pieces(s), pieces(t));
    if ps == pt || (below(&ps, &pt) && below(&pt, &ps)) {
        SepVerdict::PossiblyEqual
    } else {
        SepVerdict::Distinct
    }
}
