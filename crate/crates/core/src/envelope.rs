//! Convex piecewise-affine envelopes on the segment from `1` to `i`.
//!
//! A line `(a, b)` is the function `t ↦ a + (b − a)·t` on `[0, 1]`, i.e. the
//! linear form `(x, y) ↦ ax + by` restricted to `x + y = 1`. An envelope is
//! the pointwise maximum of finitely many lines, or `−∞`.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::polygeom::SymPolygon;
use crate::quadfield::{FieldId, PlanePoint, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvError {
    #[error("t = {0} is outside [0, 1]")]
    OutOfDomain(Rational),
    #[error("the functional model exists only for d = 1 (got d = {0})")]
    WrongField(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational) -> Self {
        Line { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Line { a: Rational::from_integer(a.into()), b: Rational::from_integer(b.into()) }
    }

    pub fn slope(&self) -> Rational {
        &self.b - &self.a
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.a + self.slope() * t
    }

    fn add(&self, o: &Line) -> Line {
        Line { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

/// Abscissa where `l` and `m` agree; slopes must differ.
fn meet(l: &Line, m: &Line) -> Rational {
    (&l.a - &m.a) / (m.slope() - l.slope())
}

fn small_lines(ls: &[Line]) -> Option<Vec<(i128, i128)>> {
    ls.iter()
        .map(|l| {
            let a = l.a.is_integer().then(|| l.a.to_integer().to_i64()).flatten()?;
            let b = l.b.is_integer().then(|| l.b.to_integer().to_i64()).flatten()?;
            Some((i128::from(a), i128::from(b)))
        })
        .collect()
}

/// [`Envelope::leq`] for integer lines; `t = p/q` is handled as `q·f(t)`.
fn leq_small(x: &[(i128, i128)], y: &[(i128, i128)]) -> bool {
    let scaled =
        |ls: &[(i128, i128)], p: i128, q: i128| ls.iter().map(|&(a, b)| a * q + (b - a) * p).max().expect("nonempty");
    let kinks = y.windows(2).map(|w| {
        let ((a1, b1), (a2, b2)) = (w[0], w[1]);
        (a1 - a2, (b2 - a2) - (b1 - a1))
    });
    [(0, 1), (1, 1)].into_iter().chain(kinks).all(|(p, q)| scaled(x, p, q) <= scaled(y, p, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Envelope {
    Bottom,
    /// Canonical: sorted by slope, each line strictly on top over an
    /// interval of positive length inside `[0, 1]`.
    Lines(Vec<Line>),
}

impl Envelope {
    /// The constant `0`, image of `{0}`.
    pub fn zero() -> Self {
        Envelope::Lines(vec![Line::from_ints(0, 0)])
    }

    pub fn from_lines(lines: Vec<Line>) -> Self {
        if lines.is_empty() {
            return Envelope::Bottom;
        }
        Envelope::Lines(canonicalize(lines))
    }

    pub fn lines(&self) -> &[Line] {
        match self {
            Envelope::Bottom => &[],
            Envelope::Lines(l) => l,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Envelope::Bottom)
    }

    /// Pointwise maximum.
    pub fn tmax(&self, o: &Envelope) -> Envelope {
        match (self, o) {
            (Envelope::Bottom, _) => o.clone(),
            (_, Envelope::Bottom) => self.clone(),
            (Envelope::Lines(x), Envelope::Lines(y)) => {
                Envelope::from_lines(x.iter().chain(y.iter()).cloned().collect())
            }
        }
    }

    /// Pointwise sum.
    pub fn tplus(&self, o: &Envelope) -> Envelope {
        match (self, o) {
            (Envelope::Bottom, _) | (_, Envelope::Bottom) => Envelope::Bottom,
            (Envelope::Lines(x), Envelope::Lines(y)) => {
                Envelope::from_lines(x.iter().flat_map(|l| y.iter().map(move |m| l.add(m))).collect())
            }
        }
    }

    /// Pointwise order on `[0, 1]`. For each line `l` of `self`, `o − l` is
    /// convex, so it suffices to compare at the kinks of `o` and at `0, 1`.
    pub fn leq(&self, o: &Envelope) -> bool {
        match (self, o) {
            (Envelope::Bottom, _) => true,
            (_, Envelope::Bottom) => false,
            (Envelope::Lines(x), Envelope::Lines(y)) => {
                if let (Some(x), Some(y)) = (small_lines(x), small_lines(y)) {
                    return leq_small(&x, &y);
                }
                let value = |ls: &[Line], t: &Rational| ls.iter().map(|l| l.eval(t)).max();
                [Rational::zero(), Rational::one()]
                    .into_iter()
                    .chain(o.breakpoints())
                    .all(|t| value(x, &t) <= value(y, &t))
            }
        }
    }

    /// Value at `t`; `None` is `−∞`.
    pub fn eval_at(&self, t: &Rational) -> Result<Option<Rational>, EnvError> {
        if t < &Rational::zero() || t > &Rational::one() {
            return Err(EnvError::OutOfDomain(t.clone()));
        }
        Ok(self.lines().iter().map(|l| l.eval(t)).max())
    }

    /// Abscissae in `(0, 1)` where the active line changes.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.lines().windows(2).map(|w| meet(&w[0], &w[1])).collect()
    }

    /// Image under `Φ` of the polygon spanned by `points`; the points are
    /// read as `a + b·i`.
    pub fn from_points(points: &[PlanePoint]) -> Envelope {
        Envelope::from_lines(points.iter().map(|p| Line::new(p.x.clone(), p.y.clone())).collect())
    }
}

/// Upper envelope on `[0, 1]` of a nonempty line set.
fn canonicalize(mut lines: Vec<Line>) -> Vec<Line> {
    lines.sort_by(|l, m| l.slope().cmp(&m.slope()).then(l.a.cmp(&m.a)));
    // equal slopes: keep the highest, which sorts last
    let mut uniq: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        if let Some(last) = uniq.last() {
            if last.slope() == l.slope() {
                uniq.pop();
            }
        }
        uniq.push(l);
    }
    // upper hull over the whole real line
    let mut hull: Vec<Line> = Vec::with_capacity(uniq.len());
    for l in uniq {
        while hull.len() >= 2 {
            let n = hull.len();
            if meet(&hull[n - 2], &l) <= meet(&hull[n - 2], &hull[n - 1]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(l);
    }
    // restrict to [0, 1], keeping positive-length pieces
    let n = hull.len();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = if i == 0 { zero.clone() } else { meet(&hull[i - 1], &hull[i]).max(zero.clone()) };
        let hi = if i + 1 == n { one.clone() } else { meet(&hull[i], &hull[i + 1]).min(one.clone()) };
        if lo < hi {
            out.push(hull[i].clone());
        }
    }
    out
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Bottom => write!(f, "-inf"),
            Envelope::Lines(ls) => {
                write!(f, "max(")?;
                for (i, l) in ls.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "({}, {})", l.a, l.b)?;
                }
                write!(f, ")")
            }
        }
    }
}

fn gaussian() -> FieldId {
    FieldId::new(1).expect("d = 1 is admissible")
}

/// `Φ(P)`, built from every vertex of the orbit.
pub fn phi(p: &SymPolygon) -> Result<Envelope, EnvError> {
    if p.field().d() != 1 {
        return Err(EnvError::WrongField(p.field().d()));
    }
    if p.is_empty() {
        return Ok(Envelope::Bottom);
    }
    Ok(Envelope::from_points(&p.full_orbit()))
}

/// Greatest lower bound in the image of `Φ` over `Z[i]`-polygons. `None`
/// unless both inputs lie in that image (or are comparable).
pub fn lattice_meet(e: &Envelope, f: &Envelope) -> Option<Envelope> {
    if e.leq(f) {
        return Some(e.clone());
    }
    if f.leq(e) {
        return Some(f.clone());
    }
    let (p, q) = (phi_inv(e), phi_inv(f));
    if !p.is_integral() || !q.is_integral() {
        return None;
    }
    if &phi(&p).ok()? != e || &phi(&q).ok()? != f {
        return None;
    }
    phi(&p.lattice_meet(&q).ok()?).ok()
}

/// Hull of the orbit of the points `a + b·i` over the lines of `f`.
pub fn phi_inv(f: &Envelope) -> SymPolygon {
    let field = gaussian();
    match f {
        Envelope::Bottom => SymPolygon::empty(field),
        Envelope::Lines(ls) => {
            let pts: Vec<PlanePoint> = ls.iter().map(|l| PlanePoint::new(l.a.clone(), l.b.clone())).collect();
            SymPolygon::from_points(field, &pts).expect("a Gaussian orbit of a nonzero point spans a square")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{QuadInt, QuadRat};

    fn env(ls: &[(i64, i64)]) -> Envelope {
        Envelope::from_lines(ls.iter().map(|&(a, b)| Line::from_ints(a, b)).collect())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn tmax_examples() {
        let f = env(&[(1, 0), (0, 1)]);
        assert_eq!(f.tmax(&Envelope::Bottom), f);
        assert_eq!(env(&[(1, 0)]).tmax(&env(&[(0, 1)])), f);
        assert_eq!(env(&[(1, 1)]).tmax(&env(&[(1, -1)])), env(&[(1, 1)]));
        assert_eq!(env(&[(1, 1)]).lines().len(), 1);
    }

    #[test]
    fn tplus_examples() {
        let f = env(&[(1, 0), (0, 1)]);
        assert_eq!(f.tplus(&Envelope::zero()), f);
        assert_eq!(Envelope::Bottom.tplus(&f), Envelope::Bottom);
        assert_eq!(f.tplus(&f), env(&[(2, 0), (0, 2)]));
    }

    #[test]
    fn single_point_supporters_are_pruned() {
        // (1,1) meets max(2−2t, 2t) only at t = 1/2
        assert_eq!(env(&[(2, 0), (1, 1), (0, 2)]).lines().len(), 2);
        // tie at an endpoint
        assert_eq!(env(&[(1, 0), (1, -5)]), env(&[(1, 0)]));
    }

    #[test]
    fn phi_examples() {
        let d = gaussian();
        assert_eq!(phi(&SymPolygon::dk(d)).unwrap(), env(&[(1, 0), (0, 1)]));
        assert_eq!(phi(&SymPolygon::empty(d)).unwrap(), Envelope::Bottom);
        assert_eq!(phi(&SymPolygon::zero(d)).unwrap(), Envelope::zero());
        let sq = SymPolygon::dk(d).scale(&QuadRat::from_int(QuadInt::new(d, 1, 1))).unwrap();
        assert_eq!(phi(&sq).unwrap(), env(&[(1, 1)]));
        let d2 = FieldId::new(2).unwrap();
        assert_eq!(phi(&SymPolygon::dk(d2)), Err(EnvError::WrongField(2)));
    }

    #[test]
    fn phi_inv_examples() {
        let d = gaussian();
        assert_eq!(phi_inv(&env(&[(1, 0), (0, 1)])), SymPolygon::dk(d));
        assert_eq!(phi_inv(&Envelope::Bottom), SymPolygon::empty(d));
        assert_eq!(phi_inv(&Envelope::zero()), SymPolygon::zero(d));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(env(&[(1, 0), (0, 1)]).eval_at(&r(1, 2)).unwrap(), Some(r(1, 2)));
        assert_eq!(Envelope::Bottom.eval_at(&r(1, 3)).unwrap(), None);
        assert_eq!(Envelope::zero().eval_at(&r(1, 3)).unwrap(), Some(r(0, 1)));
        assert_eq!(Envelope::zero().eval_at(&r(3, 2)), Err(EnvError::OutOfDomain(r(3, 2))));
    }

    #[test]
    fn breakpoints_of_the_square() {
        assert_eq!(env(&[(1, 0), (0, 1)]).breakpoints(), vec![r(1, 2)]);
    }
}
