//! The idempotent semiring of `U_K`-symmetric convex polygons.
//!
//! A [`SymPolygon`] is `∅`, `{0}`, or a convex polygon with non-empty
//! interior, center `0`, invariant under the units of `O_K`. It is stored by
//! the extreme points whose argument lies in the fundamental sector
//! `[0, θ_K)`, sorted by argument; the full vertex set is their unit orbit.
//! The two laws are `Conv(A ∪ B)` ([`SymPolygon::hull_union`]) and the
//! Minkowski sum ([`SymPolygon::minkowski_sum`]).

mod hull;
mod membership;

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::quadfield::{angular_cmp, check_same, cross, FieldId, PlanePoint, QuadError, QuadInt, QuadRat, Rational};

pub use hull::convex_hull;
pub use membership::{
    elements_up_to_norm, ideal_generator, membership_in_generated, GeneratorDecomposition, Membership,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polygons over different fields (d = {0} and d = {1})")]
    FieldMismatch(u32, u32),
    #[error("orbit hull has empty interior")]
    NotProper,
    #[error("operation is only defined for d = 1 or d = 3 (got d = {0})")]
    WrongField(u32),
    #[error("operation requires a nonzero scalar")]
    ZeroInput,
    #[error("polygon has a vertex outside O_K")]
    NotIntegral,
}

impl From<QuadError> for PolyError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::FieldMismatch(a, b) => PolyError::FieldMismatch(a, b),
            _ => PolyError::ZeroInput,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyTag {
    Empty,
    Zero,
    Proper,
}

impl PolyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PolyTag::Empty => "empty",
            PolyTag::Zero => "zero",
            PolyTag::Proper => "proper",
        }
    }
}

/// Element of the polygon semiring over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPolygon {
    field: FieldId,
    tag: PolyTag,
    sector: Vec<PlanePoint>,
}

impl SymPolygon {
    pub fn empty(field: FieldId) -> Self {
        SymPolygon { field, tag: PolyTag::Empty, sector: Vec::new() }
    }

    pub fn zero(field: FieldId) -> Self {
        SymPolygon { field, tag: PolyTag::Zero, sector: Vec::new() }
    }

    /// Convex hull of the `U_K`-orbit of `points`.
    ///
    /// No points gives `∅`, only the origin gives `{0}`; a hull with empty
    /// interior is rejected.
    pub fn from_points(field: FieldId, points: &[PlanePoint]) -> Result<Self, PolyError> {
        if points.is_empty() {
            return Ok(Self::empty(field));
        }
        let orbit: Vec<PlanePoint> = points.iter().filter(|p| !p.is_origin()).flat_map(|p| p.orbit(field)).collect();
        if orbit.is_empty() {
            return Ok(Self::zero(field));
        }
        let hull = convex_hull(&orbit);
        if hull.len() < 3 {
            return Err(PolyError::NotProper);
        }
        let order = field.unit_order();
        let mut sector: Vec<PlanePoint> = hull.into_iter().filter(|p| p.in_sector(order)).collect();
        sector.sort_by(angular_cmp);
        debug_assert!(sector.windows(2).all(|w| angular_cmp(&w[0], &w[1]).is_lt()));
        Ok(SymPolygon { field, tag: PolyTag::Proper, sector })
    }

    pub fn from_elements(field: FieldId, points: &[QuadRat]) -> Result<Self, PolyError> {
        for q in points {
            check_same(field, q.field())?;
        }
        let pts: Vec<PlanePoint> = points.iter().map(QuadRat::to_plane).collect();
        Self::from_points(field, &pts)
    }

    /// Rebuilds a polygon from a claimed sector vertex list, checking that
    /// the list is exactly the canonical one.
    pub fn from_sector(field: FieldId, sector: Vec<PlanePoint>) -> Result<Self, PolyError> {
        let p = Self::from_points(field, &sector)?;
        if p.tag == PolyTag::Proper && p.sector != sector {
            return Err(PolyError::NotProper);
        }
        Ok(p)
    }

    /// The generator polygon `D_K`: hull of the units for `d ∈ {1, 3}`,
    /// otherwise the quadrilateral with summits `±1, ±ω`.
    pub fn dk(field: FieldId) -> Self {
        let pts: Vec<PlanePoint> = Self::dk_vertices(field).iter().map(QuadInt::embed).collect();
        Self::from_points(field, &pts).expect("D_K has interior")
    }

    /// Summits of `D_K` as elements of `O_K`.
    pub fn dk_vertices(field: FieldId) -> Vec<QuadInt> {
        match field.d() {
            1 | 3 => field.units(),
            _ => vec![field.one(), field.omega(), -field.one(), -field.omega()],
        }
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn tag(&self) -> PolyTag {
        self.tag
    }

    pub fn is_empty(&self) -> bool {
        self.tag == PolyTag::Empty
    }

    pub fn is_zero(&self) -> bool {
        self.tag == PolyTag::Zero
    }

    pub fn is_proper(&self) -> bool {
        self.tag == PolyTag::Proper
    }

    /// Sector representatives of the vertices, by increasing argument.
    pub fn sector(&self) -> &[PlanePoint] {
        &self.sector
    }

    pub fn sector_elements(&self) -> Vec<QuadRat> {
        self.sector.iter().map(|p| QuadRat::from_plane(self.field, p)).collect()
    }

    /// All vertices, counter-clockwise.
    pub fn full_orbit(&self) -> Vec<PlanePoint> {
        match self.tag {
            PolyTag::Empty => Vec::new(),
            PolyTag::Zero => vec![PlanePoint::origin()],
            PolyTag::Proper => {
                let mut out = self.sector.clone();
                let mut cur = self.sector.clone();
                for _ in 1..self.field.unit_order() {
                    cur = cur.iter().map(|p| p.rotate_unit(self.field)).collect();
                    out.extend(cur.iter().cloned());
                }
                out
            }
        }
    }

    /// Twice the area (in stored coordinates; the true area is this times
    /// `√d / 2`).
    pub fn twice_area(&self) -> Rational {
        let v = self.full_orbit();
        let o = PlanePoint::origin();
        let mut acc = Rational::from_integer(0.into());
        for i in 0..v.len() {
            acc += cross(&o, &v[i], &v[(i + 1) % v.len()]);
        }
        acc
    }

    /// Largest squared modulus of a vertex.
    pub fn max_modulus2(&self) -> Rational {
        self.sector.iter().map(|p| p.modulus2(self.field)).max().unwrap_or_else(|| Rational::from_integer(0.into()))
    }

    fn same_field(&self, o: &SymPolygon) -> Result<(), PolyError> {
        check_same(self.field, o.field).map_err(PolyError::from)
    }

    pub fn hull_union(&self, o: &SymPolygon) -> Result<SymPolygon, PolyError> {
        self.same_field(o)?;
        Ok(match (self.tag, o.tag) {
            (PolyTag::Empty, _) => o.clone(),
            (_, PolyTag::Empty) => self.clone(),
            (PolyTag::Zero, _) => o.clone(),
            (_, PolyTag::Zero) => self.clone(),
            _ => {
                let mut pts = self.sector.clone();
                pts.extend(o.sector.iter().cloned());
                Self::from_points(self.field, &pts)?
            }
        })
    }

    pub fn minkowski_sum(&self, o: &SymPolygon) -> Result<SymPolygon, PolyError> {
        self.same_field(o)?;
        Ok(match (self.tag, o.tag) {
            (PolyTag::Empty, _) | (_, PolyTag::Empty) => Self::empty(self.field),
            (PolyTag::Zero, _) => o.clone(),
            (_, PolyTag::Zero) => self.clone(),
            _ => {
                // sector × orbit already covers every pairwise sum up to units
                let other = o.full_orbit();
                let pts: Vec<PlanePoint> =
                    self.sector.iter().flat_map(|a| other.iter().map(move |b| a.add(b))).collect();
                Self::from_points(self.field, &pts)?
            }
        })
    }

    /// Action of `μ ∈ K` by the similitude `z ↦ μz`; `0` sends every
    /// non-empty polygon to `{0}`.
    pub fn scale(&self, mu: &QuadRat) -> Result<SymPolygon, PolyError> {
        check_same(self.field, mu.field())?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        if mu.is_zero() || self.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let m = mu.to_plane();
        let pts: Vec<PlanePoint> = self.sector.iter().map(|p| p.mul(&m, self.field)).collect();
        Self::from_points(self.field, &pts)
    }

    pub fn contains_point(&self, p: &PlanePoint) -> bool {
        match self.tag {
            PolyTag::Empty => false,
            PolyTag::Zero => p.is_origin(),
            PolyTag::Proper => {
                let v = self.full_orbit();
                (0..v.len()).all(|i| !cross(&v[i], &v[(i + 1) % v.len()], p).is_negative())
            }
        }
    }

    /// Set inclusion `o ⊆ self`.
    pub fn contains(&self, o: &SymPolygon) -> bool {
        match o.tag {
            PolyTag::Empty => true,
            PolyTag::Zero => !self.is_empty(),
            PolyTag::Proper => self.is_proper() && o.sector.iter().all(|p| self.contains_point(p)),
        }
    }

    /// Whether `p` is one of the vertices.
    pub fn has_vertex(&self, p: &PlanePoint) -> bool {
        match self.tag {
            PolyTag::Empty => false,
            PolyTag::Zero => p.is_origin(),
            PolyTag::Proper => {
                let order = self.field.unit_order();
                p.orbit(self.field).into_iter().any(|q| q.in_sector(order) && self.sector.contains(&q))
            }
        }
    }

    /// Whether every vertex lies in `O_K`.
    pub fn is_integral(&self) -> bool {
        self.sector_elements().iter().all(QuadRat::is_integral)
    }

    /// Half-planes `(α, β, γ)` with `α·x + β·y + γ ≥ 0` cutting out the
    /// polygon, one per edge.
    fn half_planes(&self) -> Vec<(Rational, Rational, Rational)> {
        let v = self.full_orbit();
        (0..v.len())
            .map(|i| {
                let (p, q) = (&v[i], &v[(i + 1) % v.len()]);
                let (dx, dy) = (&q.x - &p.x, &q.y - &p.y);
                // dx·(y − p.y) − dy·(x − p.x) ≥ 0
                let gamma = &dy * &p.x - &dx * &p.y;
                (-dy, dx, gamma)
            })
            .collect()
    }

    /// Greatest polygon with vertices in `O_K` contained in both: the hull
    /// of the lattice points of the intersection.
    pub fn lattice_meet(&self, o: &SymPolygon) -> Result<SymPolygon, PolyError> {
        self.same_field(o)?;
        if self.is_empty() || o.is_empty() {
            return Ok(Self::empty(self.field));
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let field = self.field;
        let mut planes = self.half_planes();
        planes.extend(o.half_planes());
        let ymax = self
            .sector
            .iter()
            .chain(o.sector.iter())
            .flat_map(|p| p.orbit(field))
            .map(|p| p.y.abs())
            .max()
            .expect("proper polygons have vertices");
        let half = field.half_integral();
        // rows of the lattice: y = b (resp. b/2), x ∈ Z (resp. Z + b/2)
        let scale = if half { 2 } else { 1 };
        let bmax = (&ymax * Rational::from_integer(scale.into())).floor().to_integer();
        let bmax = i64::try_from(bmax).expect("polygon too large");
        let mut pts = Vec::new();
        for b in -bmax..=bmax {
            let y = Rational::new(b.into(), scale.into());
            let off = if half { y.clone() } else { Rational::zero() };
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            let mut feasible = true;
            for (alpha, beta, gamma) in &planes {
                let rest = beta * &y + gamma;
                if alpha.is_zero() {
                    if rest.is_negative() {
                        feasible = false;
                        break;
                    }
                } else {
                    let bound = -rest / alpha;
                    if alpha.is_positive() {
                        lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
                    } else {
                        hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
                    }
                }
            }
            let (Some(lo), Some(hi)) = (lo, hi) else { continue };
            if !feasible {
                continue;
            }
            let amin = (&lo - &off).ceil();
            let amax = (&hi - &off).floor();
            if amin > amax {
                continue;
            }
            pts.push(PlanePoint::new(&amin + &off, y.clone()));
            pts.push(PlanePoint::new(&amax + &off, y.clone()));
        }
        match Self::from_points(field, &pts) {
            Ok(p) => Ok(p),
            // a flat set of lattice points: keep only what is certain
            Err(PolyError::NotProper) => Ok(Self::zero(field)),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for SymPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            PolyTag::Empty => write!(f, "∅"),
            PolyTag::Zero => write!(f, "{{0}}"),
            PolyTag::Proper => {
                write!(f, "Conv(U·{{")?;
                for (i, q) in self.sector_elements().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{q}")?;
                }
                write!(f, "}})")
            }
        }
    }
}

/// Sector summits `S₊` of a polygon over `Q(i)` or `Q(i√3)` with vertices
/// in `O_K`; `Conv(⋃ s·D_K)` over `S₊` rebuilds the polygon.
pub fn sector_decompose(p: &SymPolygon) -> Result<Vec<QuadRat>, PolyError> {
    let d = p.field().d();
    if d != 1 && d != 3 {
        return Err(PolyError::WrongField(d));
    }
    if !p.is_proper() {
        return Err(PolyError::NotProper);
    }
    let summits = p.sector_elements();
    if !summits.iter().all(QuadRat::is_integral) {
        return Err(PolyError::NotIntegral);
    }
    Ok(summits)
}

/// `Conv(⋃_{s ∈ S₊} s·D_K)`.
pub fn reconstruct_from_summits(field: FieldId, summits: &[QuadRat]) -> Result<SymPolygon, PolyError> {
    let dk = SymPolygon::dk(field);
    let mut acc = SymPolygon::empty(field);
    for s in summits {
        acc = acc.hull_union(&dk.scale(s)?)?;
    }
    Ok(acc)
}

/// Fixed by the whole `O_K`-action, i.e. a global section. Probes a few
/// non-unit scalars; any proper polygon moves under `z ↦ 2z`.
pub fn global_sections_check(p: &SymPolygon) -> bool {
    let f = p.field();
    let probes = [
        QuadRat::from_integer(f, 2),
        QuadRat::from_int(f.omega()),
        QuadRat::from_int(&f.one() + &f.omega()),
        QuadRat::from_integer(f, 0),
    ];
    probes.iter().all(|k| p.scale(k).map(|q| &q == p).unwrap_or(false))
}

/// `μ·D_K = ν·D_K`, i.e. `μ/ν ∈ U_K`.
pub fn aut_orbit_equiv(mu: &QuadRat, nu: &QuadRat) -> Result<bool, PolyError> {
    if mu.is_zero() || nu.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let q = mu.div(nu)?;
    Ok(q.is_integral() && q.num.is_unit())
}

/// An element of the stalk `C_(k) = k·C_{O_K}`, remembered together with
/// the module generator it was transported by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkElement {
    pub generator: QuadRat,
    pub polygon: SymPolygon,
}

impl StalkElement {
    /// Membership in `C_(k) = Semiring{h·D_K : h ∈ (k)}`.
    pub fn membership(&self) -> Result<Membership, PolyError> {
        membership_in_generated(&self.polygon, std::slice::from_ref(&self.generator))
    }
}

pub fn stalk_scale(k: &QuadRat, p: &SymPolygon) -> Result<StalkElement, PolyError> {
    if k.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    Ok(StalkElement { generator: k.clone(), polygon: p.scale(k)? })
}

#[cfg(test)]
mod tests;
