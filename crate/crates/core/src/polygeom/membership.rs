//! Deciding membership in the semirings `C_H = Semiring{h·D_K : h ∈ H}`.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive};

use super::{PolyError, SymPolygon};
use crate::quadfield::{check_same, FieldId, QuadInt, QuadRat};

/// A witness that a polygon lies in `C_H`: the polygon is the hull of the
/// union over `summand_sets` of the Minkowski sums `Σ h·D_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecomposition {
    pub summand_sets: Vec<Vec<QuadRat>>,
}

impl GeneratorDecomposition {
    pub fn replay(&self, field: FieldId) -> Result<SymPolygon, PolyError> {
        let dk = SymPolygon::dk(field);
        let mut acc = SymPolygon::empty(field);
        for set in &self.summand_sets {
            let mut sum = SymPolygon::zero(field);
            for h in set {
                sum = sum.minkowski_sum(&dk.scale(h)?)?;
            }
            acc = acc.hull_union(&sum)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub decomposition: Option<GeneratorDecomposition>,
}

impl Membership {
    fn yes(summand_sets: Vec<Vec<QuadRat>>) -> Self {
        Membership { member: true, decomposition: Some(GeneratorDecomposition { summand_sets }) }
    }

    fn no() -> Self {
        Membership { member: false, decomposition: None }
    }
}

/// Generator of the fractional ideal spanned by `gens`, unit-canonical;
/// `None` for the zero module.
pub fn ideal_generator(field: FieldId, gens: &[QuadRat]) -> Result<Option<QuadRat>, PolyError> {
    for g in gens {
        check_same(field, g.field())?;
    }
    let gens: Vec<&QuadRat> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(None);
    }
    let l = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.den));
    let mut g = field.zero();
    for q in gens {
        let x = q.num.scale(&(&l / &q.den));
        g = if g.is_zero() { x.canonical_unit_rep()? } else { QuadInt::gcd(&g, &x)? };
    }
    Ok(Some(QuadRat::new(g, l)))
}

/// Every element of `O_K` of norm at most `bound`.
pub fn elements_up_to_norm(field: FieldId, bound: &BigInt) -> Vec<QuadInt> {
    let bound = bound.to_i64().expect("norm bound fits in i64");
    let d = i64::from(field.d());
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    if field.half_integral() {
        // 4N = (2a + b)² + d·b²
        let bmax = (4 * bound / d).sqrt();
        for b in -bmax..=bmax {
            let s = (4 * bound - d * b * b).sqrt();
            let lo = Integer::div_ceil(&(-s - b), &2);
            let hi = Integer::div_floor(&(s - b), &2);
            for a in lo..=hi {
                out.push(QuadInt::new(field, a, b));
            }
        }
    } else {
        let bmax = (bound / d).sqrt();
        for b in -bmax..=bmax {
            let s = (bound - d * b * b).sqrt();
            for a in -s..=s {
                out.push(QuadInt::new(field, a, b));
            }
        }
    }
    out
}

fn ceil_rational(r: &num_rational::BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// Decides `P ∈ C_H ∪ {∅}` where `H` is the fractional ideal spanned by
/// `gens` (an empty list means the zero module).
///
/// Candidate generators are the `h ∈ H` with `h·D_K ⊆ P`; since `1 ∈ D_K`
/// they satisfy `N(h) ≤ max |v|²`. States of the search are Minkowski sums
/// of candidates that stay inside `P`, deduplicated by canonical form.
pub fn membership_in_generated(p: &SymPolygon, gens: &[QuadRat]) -> Result<Membership, PolyError> {
    let field = p.field();
    let k = ideal_generator(field, gens)?;
    if p.is_empty() {
        return Ok(Membership::yes(Vec::new()));
    }
    if p.is_zero() {
        return Ok(Membership::yes(vec![Vec::new()]));
    }
    let Some(k) = k else { return Ok(Membership::no()) };
    let in_h = |q: &QuadRat| q.div(&k).map(|x| x.is_integral()).unwrap_or(false);

    let vertices = p.sector_elements();
    if !vertices.iter().all(in_h) {
        return Ok(Membership::no());
    }

    // Candidates h = k·x with x canonical modulo units, h·D_K ⊆ P.
    let radius2 = ceil_rational(&p.max_modulus2());
    let knorm = k.norm();
    let xbound = ceil_rational(&(num_rational::BigRational::from_integer(radius2) / knorm));
    let dk = SymPolygon::dk(field);
    let order = field.unit_order();
    let mut cands: Vec<(QuadRat, SymPolygon)> = Vec::new();
    let mut seen_cand = BTreeSet::new();
    for x in elements_up_to_norm(field, &xbound) {
        if x.is_zero() || !x.embed().in_sector(order) {
            continue;
        }
        let h = &k * &QuadRat::from_int(x);
        let poly = dk.scale(&h)?;
        if p.contains(&poly) && seen_cand.insert(poly.clone()) {
            cands.push((h, poly));
        }
    }

    // Fast path: each sector vertex is already a vertex of some h·D_K ⊆ P.
    let targets = p.sector().to_vec();
    let direct: Vec<Option<usize>> =
        targets.iter().map(|t| cands.iter().position(|(_, poly)| poly.has_vertex(t))).collect();
    if direct.iter().all(Option::is_some) {
        let mut used: Vec<usize> = direct.into_iter().flatten().collect();
        used.sort_unstable();
        used.dedup();
        let sets = used.into_iter().map(|i| vec![cands[i].0.clone()]).collect();
        return Ok(Membership::yes(sets));
    }

    // Breadth-first closure under Minkowski sums inside P.
    let mut covering: Vec<Option<Vec<usize>>> = vec![None; targets.len()];
    let mut seen: BTreeSet<SymPolygon> = BTreeSet::new();
    let mut queue: VecDeque<(SymPolygon, Vec<usize>)> = VecDeque::new();
    for (i, (_, poly)) in cands.iter().enumerate() {
        if seen.insert(poly.clone()) {
            queue.push_back((poly.clone(), vec![i]));
        }
    }
    while let Some((poly, summands)) = queue.pop_front() {
        for (t, slot) in targets.iter().zip(covering.iter_mut()) {
            if slot.is_none() && poly.has_vertex(t) {
                *slot = Some(summands.clone());
            }
        }
        if covering.iter().all(Option::is_some) {
            let mut sets: Vec<Vec<usize>> = covering.into_iter().flatten().collect();
            sets.sort();
            sets.dedup();
            let sets = sets.into_iter().map(|s| s.into_iter().map(|i| cands[i].0.clone()).collect()).collect();
            return Ok(Membership::yes(sets));
        }
        for (i, (_, g)) in cands.iter().enumerate() {
            let next = poly.minkowski_sum(g)?;
            if p.contains(&next) && seen.insert(next.clone()) {
                let mut s = summands.clone();
                s.push(i);
                s.sort_unstable();
                queue.push_back((next, s));
            }
        }
    }
    Ok(Membership::no())
}

impl SymPolygon {
    /// Membership in `C_{O_K}`.
    pub fn in_generator_semiring(&self) -> Result<Membership, PolyError> {
        membership_in_generated(self, &[QuadRat::from_integer(self.field(), 1)])
    }
}
