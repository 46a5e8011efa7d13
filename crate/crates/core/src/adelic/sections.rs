//! Finite sections over `Spec O_K` and the fibers of the pulled-back
//! structure sheaf.

use std::collections::{BTreeMap, BTreeSet};

use super::{primes_up_to, valuation, AdelicError, ModuleHandle, PrimeIdeal};
use crate::polygeom::{membership_in_generated, PolyError, SymPolygon};
use crate::quadfield::{FieldId, QuadInt, QuadRat};

/// A section with finitely many nonzero values `ξ_𝔭 ∈ H(𝔭)`, where
/// `H(𝔭)` is the ring of elements integral away from `𝔭`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSection {
    pub field: FieldId,
    pub prime_bound: u64,
    pub values: BTreeMap<PrimeIdeal, QuadRat>,
}

impl FiniteSection {
    pub fn zero(field: FieldId, prime_bound: u64) -> Self {
        FiniteSection { field, prime_bound, values: BTreeMap::new() }
    }

    /// Checks `v_𝔮(ξ_𝔭) ≥ 0` for every `𝔮 ≠ 𝔭` above a rational prime up to
    /// the bound.
    pub fn validate(&self) -> Result<(), AdelicError> {
        let primes = primes_up_to(self.field, self.prime_bound);
        for (at, xi) in &self.values {
            if xi.is_zero() {
                continue;
            }
            for q in primes.iter().filter(|q| *q != at) {
                if valuation(xi, q)? < 0 {
                    return Err(AdelicError::InvalidSection { at: at.to_string(), offending: q.to_string() });
                }
            }
        }
        Ok(())
    }

    /// Pointwise action of `k ∈ O_K`.
    pub fn act(&self, k: &QuadInt) -> FiniteSection {
        let k = QuadRat::from_int(k.clone());
        let values = self.values.iter().map(|(p, xi)| (p.clone(), &k * xi)).filter(|(_, xi)| !xi.is_zero()).collect();
        FiniteSection { field: self.field, prime_bound: self.prime_bound, values }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    Generic,
    Closed(PrimeIdeal),
}

/// The fiber of the pulled-back sheaf: the Boolean semiring at the generic
/// point, the stalk semiring of `H(𝔭)` at a closed point.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Fiber {
    Boolean,
    Stalk { prime: PrimeIdeal, module: ModuleHandle },
}

impl Fiber {
    /// Addition (`Conv ∪`) and multiplication (`+`) tables on `{∅, {0}}`,
    /// indexed by `[∅, {0}]`.
    pub fn boolean_tables(field: FieldId) -> ([[SymPolygon; 2]; 2], [[SymPolygon; 2]; 2]) {
        let elems = [SymPolygon::empty(field), SymPolygon::zero(field)];
        let add = std::array::from_fn(|i| std::array::from_fn(|j| elems[i].hull_union(&elems[j]).expect("same field")));
        let mul =
            std::array::from_fn(|i| std::array::from_fn(|j| elems[i].minkowski_sum(&elems[j]).expect("same field")));
        (add, mul)
    }
}

pub fn pullback_fiber(point: &FiberPoint) -> Fiber {
    match point {
        FiberPoint::Generic => Fiber::Boolean,
        FiberPoint::Closed(p) => {
            let one = QuadRat::from_integer(p.field, 1);
            Fiber::Stalk { prime: p.clone(), module: ModuleHandle::Localized(one, BTreeSet::from([p.clone()])) }
        }
    }
}

/// Membership of `poly` in the fiber semiring at `point`.
///
/// At a closed point the vertices must lie in `H(𝔭)`; with `n` the largest
/// `𝔭`-denominator among them, the polygon is then tested against
/// `C_{(π^{-n})}` and `C_{(π^{-n-1})}`.
pub fn fiber_member(point: &FiberPoint, poly: &SymPolygon) -> Result<bool, PolyError> {
    if poly.is_empty() || poly.is_zero() {
        return Ok(true);
    }
    let FiberPoint::Closed(prime) = point else { return Ok(false) };
    let Fiber::Stalk { module, .. } = pullback_fiber(point) else { unreachable!() };
    let mut n = 0i64;
    for v in poly.sector_elements() {
        if !module.contains(&v).map_err(|_| PolyError::ZeroInput)? {
            return Ok(false);
        }
        let e = valuation(&v, prime).map_err(|_| PolyError::ZeroInput)?;
        n = n.max(-e);
    }
    let pi = prime.as_element();
    for m in [n, n + 1] {
        let g = pi.pow(-m);
        if membership_in_generated(poly, &[g])?.member {
            return Ok(true);
        }
    }
    Ok(false)
}
