//! Prime splitting, the inverse different, finitely supported adelic
//! valuation vectors and the modules `H_a` they define, points over the
//! complex site, and sections over `Spec O_K`.

mod primes;
mod sections;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::quadfield::{FieldId, QuadError, QuadRat};

pub use primes::{
    factor_small, ideal_count, is_prime, norm_product, prime_power, primes_above, primes_up_to, rational_primes,
    valuation, PrimeIdeal, PrimeKind,
};
pub use sections::{fiber_member, pullback_fiber, Fiber, FiberPoint, FiniteSection};

pub const DEFAULT_PRIME_BOUND: u64 = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdelicError {
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("the zero module has no adelic description")]
    ZeroModule,
    #[error("section value at {at} has negative valuation at {offending}")]
    InvalidSection { at: String, offending: String },
    #[error("objects over different fields (d = {0} and d = {1})")]
    FieldMismatch(u32, u32),
    #[error("prime factor {0} exceeds 64 bits")]
    FactorTooLarge(String),
}

impl From<QuadError> for AdelicError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::FieldMismatch(a, b) => AdelicError::FieldMismatch(a, b),
            _ => AdelicError::ZeroInput,
        }
    }
}

/// A generator `δ` of the inverse different `𝔇 = {x : tr(x·O_K) ⊆ Z}`:
/// `1/(2ω)` when `d ≡ 1, 2 (mod 4)`, `1/(2ω − 1)` when `d ≡ 3 (mod 4)`.
pub fn complementary_generator(field: FieldId) -> QuadRat {
    let w = field.omega();
    let denom = if field.half_integral() { &w.scale(&2.into()) - &field.one() } else { w.scale(&2.into()) };
    field.one().div_exact(&denom).expect("2ω − ε is nonzero")
}

/// Primes dividing the discriminant, i.e. those where `δ` has a nonzero
/// valuation.
fn different_support(field: FieldId) -> Vec<PrimeIdeal> {
    primes::factor_small(u64::from(field.abs_discriminant()))
        .into_iter()
        .flat_map(|(p, _)| primes_above(field, p))
        .collect()
}

/// Finitely supported adelic exponent vector, plus the primes where the
/// component vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationVector {
    field: FieldId,
    exps: BTreeMap<PrimeIdeal, i64>,
    free: BTreeSet<PrimeIdeal>,
}

impl ValuationVector {
    /// Zero exponents are dropped, as are exponents on free primes.
    pub fn new(
        field: FieldId,
        exps: impl IntoIterator<Item = (PrimeIdeal, i64)>,
        free: impl IntoIterator<Item = PrimeIdeal>,
    ) -> Result<Self, AdelicError> {
        let free: BTreeSet<PrimeIdeal> = free.into_iter().collect();
        let mut map = BTreeMap::new();
        for (q, e) in exps {
            if q.field != field {
                return Err(AdelicError::FieldMismatch(field.d(), q.field.d()));
            }
            if e != 0 && !free.contains(&q) {
                *map.entry(q).or_insert(0) += e;
            }
        }
        map.retain(|_, e| *e != 0);
        if let Some(q) = free.iter().find(|q| q.field != field) {
            return Err(AdelicError::FieldMismatch(field.d(), q.field.d()));
        }
        Ok(ValuationVector { field, exps: map, free })
    }

    pub fn trivial(field: FieldId) -> Self {
        ValuationVector { field, exps: BTreeMap::new(), free: BTreeSet::new() }
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn exps(&self) -> &BTreeMap<PrimeIdeal, i64> {
        &self.exps
    }

    pub fn free(&self) -> &BTreeSet<PrimeIdeal> {
        &self.free
    }

    pub fn exp(&self, q: &PrimeIdeal) -> i64 {
        self.exps.get(q).copied().unwrap_or(0)
    }

    /// The action of `k ∈ K*`: exponents shift by `v(k)`.
    pub fn act(&self, k: &QuadRat) -> Result<Self, AdelicError> {
        let shift = divisor_on(k, self.support_with(k)?.iter())?;
        let exps = self.exps.iter().map(|(q, e)| (q.clone(), *e)).chain(shift);
        ValuationVector::new(self.field, exps, self.free.iter().cloned())
    }

    /// Primes carrying exponents of `self` or of `k`.
    fn support_with(&self, k: &QuadRat) -> Result<Vec<PrimeIdeal>, AdelicError> {
        let mut s: BTreeSet<PrimeIdeal> = self.exps.keys().cloned().collect();
        s.extend(element_support(k)?);
        Ok(s.into_iter().collect())
    }
}

/// The primes at which the nonzero `q` has nonzero valuation.
pub fn element_support(q: &QuadRat) -> Result<Vec<PrimeIdeal>, AdelicError> {
    if q.is_zero() {
        return Err(AdelicError::ZeroInput);
    }
    let field = q.field();
    let mut out = Vec::new();
    // every prime of the support divides N(num)·den
    let mut candidates = prime_divisors(q.num.norm().magnitude())?;
    candidates.extend(prime_divisors(q.den.magnitude())?);
    candidates.sort_unstable();
    candidates.dedup();
    for p in candidates {
        for prime in primes_above(field, p) {
            if valuation(q, &prime)? != 0 {
                out.push(prime);
            }
        }
    }
    Ok(out)
}

/// Distinct prime divisors.
fn prime_divisors(n: &num_bigint::BigUint) -> Result<Vec<u64>, AdelicError> {
    if n.is_zero() {
        return Err(AdelicError::ZeroInput);
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_keys()
        .map(|p| u64::try_from(&p).map_err(|_| AdelicError::FactorTooLarge(p.to_string())))
        .collect()
}

fn divisor_on<'a>(
    q: &QuadRat,
    primes: impl Iterator<Item = &'a PrimeIdeal>,
) -> Result<Vec<(PrimeIdeal, i64)>, AdelicError> {
    primes.map(|p| Ok((p.clone(), valuation(q, p)?))).collect()
}

/// A finitely generated sub-`O_K`-module of `K`, or its localization away
/// from a finite set of primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleHandle {
    Zero,
    Principal(QuadRat),
    Localized(QuadRat, BTreeSet<PrimeIdeal>),
}

impl ModuleHandle {
    pub fn generator(&self) -> Option<&QuadRat> {
        match self {
            ModuleHandle::Zero => None,
            ModuleHandle::Principal(g) | ModuleHandle::Localized(g, _) => Some(g),
        }
    }

    pub fn free(&self) -> BTreeSet<PrimeIdeal> {
        match self {
            ModuleHandle::Localized(_, s) => s.clone(),
            _ => BTreeSet::new(),
        }
    }

    /// `q ∈ H`: `q / gen` is integral away from the free primes.
    pub fn contains(&self, q: &QuadRat) -> Result<bool, AdelicError> {
        if q.is_zero() {
            return Ok(true);
        }
        let Some(g) = self.generator() else { return Ok(false) };
        let mut x = q.div(g)?;
        for prime in self.free() {
            let v = valuation(&x, &prime)?;
            if v < 0 {
                x = &x * &prime_power(&prime, -v);
            }
        }
        Ok(x.is_integral())
    }
}

/// `H_a = {q : v_𝔭(q) ≥ v_𝔭(δ) − a_𝔭 for every non-free 𝔭}`.
pub fn module_from_adele(a: &ValuationVector) -> ModuleHandle {
    let field = a.field;
    let delta = complementary_generator(field);
    let mut primes: BTreeSet<PrimeIdeal> = a.exps.keys().cloned().collect();
    primes.extend(different_support(field));
    let mut gen = QuadRat::from_integer(field, 1);
    for q in primes.iter().filter(|q| !a.free.contains(*q)) {
        let e = valuation(&delta, q).expect("δ ≠ 0") - a.exp(q);
        gen = &gen * &prime_power(q, e);
    }
    let gen = gen.canonical_unit_rep().expect("nonzero generator");
    if a.free.is_empty() {
        ModuleHandle::Principal(gen)
    } else {
        ModuleHandle::Localized(gen, a.free.clone())
    }
}

/// Inverse of [`module_from_adele`] on its image.
pub fn adele_from_module(h: &ModuleHandle) -> Result<ValuationVector, AdelicError> {
    let Some(gen) = h.generator() else { return Err(AdelicError::ZeroModule) };
    let field = gen.field();
    let delta = complementary_generator(field);
    let free = h.free();
    let mut primes: BTreeSet<PrimeIdeal> = element_support(gen)?.into_iter().collect();
    primes.extend(different_support(field));
    let mut exps = Vec::new();
    for q in primes.into_iter().filter(|q| !free.contains(q)) {
        let e = valuation(&delta, &q)? - valuation(gen, &q)?;
        exps.push((q, e));
    }
    ValuationVector::new(field, exps, free)
}

/// Whether `H_a ≅ H_b`; the witness `k` has `div(k) = b − a` away from the
/// free primes. Vectors with different free sets are never isomorphic.
pub fn iso_class_equal(a: &ValuationVector, b: &ValuationVector) -> Result<Option<QuadRat>, AdelicError> {
    if a.field != b.field {
        return Err(AdelicError::FieldMismatch(a.field.d(), b.field.d()));
    }
    if a.free != b.free {
        return Ok(None);
    }
    let mut keys: BTreeSet<&PrimeIdeal> = a.exps.keys().collect();
    keys.extend(b.exps.keys());
    let mut k = QuadRat::from_integer(a.field, 1);
    for q in keys {
        k = &k * &prime_power(q, b.exp(q) - a.exp(q));
    }
    Ok(Some(k))
}

/// Checks `div(k) = b − a` away from the free primes of `a`.
pub fn verify_witness(a: &ValuationVector, b: &ValuationVector, k: &QuadRat) -> Result<bool, AdelicError> {
    let mut primes: BTreeSet<PrimeIdeal> = element_support(k)?.into_iter().collect();
    primes.extend(a.exps.keys().cloned());
    primes.extend(b.exps.keys().cloned());
    for q in primes.iter().filter(|q| !a.free.contains(*q)) {
        if valuation(k, q)? != b.exp(q) - a.exp(q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point over the complex site: an adelic class together with the
/// archimedean scale `λ`, taken up to units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDescriptor {
    pub free: BTreeSet<PrimeIdeal>,
    /// `None` for `λ = 0`; otherwise the vector moved to `λ = 1`.
    pub normalized: Option<ValuationVector>,
}

pub fn point_over_c(a: &ValuationVector, lambda: &QuadRat) -> Result<PointDescriptor, AdelicError> {
    if lambda.field() != a.field {
        return Err(AdelicError::FieldMismatch(a.field.d(), lambda.field().d()));
    }
    let normalized = if lambda.is_zero() { None } else { Some(a.act(&lambda.inv()?)?) };
    Ok(PointDescriptor { free: a.free.clone(), normalized })
}

/// `(a, λ) ≅ (b, μ)`: some `k ∈ K*` carries `a` to `b` and `λ` to `μ`
/// up to a unit.
pub fn point_iso(
    a: &ValuationVector,
    lambda: &QuadRat,
    b: &ValuationVector,
    mu: &QuadRat,
) -> Result<bool, AdelicError> {
    Ok(point_over_c(a, lambda)? == point_over_c(b, mu)?)
}
