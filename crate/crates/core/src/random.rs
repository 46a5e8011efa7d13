//! Seeded generators for the randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adelic::{primes_up_to, ValuationVector};
use crate::envelope::{phi, Envelope};
use crate::polygeom::{PolyError, SymPolygon};
use crate::quadfield::{FieldId, QuadInt, QuadRat};
use crate::tensorlab::{normalize, FormalTensor};

pub type TestRng = ChaCha8Rng;

/// Independent stream `stream` derived from `seed`.
pub fn rng_for(seed: u64, stream: u64) -> TestRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn quad_int(rng: &mut impl Rng, field: FieldId, range: i64) -> QuadInt {
    QuadInt::new(field, rng.gen_range(-range..=range), rng.gen_range(-range..=range))
}

pub fn nonzero_quad_int(rng: &mut impl Rng, field: FieldId, range: i64) -> QuadInt {
    loop {
        let x = quad_int(rng, field, range);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn nonzero_quad_rat(rng: &mut impl Rng, field: FieldId, range: i64, max_den: i64) -> QuadRat {
    let num = nonzero_quad_int(rng, field, range);
    QuadRat::new(num, rng.gen_range(1..=max_den).into())
}

/// A proper polygon spanned by the orbits of 1 to `max_points` nonzero
/// elements of `O_K` with coordinates in `[-range, range]`.
pub fn proper_polygon(rng: &mut impl Rng, field: FieldId, range: i64, max_points: usize) -> SymPolygon {
    loop {
        let n = rng.gen_range(1..=max_points);
        let pts: Vec<QuadRat> = (0..n).map(|_| QuadRat::from_int(nonzero_quad_int(rng, field, range))).collect();
        match SymPolygon::from_elements(field, &pts) {
            Ok(p) if p.is_proper() => return p,
            Ok(_) | Err(PolyError::NotProper) => continue,
            Err(e) => panic!("unexpected polygon error {e}"),
        }
    }
}

/// Any polygon: occasionally `∅` or `{0}`, otherwise proper.
pub fn polygon(rng: &mut impl Rng, field: FieldId, range: i64, max_points: usize) -> SymPolygon {
    match rng.gen_range(0..20) {
        0 => SymPolygon::empty(field),
        1 => SymPolygon::zero(field),
        _ => proper_polygon(rng, field, range, max_points),
    }
}

pub fn gaussian_envelope(rng: &mut impl Rng, range: i64) -> Envelope {
    let f = FieldId::new(1).expect("d = 1");
    phi(&proper_polygon(rng, f, range, 2)).expect("d = 1")
}

/// A normalized tensor with 1 to `max_pairs` elementary summands.
pub fn tensor(rng: &mut impl Rng, max_pairs: usize) -> FormalTensor {
    let n = rng.gen_range(1..=max_pairs);
    let pairs: Vec<_> = (0..n).map(|_| (gaussian_envelope(rng, 2), gaussian_envelope(rng, 2))).collect();
    normalize(&FormalTensor::raw(pairs))
}

/// A finitely supported vector over primes up to `prime_bound`.
pub fn valuation_vector(rng: &mut impl Rng, field: FieldId, prime_bound: u64) -> ValuationVector {
    let primes = primes_up_to(field, prime_bound);
    let n = rng.gen_range(0..=3);
    let exps: Vec<_> = (0..n)
        .map(|_| {
            let p = primes[rng.gen_range(0..primes.len())].clone();
            let mut e = rng.gen_range(-3..=3);
            if e == 0 {
                e = 1;
            }
            (p, e)
        })
        .collect();
    let free: Vec<_> =
        if rng.gen_bool(0.3) { vec![primes[rng.gen_range(0..primes.len())].clone()] } else { Vec::new() };
    ValuationVector::new(field, exps, free).expect("same field")
}
