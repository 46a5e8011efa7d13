//! Prime ideals of `O_K` and exact valuations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::AdelicError;
use crate::lattice;
use crate::quadfield::{angular_cmp, FieldId, QuadInt, QuadRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

impl PrimeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimeKind::Split => "split",
            PrimeKind::Inert => "inert",
            PrimeKind::Ramified => "ramified",
        }
    }
}

/// A nonzero prime ideal, stored by a unit-canonical generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub field: FieldId,
    pub p: u64,
    pub kind: PrimeKind,
    pub generator: QuadInt,
    pub residue_degree: u32,
    /// Marks the second of two split conjugates.
    pub second: bool,
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.field, self.p, self.second).cmp(&(o.field, o.p, o.second))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl PrimeIdeal {
    /// `v_𝔭(p)`: 2 at a ramified prime, 1 otherwise.
    pub fn ramification(&self) -> i64 {
        if self.kind == PrimeKind::Ramified {
            2
        } else {
            1
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree)
    }

    pub fn as_element(&self) -> QuadRat {
        QuadRat::from_int(self.generator.clone())
    }
}

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks).
fn sqrt_mod(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("p is an odd prime");
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// Roots of `x² + c₁x + c₀` modulo the prime `p`, ascending.
fn poly_roots(c1: i64, c0: i64, p: u64) -> Vec<u64> {
    let pi = i128::from(p);
    if p == 2 {
        return (0..2u64)
            .filter(|&r| {
                let r = i128::from(r);
                (r * r + i128::from(c1) * r + i128::from(c0)).rem_euclid(pi) == 0
            })
            .collect();
    }
    let pu = u128::from(p);
    let disc = (i128::from(c1) * i128::from(c1) - 4 * i128::from(c0)).rem_euclid(pi) as u128;
    let Some(s) = sqrt_mod(disc, pu) else { return Vec::new() };
    let inv2 = pu.div_ceil(2);
    let mc1 = (-i128::from(c1)).rem_euclid(pi) as u128;
    let r1 = (mc1 + s) % pu * inv2 % pu;
    let r2 = (mc1 + pu - s) % pu * inv2 % pu;
    let mut roots = vec![r1 as u64, r2 as u64];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Rational primes `≤ bound`, by sieve.
pub fn rational_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

fn prime_from_root(field: FieldId, p: u64, r: u64) -> QuadInt {
    // (p, ω − r) has the lattice basis (p, 0), (−r, 1)
    let gens = [(BigInt::from(p), BigInt::zero()), (-BigInt::from(r), BigInt::one())];
    let v = lattice::shortest_vector(&field.norm_form(), &gens).expect("rank two lattice");
    QuadInt::from_big(field, v.0, v.1).canonical_unit_rep().expect("nonzero generator")
}

/// The primes of `O_K` above the rational prime `p`.
pub fn primes_above(field: FieldId, p: u64) -> Vec<PrimeIdeal> {
    let (c1, c0) = field.omega_min_poly();
    let roots = poly_roots(c1, c0, p);
    let mk = |kind, generator, residue_degree, second| PrimeIdeal { field, p, kind, generator, residue_degree, second };
    match roots.len() {
        0 => vec![mk(PrimeKind::Inert, QuadInt::new(field, p as i64, 0), 2, false)],
        1 => vec![mk(PrimeKind::Ramified, prime_from_root(field, p, roots[0]), 1, false)],
        _ => {
            let mut g = [prime_from_root(field, p, roots[0]), prime_from_root(field, p, roots[1])];
            // Both canonical representatives have a non-negative ω-coordinate;
            // the one of smaller argument comes first.
            if angular_cmp(&g[0].embed(), &g[1].embed()) == Ordering::Greater {
                g.swap(0, 1);
            }
            let [a, b] = g;
            vec![mk(PrimeKind::Split, a, 1, false), mk(PrimeKind::Split, b, 1, true)]
        }
    }
}

pub fn primes_up_to(field: FieldId, bound: u64) -> Vec<PrimeIdeal> {
    rational_primes(bound).into_iter().flat_map(|p| primes_above(field, p)).collect()
}

/// Exponent of the prime `π` in the nonzero element `x`.
fn valuation_int(x: &QuadInt, pi: &QuadInt) -> i64 {
    let mut x = x.clone();
    let mut v = 0;
    loop {
        match x.div_exact(pi) {
            Ok(q) if q.is_integral() => {
                x = q.num;
                v += 1;
            }
            _ => return v,
        }
    }
}

fn rational_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Exact `𝔭`-adic valuation of a nonzero element of `K`.
pub fn valuation(q: &QuadRat, prime: &PrimeIdeal) -> Result<i64, AdelicError> {
    if q.is_zero() {
        return Err(AdelicError::ZeroInput);
    }
    if q.field() != prime.field {
        return Err(AdelicError::FieldMismatch(q.field().d(), prime.field.d()));
    }
    let vn = valuation_int(&q.num, &prime.generator);
    let vd = rational_valuation(&q.den, prime.p) * prime.ramification();
    Ok(vn - vd)
}

/// Factor a small positive integer into `(p, k)` pairs.
pub fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of ideals of norm `n`, from the splitting data.
pub fn ideal_count(field: FieldId, n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factor_small(n)
        .into_iter()
        .map(|(p, k)| {
            let above = primes_above(field, p);
            match above[0].kind {
                PrimeKind::Split => u64::from(k) + 1,
                PrimeKind::Inert => u64::from(k % 2 == 0),
                PrimeKind::Ramified => 1,
            }
        })
        .product()
}

/// `π^e` for `e ∈ Z`.
pub fn prime_power(prime: &PrimeIdeal, e: i64) -> QuadRat {
    prime.as_element().pow(e)
}

/// Product of `N(𝔭)^{e(𝔭)}` over the primes above `p`, with `e` the
/// ramification index.
pub fn norm_product(field: FieldId, p: u64) -> BigInt {
    primes_above(field, p)
        .iter()
        .map(|q| {
            let n = q.generator.norm().to_u64().expect("small norm");
            BigInt::from(n).pow(q.ramification() as u32)
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: u32) -> FieldId {
        FieldId::new(d).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        let ps = primes_above(f(1), 5);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|q| q.kind == PrimeKind::Split));
        assert_eq!(ps[0].generator, QuadInt::new(f(1), 2, 1));
        assert_eq!(ps[1].generator, QuadInt::new(f(1), 1, 2));
        assert!(ps[1].second);
        assert_eq!(primes_above(f(1), 3)[0].kind, PrimeKind::Inert);
        let two = &primes_above(f(1), 2)[0];
        assert_eq!(two.kind, PrimeKind::Ramified);
        assert_eq!(two.generator, QuadInt::new(f(1), 1, 1));
    }

    #[test]
    fn valuation_examples() {
        let d = f(1);
        let two = &primes_above(d, 2)[0];
        assert_eq!(valuation(&QuadRat::from_integer(d, 2), two).unwrap(), 2);
        assert_eq!(valuation(&QuadRat::from_integer(d, 1), two).unwrap(), 0);
        let p5 = &primes_above(d, 5)[0];
        assert_eq!(valuation(&QuadRat::from_parts(d, 1, 0, 5), p5).unwrap(), -1);
        assert_eq!(valuation(&QuadRat::from_integer(d, 0), p5), Err(AdelicError::ZeroInput));
    }

    #[test]
    fn generators_have_prime_norm() {
        for d in FieldId::all() {
            for q in primes_up_to(d, 60) {
                assert_eq!(q.generator.norm(), BigInt::from(q.norm()));
            }
        }
    }

    #[test]
    fn factor_small_roundtrip() {
        assert_eq!(factor_small(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_small(97), vec![(97, 1)]);
    }
}
