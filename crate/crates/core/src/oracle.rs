//! Slow, independent reference implementations used to cross-check the
//! main algorithms in tests and in the self-test suite.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::quadfield::{cross, FieldId, PlanePoint, QuadInt, Rational};

/// Jarvis march. Returns the strict hull vertices counter-clockwise,
/// starting from the lowest-then-leftmost point.
pub fn gift_wrap(points: &[PlanePoint]) -> Vec<PlanePoint> {
    let mut pts: Vec<PlanePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let start = pts.iter().min_by(|a, b| a.y.cmp(&b.y).then(a.x.cmp(&b.x))).unwrap().clone();
    let dist = |a: &PlanePoint, b: &PlanePoint| {
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        &dx * &dx + &dy * &dy
    };
    let mut hull = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let mut next = if pts[0] == cur { pts[1].clone() } else { pts[0].clone() };
        for p in &pts {
            if *p == cur {
                continue;
            }
            let c = cross(&cur, &next, p);
            // farthest point among those making the most clockwise turn
            if c.is_negative() || (c.is_zero() && dist(&cur, p) > dist(&cur, &next)) {
                next = p.clone();
            }
        }
        if next == start {
            break;
        }
        hull.push(next.clone());
        cur = next;
        if hull.len() > pts.len() {
            break;
        }
    }
    hull
}

/// Euclidean gcd for the norm-Euclidean fields `d ∈ {1, 2, 3, 7, 11}`.
/// The quotient is the best of the nearby lattice points to `x / y`.
pub fn euclid_gcd(x: &QuadInt, y: &QuadInt) -> Option<QuadInt> {
    let field = x.field;
    if !matches!(field.d(), 1 | 2 | 3 | 7 | 11) {
        return None;
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let q = a.div_exact(&b).ok()?;
        let (qa, qb) = (&q.num.a, &q.num.b);
        let mut best: Option<QuadInt> = None;
        for da in -1..=1 {
            for db in -1..=1 {
                let ca = qa.div_floor(&q.den) + BigInt::from(da);
                let cb = qb.div_floor(&q.den) + BigInt::from(db);
                let cand = QuadInt::from_big(field, ca, cb);
                let r = &a - &(&cand * &b);
                if best.as_ref().is_none_or(|s| r.norm() < s.norm()) {
                    best = Some(r);
                }
            }
        }
        let r = best.unwrap();
        debug_assert!(r.norm() < b.norm());
        a = b;
        b = r;
    }
    a.canonical_unit_rep().ok()
}

/// Kronecker symbol `(D / p)` for an odd or even prime `p`.
pub fn kronecker(disc: i64, p: u64) -> i32 {
    let pi = p as i64;
    if p == 2 {
        if disc % 2 == 0 {
            return 0;
        }
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let r = disc.rem_euclid(pi);
    if r == 0 {
        return 0;
    }
    // Euler's criterion
    let mut acc: i128 = 1;
    let mut base = r as i128;
    let mut e = (p - 1) / 2;
    let m = p as i128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Number of ideals of norm exactly `n`, by counting elements of norm `n`
/// (every ideal is principal) and dividing by the number of units.
pub fn brute_ideal_count(field: FieldId, n: u64) -> u64 {
    let n = n as i64;
    let d = i64::from(field.d());
    let mut count = 0u64;
    let lim = 2 * (n as f64).sqrt() as i64 + 2;
    for a in -lim..=lim {
        for b in -lim..=lim {
            let norm = if field.half_integral() { a * a + a * b + (1 + d) / 4 * b * b } else { a * a + d * b * b };
            if norm == n {
                count += 1;
            }
        }
    }
    count / field.unit_order() as u64
}

/// Twice the signed area of a closed polygon given by its vertices in order.
pub fn shoelace2(vertices: &[PlanePoint]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..vertices.len() {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % vertices.len()];
        acc += &a.x * &b.y - &a.y * &b.x;
    }
    acc
}
