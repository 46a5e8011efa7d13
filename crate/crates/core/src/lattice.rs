//! Rank-2 integer lattices under a positive definite binary quadratic form.
//!
//! Vectors are coordinate pairs `(a, b)` with respect to the basis `1, ω` of
//! the ring of integers, and the form is the norm form
//! `Q(a, b) = a² + t·ab + c·b²`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer binary quadratic form `a² + t·ab + c·b²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormForm {
    pub t: BigInt,
    pub c: BigInt,
}

pub type Vec2 = (BigInt, BigInt);

impl NormForm {
    pub fn eval(&self, v: &Vec2) -> BigInt {
        &v.0 * &v.0 + &self.t * &v.0 * &v.1 + &self.c * &v.1 * &v.1
    }

    /// Twice the associated symmetric bilinear form (always integral).
    pub fn polar2(&self, u: &Vec2, v: &Vec2) -> BigInt {
        BigInt::from(2) * &u.0 * &v.0 + &self.t * (&u.0 * &v.1 + &u.1 * &v.0) + BigInt::from(2) * &self.c * &u.1 * &v.1
    }
}

/// Reduces an arbitrary finite generating set of a sublattice of `Z²` to a
/// basis in Hermite form `[(g1, x), (0, g2)]`. Returns `None` for the zero
/// lattice and a single vector when the rank is one.
pub fn basis_from_generators(gens: &[Vec2]) -> Vec<Vec2> {
    let mut rows: Vec<Vec2> = gens.iter().filter(|v| !(v.0.is_zero() && v.1.is_zero())).cloned().collect();
    // Euclid on first coordinates until at most one row has a nonzero one.
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.0.is_zero())
            .min_by(|x, y| x.1 .0.abs().cmp(&y.1 .0.abs()))
            .map(|(i, _)| i);
        let Some(p) = pivot else { break };
        let pv = rows[p].clone();
        let mut changed = false;
        for (i, row) in rows.iter_mut().enumerate() {
            if i == p || row.0.is_zero() {
                continue;
            }
            let q = row.0.div_floor(&pv.0);
            row.0 -= &q * &pv.0;
            row.1 -= &q * &pv.1;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut first = None;
    let mut g2 = BigInt::zero();
    for row in rows {
        if !row.0.is_zero() {
            first = Some(row);
        } else {
            g2 = g2.gcd(&row.1);
        }
    }
    let mut basis = Vec::with_capacity(2);
    if let Some(f) = first {
        basis.push(f);
    }
    if !g2.is_zero() {
        basis.push((BigInt::zero(), g2));
    }
    basis
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // nearest integer to num/den, ties toward +inf; den > 0
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// Lagrange–Gauss reduction of a rank-2 basis. The first returned vector is
/// a shortest nonzero vector of the lattice under `form`.
pub fn gauss_reduce(form: &NormForm, mut u: Vec2, mut v: Vec2) -> (Vec2, Vec2) {
    if form.eval(&u) > form.eval(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let qu = form.eval(&u);
        let mu = round_div(&form.polar2(&u, &v), &(BigInt::from(2) * &qu));
        if !mu.is_zero() {
            v.0 -= &mu * &u.0;
            v.1 -= &mu * &u.1;
        }
        if form.eval(&v) < qu {
            std::mem::swap(&mut u, &mut v);
        } else {
            return (u, v);
        }
    }
}

/// Shortest nonzero vector of the lattice spanned by `gens`.
pub fn shortest_vector(form: &NormForm, gens: &[Vec2]) -> Option<Vec2> {
    let basis = basis_from_generators(gens);
    match basis.len() {
        0 => None,
        1 => Some(basis[0].clone()),
        _ => Some(gauss_reduce(form, basis[0].clone(), basis[1].clone()).0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> Vec2 {
        (BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn hermite_basis_spans_same_lattice() {
        let basis = basis_from_generators(&[v(4, 2), v(6, 0), v(0, 4)]);
        assert_eq!(basis.len(), 2);
        // determinant of the lattice generated by those vectors is 4
        let det = &basis[0].0 * &basis[1].1 - &basis[0].1 * &basis[1].0;
        assert_eq!(det.abs(), BigInt::from(4));
    }

    #[test]
    fn gauss_reduction_finds_short_vector() {
        let form = NormForm { t: BigInt::zero(), c: BigInt::from(1) };
        let s = shortest_vector(&form, &[v(101, 100), v(100, 99)]).unwrap();
        assert_eq!(form.eval(&s), BigInt::from(1));
    }

    #[test]
    fn zero_lattice_has_no_shortest_vector() {
        let form = NormForm { t: BigInt::zero(), c: BigInt::from(1) };
        assert!(shortest_vector(&form, &[v(0, 0)]).is_none());
    }
}
