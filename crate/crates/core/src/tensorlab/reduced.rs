//! The reduced quotient `R = P × P / ∼`, where
//! `(a, b) ∼ (a', b')` iff `a·b'·c = a'·b·c` for some `c ≠ ⊥`.

use super::{eval_separator, normalize, tensor_add, tensor_mul, tensor_product, FormalTensor, SepVerdict};

/// A formal quotient `p / q` of tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedElement {
    pub p: FormalTensor,
    pub q: FormalTensor,
}

impl ReducedElement {
    pub fn new(p: FormalTensor, q: FormalTensor) -> Self {
        ReducedElement { p: normalize(&p), q: normalize(&q) }
    }

    /// `γ(a) = (a, 1)`.
    pub fn gamma(a: &FormalTensor) -> Self {
        ReducedElement::new(a.clone(), FormalTensor::neutral())
    }

    /// `(a, b)(c, d) = (ac, bd)`.
    pub fn mul(&self, o: &ReducedElement) -> ReducedElement {
        ReducedElement { p: tensor_mul(&self.p, &o.p), q: tensor_mul(&self.q, &o.q) }
    }

    /// `(a, b) ⊕ (c, d) = (ad ⊕ bc, bd)`.
    pub fn add(&self, o: &ReducedElement) -> ReducedElement {
        ReducedElement {
            p: tensor_add(&tensor_mul(&self.p, &o.q), &tensor_mul(&self.q, &o.p)),
            q: tensor_mul(&self.q, &o.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedVerdict {
    /// Certified by normal forms with the given witness.
    Equal {
        witness: FormalTensor,
    },
    /// The separator distinguishes `a·b'` from `a'·b`; as it is a
    /// homomorphism into a cancellative monoid, no witness can exist.
    Distinct,
    Unknown,
}

fn certify(lhs: &FormalTensor, rhs: &FormalTensor, c: &FormalTensor) -> bool {
    if c.is_bottom() {
        return false;
    }
    let l = tensor_product(&[lhs, c]);
    let r = tensor_product(&[rhs, c]);
    if l == r {
        assert_eq!(eval_separator(&l, &r), SepVerdict::PossiblyEqual, "normal forms agree but the separator disagrees");
        true
    } else {
        false
    }
}

/// Searches for `c` with `a.p·b.q·c = b.p·a.q·c`: the `hints` first, then
/// the neutral element, then products of at most `witness_bound` factors
/// drawn from the four components, in breadth-first order.
pub fn reduced_equal(
    a: &ReducedElement,
    b: &ReducedElement,
    witness_bound: usize,
    hints: &[FormalTensor],
) -> ReducedVerdict {
    let lhs = tensor_mul(&a.p, &b.q);
    let rhs = tensor_mul(&b.p, &a.q);
    if eval_separator(&lhs, &rhs) == SepVerdict::Distinct {
        return ReducedVerdict::Distinct;
    }
    let mut tried: Vec<FormalTensor> = Vec::new();
    let attempt = |c: FormalTensor, tried: &mut Vec<FormalTensor>| -> Option<ReducedVerdict> {
        if tried.contains(&c) {
            return None;
        }
        let ok = certify(&lhs, &rhs, &c);
        tried.push(c.clone());
        ok.then_some(ReducedVerdict::Equal { witness: c })
    };
    for h in hints {
        if let Some(v) = attempt(normalize(h), &mut tried) {
            return v;
        }
    }
    if let Some(v) = attempt(FormalTensor::neutral(), &mut tried) {
        return v;
    }
    let base = [&a.p, &a.q, &b.p, &b.q];
    // multisets of indices, grown in non-decreasing order
    let mut layer: Vec<(Vec<usize>, FormalTensor)> = vec![(Vec::new(), FormalTensor::neutral())];
    for _ in 0..witness_bound {
        let mut next = Vec::new();
        for (idx, prod) in &layer {
            let start = idx.last().copied().unwrap_or(0);
            for (i, factor) in base.iter().enumerate().skip(start) {
                let mut idx2 = idx.clone();
                idx2.push(i);
                let c = tensor_mul(prod, factor);
                if let Some(v) = attempt(c.clone(), &mut tried) {
                    return v;
                }
                next.push((idx2, c));
            }
        }
        layer = next;
    }
    ReducedVerdict::Unknown
}
