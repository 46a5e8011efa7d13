//! Finite formal sums `Σ e_i ⊗ f_i` of envelope pairs, with the induced
//! semiring laws, the `Z[i]²` action, two equality oracles and the reduced
//! (multiplicatively cancellative) quotient.
//!
//! `normalize` rewrites a sum using consequences of bilinearity and
//! idempotence, so equal normal forms prove equality. The evaluation
//! separator compares `(x, y) ↦ max_i e_i(x) + f_i(y)`; a strict difference
//! proves inequality. Neither oracle decides equality on its own.

mod experiment;
mod reduced;
mod separator;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::envelope::{lattice_meet, phi, phi_inv, Envelope};
use crate::quadfield::{QuadInt, QuadRat};

pub use experiment::{cancellativity_experiment, ExperimentRecord};
pub use reduced::{reduced_equal, ReducedElement, ReducedVerdict};
pub use separator::{eval_separator, SepVerdict};

pub type Pair = (Envelope, Envelope);

/// A finite formal sum of pairs, kept as a sorted set. The empty sum is the
/// bottom tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalTensor {
    pairs: Vec<Pair>,
}

impl FormalTensor {
    pub fn bottom() -> Self {
        FormalTensor { pairs: Vec::new() }
    }

    /// `0̄ ⊗ 0̄`, the multiplicative neutral element.
    pub fn neutral() -> Self {
        FormalTensor { pairs: vec![(Envelope::zero(), Envelope::zero())] }
    }

    /// The raw formal sum, deduplicated but not rewritten.
    pub fn raw(pairs: impl IntoIterator<Item = Pair>) -> Self {
        let set: BTreeSet<Pair> = pairs.into_iter().collect();
        FormalTensor { pairs: set.into_iter().collect() }
    }

    pub fn elementary(e: Envelope, f: Envelope) -> Self {
        normalize(&FormalTensor::raw([(e, f)]))
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn is_bottom(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for FormalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "⊥");
        }
        for (i, (e, g)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{e} ⊗ {g}")?;
        }
        Ok(())
    }
}

fn dominated(p: &Pair, q: &Pair) -> bool {
    p != q && p.0.leq(&q.0) && p.1.leq(&q.1)
}

/// Closure under the rules
///
/// * `(e₁, f₁), (e₂, f₂) ↦ (e₁ ∨ e₂, f₁ ∧ f₂)`,
/// * `(e₁, f₁), (e₂, f₂) ↦ (e₁ ∧ e₂, f₁ ∨ f₂)`,
///
/// each producing a pair below `e₁ ⊗ f₁ ⊕ e₂ ⊗ f₂`, followed by reduction to
/// the maximal pairs; pairs with a `−∞` component vanish. The down-closure
/// of the result is the bi-ideal generated by the input, so for integral
/// envelopes (where `∧` is the lattice meet) equal tensors have equal
/// normal forms. Elsewhere `∧` is only used between comparable envelopes
/// and the procedure stays sound but may miss equalities.
pub fn normalize(t: &FormalTensor) -> FormalTensor {
    let mut meets: HashMap<(Envelope, Envelope), Option<Envelope>> = HashMap::new();
    let mut meet = |x: &Envelope, y: &Envelope| -> Option<Envelope> {
        let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
        meets.entry(key).or_insert_with(|| lattice_meet(x, y)).clone()
    };
    let mut set: Vec<Pair> =
        maximal(t.pairs.iter().filter(|(e, f)| !e.is_bottom() && !f.is_bottom()).cloned().collect());
    // pairs among older elements were closed in an earlier round
    let mut frontier: Vec<Pair> = set.clone();
    while !frontier.is_empty() {
        let mut fresh: Vec<Pair> = Vec::new();
        for p in &frontier {
            for q in &set {
                if p == q {
                    continue;
                }
                let mut cands = Vec::with_capacity(2);
                if let Some(m) = meet(&p.1, &q.1) {
                    cands.push((p.0.tmax(&q.0), m));
                }
                if let Some(m) = meet(&p.0, &q.0) {
                    cands.push((m, p.1.tmax(&q.1)));
                }
                for c in cands {
                    let covered = |x: &Pair| c.0.leq(&x.0) && c.1.leq(&x.1);
                    if !set.iter().any(covered) && !fresh.iter().any(covered) {
                        fresh.push(c);
                    }
                }
            }
        }
        set.extend(fresh.iter().cloned());
        set = maximal(set);
        frontier = fresh.into_iter().filter(|c| set.contains(c)).collect();
    }
    FormalTensor::raw(set)
}

fn maximal(mut v: Vec<Pair>) -> Vec<Pair> {
    v.sort();
    v.dedup();
    let keep: Vec<bool> = v.iter().map(|p| !v.iter().any(|q| dominated(p, q))).collect();
    v.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

/// `S ⊕ T`.
pub fn tensor_add(s: &FormalTensor, t: &FormalTensor) -> FormalTensor {
    normalize(&FormalTensor::raw(s.pairs.iter().chain(t.pairs.iter()).cloned()))
}

/// `S · T`, extending `(a ⊗ b)(a' ⊗ b') = (a + a') ⊗ (b + b')`.
pub fn tensor_mul(s: &FormalTensor, t: &FormalTensor) -> FormalTensor {
    normalize(&raw_mul(s, t))
}

fn raw_mul(s: &FormalTensor, t: &FormalTensor) -> FormalTensor {
    FormalTensor::raw(s.pairs.iter().flat_map(|(e, f)| t.pairs.iter().map(move |(g, h)| (e.tplus(g), f.tplus(h)))))
}

/// Product of several factors, normalized after each step.
pub fn tensor_product(factors: &[&FormalTensor]) -> FormalTensor {
    factors.iter().fold(FormalTensor::neutral(), |acc, f| tensor_mul(&acc, f))
}

/// Whether the normal forms agree, a proof of equality.
pub fn normalize_equal(s: &FormalTensor, t: &FormalTensor) -> bool {
    normalize(s) == normalize(t)
}

fn act_envelope(k: &QuadInt, e: &Envelope) -> Envelope {
    if e.is_bottom() {
        return Envelope::Bottom;
    }
    let p = phi_inv(e).scale(&QuadRat::from_int(k.clone())).expect("Gaussian scalar");
    phi(&p).expect("Gaussian polygon")
}

/// `(α, β)•Σ e_i ⊗ f_i = Σ Φ(α·Φ⁻¹e_i) ⊗ Φ(β·Φ⁻¹f_i)`.
pub fn act_pair(alpha: &QuadInt, beta: &QuadInt, t: &FormalTensor) -> FormalTensor {
    assert!(alpha.field.d() == 1 && beta.field.d() == 1, "the action is over Z[i]");
    normalize(&FormalTensor::raw(t.pairs.iter().map(|(e, f)| (act_envelope(alpha, e), act_envelope(beta, f)))))
}

#[cfg(test)]
mod tests;
