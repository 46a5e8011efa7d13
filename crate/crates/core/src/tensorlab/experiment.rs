//! Sampling harness around multiplicative cancellativity of `F ⊗ F`.
//!
//! Each sample draws `a`, `a'`, `c` and records what both oracles say about
//! `a` vs `a'` and `a·c` vs `a'·c`. A sample whose products have equal
//! normal forms while the factors do not is logged as a candidate; the
//! harness draws no conclusion from it.

use rand::Rng;
use serde_json::{json, Value};

use super::{eval_separator, normalize, tensor_add, tensor_mul, FormalTensor, SepVerdict};
use crate::envelope::Envelope;
use crate::json::ToJson;
use crate::random::{gaussian_envelope, rng_for, tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentRecord {
    pub sample: u64,
    pub mode: &'static str,
    pub a: FormalTensor,
    pub a_prime: FormalTensor,
    pub c: FormalTensor,
    pub factors_normalize_equal: bool,
    pub factors_separator: SepVerdict,
    pub products_normalize_equal: bool,
    pub products_separator: SepVerdict,
}

impl ExperimentRecord {
    pub fn candidate(&self) -> bool {
        self.products_normalize_equal && !self.factors_normalize_equal
    }

    /// Equal normal forms with a separating evaluation would be a bug.
    pub fn consistent(&self) -> bool {
        (!self.factors_normalize_equal || self.factors_separator == SepVerdict::PossiblyEqual)
            && (!self.products_normalize_equal || self.products_separator == SepVerdict::PossiblyEqual)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sample": self.sample,
            "mode": self.mode,
            "a": self.a.to_json(),
            "a_prime": self.a_prime.to_json(),
            "c": self.c.to_json(),
            "factors_normalize_equal": self.factors_normalize_equal,
            "factors_separator": self.factors_separator.as_str(),
            "products_normalize_equal": self.products_normalize_equal,
            "products_separator": self.products_separator.as_str(),
            "candidate": self.candidate(),
        })
    }
}

/// `a'` for the sample: an unrelated tensor, `a` plus a summand lying below
/// it for the bilinear order, or `a` with one component redrawn.
fn perturb(rng: &mut impl Rng, a: &FormalTensor) -> (&'static str, FormalTensor) {
    match rng.gen_range(0..3) {
        0 => ("independent", tensor(rng, 2)),
        1 => {
            // 0̄ ≤ e for every envelope of a polygon containing 0, so
            // 0̄ ⊗ (f₁ ∨ f₂) ≤ e₁ ⊗ f₁ ⊕ e₂ ⊗ f₂.
            let ps = a.pairs();
            let extra = if ps.len() >= 2 {
                (Envelope::zero(), ps[0].1.tmax(&ps[1].1))
            } else {
                (Envelope::zero(), ps[0].1.clone())
            };
            ("lower_summand", tensor_add(a, &FormalTensor::raw([extra])))
        }
        _ => {
            let mut pairs = a.pairs().to_vec();
            let i = rng.gen_range(0..pairs.len());
            pairs[i].1 = gaussian_envelope(rng, 2);
            ("redrawn_component", normalize(&FormalTensor::raw(pairs)))
        }
    }
}

fn sample(seed: u64, index: u64) -> ExperimentRecord {
    let mut rng = rng_for(seed, index);
    let a = tensor(&mut rng, 2);
    let (mode, a_prime) = perturb(&mut rng, &a);
    let c = tensor(&mut rng, 2);
    let ac = tensor_mul(&a, &c);
    let apc = tensor_mul(&a_prime, &c);
    ExperimentRecord {
        sample: index,
        mode,
        factors_normalize_equal: a == a_prime,
        factors_separator: eval_separator(&a, &a_prime),
        products_normalize_equal: ac == apc,
        products_separator: eval_separator(&ac, &apc),
        a,
        a_prime,
        c,
    }
}

/// Runs `sample_size` samples on up to `threads` workers; records come
/// back in sample order.
pub fn cancellativity_experiment(sample_size: u64, seed: u64, threads: usize) -> Vec<ExperimentRecord> {
    let threads = threads.max(1) as u64;
    let mut out: Vec<ExperimentRecord> = Vec::with_capacity(sample_size as usize);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                s.spawn(move || {
                    (0..sample_size).filter(|i| i % threads == w).map(|i| sample(seed, i)).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            out.extend(h.join().expect("worker panicked"));
        }
    });
    out.sort_by_key(|r| r.sample);
    out
}
