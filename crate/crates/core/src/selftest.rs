//! The invariant suite behind `arsite selftest`. Each group is
//! deterministic in the seed and independent of the others; reports come
//! back ordered by group name whatever the scheduling.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::adelic::{
    adele_from_module, complementary_generator, element_support, fiber_member, ideal_count, iso_class_equal,
    module_from_adele, norm_product, primes_above, primes_up_to, pullback_fiber, rational_primes, valuation,
    verify_witness, Fiber, FiberPoint, PrimeIdeal, PrimeKind, DEFAULT_PRIME_BOUND,
};
use crate::envelope::{phi, phi_inv, Envelope};
use crate::oracle;
use crate::polygeom::{global_sections_check, stalk_scale, SymPolygon};
use crate::quadfield::{FieldId, PlanePoint, QuadRat};
use crate::random::{gaussian_envelope, nonzero_quad_rat, polygon, proper_polygon, rng_for, tensor, valuation_vector};
use crate::tensorlab::{
    eval_separator, normalize, normalize_equal, reduced_equal, tensor_add, tensor_mul, tensor_product, FormalTensor,
    ReducedElement, ReducedVerdict, SepVerdict,
};

const MAX_LOGGED: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
    failed: u64,
}

impl GroupReport {
    fn new(name: &'static str) -> Self {
        GroupReport { name, checks: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LOGGED {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failed(&self) -> u64 {
        self.failed
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.name,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": self.checks,
            "failed": self.failed,
            "failures": self.failures,
        })
    }
}

type GroupFn = fn(u64) -> GroupReport;

/// Group names in report order, each paired with its runner.
pub const GROUPS: [(&str, GroupFn); 10] = [
    ("01_semiring_axioms", semiring_axioms),
    ("02_membership_dichotomy", membership_dichotomy),
    ("03_phi_isomorphism", phi_isomorphism),
    ("04_stalk_consistency", stalk_consistency),
    ("05_global_sections", global_sections),
    ("06_primes_and_ideals", primes_and_ideals),
    ("07_adelic_roundtrip", adelic_roundtrip),
    ("08_fibers", fibers),
    ("09_tensor_sandwich", tensor_sandwich),
    ("10_reduced_quotient", reduced_quotient),
];

pub fn run_group(name: &str, seed: u64) -> Option<GroupReport> {
    GROUPS.iter().find(|(n, _)| *n == name).map(|(_, f)| f(seed))
}

/// Runs the named groups (all when `only` is empty) on up to `threads`
/// workers.
pub fn run(seed: u64, threads: usize, only: &[String]) -> Vec<GroupReport> {
    run_timed(seed, threads, only).into_iter().map(|(r, _)| r).collect()
}

/// As [`run`], with the wall time of each group.
pub fn run_timed(seed: u64, threads: usize, only: &[String]) -> Vec<(GroupReport, Duration)> {
    let selected: Vec<(&str, GroupFn)> =
        GROUPS.iter().filter(|(n, _)| only.is_empty() || only.iter().any(|o| o == n)).copied().collect();
    let threads = threads.max(1);
    let mut out = Vec::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let selected = &selected;
                s.spawn(move || {
                    selected
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| i % threads == w)
                        .map(|(_, (_, f))| {
                            let t = Instant::now();
                            let r = f(seed);
                            (r, t.elapsed())
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            out.extend(h.join().expect("selftest worker panicked"));
        }
    });
    out.sort_by_key(|(r, _)| r.name);
    out
}

/// One JSON object per group, then a summary line.
pub fn render_report(seed: u64, reports: &[GroupReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.to_json().to_string());
        s.push('\n');
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    let summary = json!({
        "seed": seed,
        "groups": reports.len(),
        "passed": reports.len() - failed.len(),
        "failed_groups": failed,
    });
    s.push_str(&summary.to_string());
    s.push('\n');
    s
}

fn stream(group: u64, field: FieldId, i: u64) -> u64 {
    (group << 48) | (u64::from(field.d()) << 32) | i
}

fn semiring_axioms(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("01_semiring_axioms");
    for field in FieldId::all() {
        let empty = SymPolygon::empty(field);
        let zero = SymPolygon::zero(field);
        for i in 0..500 {
            let mut rng = rng_for(seed, stream(1, field, i));
            let a = polygon(&mut rng, field, 3, 3);
            let b = polygon(&mut rng, field, 3, 3);
            let c = polygon(&mut rng, field, 3, 3);
            let u = |x: &SymPolygon, y: &SymPolygon| x.hull_union(y).expect("same field");
            let m = |x: &SymPolygon, y: &SymPolygon| x.minkowski_sum(y).expect("same field");
            let tag = || format!("d={} sample {i}: {a} | {b} | {c}", field.d());
            r.check(u(&u(&a, &b), &c) == u(&a, &u(&b, &c)), || format!("∪ assoc, {}", tag()));
            r.check(m(&m(&a, &b), &c) == m(&a, &m(&b, &c)), || format!("+ assoc, {}", tag()));
            r.check(u(&a, &b) == u(&b, &a), || format!("∪ comm, {}", tag()));
            r.check(m(&a, &b) == m(&b, &a), || format!("+ comm, {}", tag()));
            r.check(u(&a, &a) == a, || format!("∪ idem, {}", tag()));
            r.check(m(&a, &u(&b, &c)) == u(&m(&a, &b), &m(&a, &c)), || format!("distrib, {}", tag()));
            r.check(u(&a, &empty) == a, || format!("∅ neutral, {}", tag()));
            r.check(m(&a, &zero) == a, || format!("{{0}} neutral, {}", tag()));
            r.check(m(&a, &empty) == empty, || format!("∅ absorbing, {}", tag()));
        }
    }
    r
}

/// The fixed polygon that lies outside `C_{O_K}` for each field without
/// the dichotomy: the hull of `±3, ±i√2` for `d = 2`, of `±2, ±ω`
/// otherwise.
pub fn counterexample(field: FieldId) -> SymPolygon {
    let pts = if field.d() == 2 {
        vec![PlanePoint::from_ints(3, 0), PlanePoint::from_ints(0, 1)]
    } else {
        vec![PlanePoint::from_ints(2, 0), field.omega().embed()]
    };
    SymPolygon::from_points(field, &pts).expect("proper polygon")
}

fn membership_dichotomy(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("02_membership_dichotomy");
    for d in [1, 3] {
        let field = FieldId::new(d).expect("listed field");
        for i in 0..200 {
            let mut rng = rng_for(seed, stream(2, field, i));
            let p = proper_polygon(&mut rng, field, 3, 3);
            let m = p.in_generator_semiring().expect("integral polygon");
            let replayed = m.decomposition.as_ref().map(|dec| dec.replay(field).expect("same field"));
            r.check(m.member && replayed.as_ref() == Some(&p), || format!("d={d} sample {i}: {p}"));
        }
    }
    for field in FieldId::all().filter(|f| f.d() != 1 && f.d() != 3) {
        let p = counterexample(field);
        let m = p.in_generator_semiring().expect("integral polygon");
        r.check(!m.member, || format!("d={} counterexample {p} accepted", field.d()));
    }
    r
}

fn phi_isomorphism(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("03_phi_isomorphism");
    let field = FieldId::new(1).expect("d = 1");
    for i in 0..1000 {
        let mut rng = rng_for(seed, stream(3, field, i));
        let a = polygon(&mut rng, field, 4, 3);
        let b = polygon(&mut rng, field, 4, 3);
        let pa = phi(&a).expect("d = 1");
        let pb = phi(&b).expect("d = 1");
        let tag = || format!("sample {i}: {a} | {b}");
        r.check(phi(&a.hull_union(&b).expect("same field")).expect("d = 1") == pa.tmax(&pb), || {
            format!("union, {}", tag())
        });
        r.check(phi(&a.minkowski_sum(&b).expect("same field")).expect("d = 1") == pa.tplus(&pb), || {
            format!("sum, {}", tag())
        });
        r.check(phi_inv(&pa) == a, || format!("Φ⁻¹Φ, {}", tag()));
        r.check(phi(&phi_inv(&pa)).expect("d = 1") == pa, || format!("ΦΦ⁻¹, {}", tag()));
    }
    r
}

fn stalk_consistency(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("04_stalk_consistency");
    for field in FieldId::all() {
        let one = QuadRat::from_integer(field, 1);
        for i in 0..50 {
            let mut rng = rng_for(seed, stream(4, field, i));
            let k = nonzero_quad_rat(&mut rng, field, 3, 3);
            let p = proper_polygon(&mut rng, field, 2, 2);
            let base = stalk_scale(&one, &p).and_then(|s| s.membership()).expect("valid input");
            let moved = stalk_scale(&k, &p).expect("k ≠ 0");
            let m = moved.membership().expect("valid input");
            let tag = || format!("d={} k={k} P={p}", field.d());
            r.check(m.member == base.member, || format!("membership differs, {}", tag()));
            for (mem, target) in [(&base, &p), (&m, &moved.polygon)] {
                if let Some(dec) = &mem.decomposition {
                    r.check(&dec.replay(field).expect("same field") == target, || {
                        format!("witness does not replay, {}", tag())
                    });
                }
            }
        }
    }
    r
}

fn global_sections(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("05_global_sections");
    for field in FieldId::all() {
        let mut corpus = vec![SymPolygon::empty(field), SymPolygon::zero(field), SymPolygon::dk(field)];
        let mut rng = rng_for(seed, stream(5, field, 0));
        while corpus.len() < 200 {
            corpus.push(proper_polygon(&mut rng, field, 4, 3));
        }
        for p in &corpus {
            let expect = p.is_empty() || p.is_zero();
            r.check(global_sections_check(p) == expect, || format!("d={} {p}", field.d()));
        }
    }
    r
}

fn primes_and_ideals(_seed: u64) -> GroupReport {
    let mut r = GroupReport::new("06_primes_and_ideals");
    for field in FieldId::all() {
        let disc = -(field.abs_discriminant() as i64);
        for p in rational_primes(DEFAULT_PRIME_BOUND) {
            let kind = primes_above(field, p)[0].kind;
            let expected = match oracle::kronecker(disc, p) {
                1 => PrimeKind::Split,
                -1 => PrimeKind::Inert,
                _ => PrimeKind::Ramified,
            };
            r.check(kind == expected, || format!("d={} p={p}: {} vs {}", field.d(), kind.as_str(), expected.as_str()));
            let np = norm_product(field, p);
            r.check(np == (p * p).into(), || format!("d={} p={p}: norm product {np}", field.d()));
        }
        for n in 1..=100 {
            let (a, b) = (ideal_count(field, n), oracle::brute_ideal_count(field, n));
            r.check(a == b, || format!("d={} n={n}: {a} vs {b}", field.d()));
        }
    }
    r
}

fn adelic_roundtrip(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("07_adelic_roundtrip");
    for field in FieldId::all() {
        let bound_primes = primes_up_to(field, DEFAULT_PRIME_BOUND);
        let delta = complementary_generator(field);
        for i in 0..100 {
            let mut rng = rng_for(seed, stream(7, field, i));
            let a = valuation_vector(&mut rng, field, DEFAULT_PRIME_BOUND);
            let h = module_from_adele(&a);
            let back = adele_from_module(&h);
            r.check(back.as_ref() == Ok(&a), || format!("d={} roundtrip of {a:?}", field.d()));
            for _ in 0..4 {
                let q = nonzero_quad_rat(&mut rng, field, 6, 12);
                let mut primes: BTreeSet<PrimeIdeal> = bound_primes.iter().cloned().collect();
                primes.extend(element_support(&q).expect("q ≠ 0"));
                let expect = primes
                    .iter()
                    .filter(|p| !a.free().contains(*p))
                    .all(|p| valuation(&q, p).expect("q ≠ 0") + a.exp(p) >= valuation(&delta, p).expect("δ ≠ 0"));
                let got = h.contains(&q).expect("q ≠ 0");
                r.check(got == expect, || format!("d={} H_a ∋ {q}: {got} vs {expect}", field.d()));
            }
            let k = nonzero_quad_rat(&mut rng, field, 4, 4);
            let b = a.act(&k).expect("k ≠ 0");
            match iso_class_equal(&a, &b).expect("same field") {
                Some(w) => r.check(verify_witness(&a, &b, &w).expect("w ≠ 0"), || {
                    format!("d={} witness {w} for k={k}", field.d())
                }),
                None => r.check(false, || format!("d={} translate by {k} not isomorphic", field.d())),
            }
        }
    }
    r
}

fn fibers(_seed: u64) -> GroupReport {
    let mut r = GroupReport::new("08_fibers");
    for field in FieldId::all() {
        let (e, z) = (SymPolygon::empty(field), SymPolygon::zero(field));
        r.check(pullback_fiber(&FiberPoint::Generic) == Fiber::Boolean, || "generic fiber".into());
        let (add, mul) = Fiber::boolean_tables(field);
        let add_ok = add == [[e.clone(), z.clone()], [z.clone(), z.clone()]];
        let mul_ok = mul == [[e.clone(), e.clone()], [e.clone(), z.clone()]];
        r.check(add_ok && mul_ok, || format!("d={} boolean tables", field.d()));
        r.check(!fiber_member(&FiberPoint::Generic, &SymPolygon::dk(field)).expect("valid"), || {
            format!("d={} D_K in the generic fiber", field.d())
        });
    }
    let field = FieldId::new(1).expect("d = 1");
    let p = primes_above(field, 2).remove(0);
    let pt = FiberPoint::Closed(p.clone());
    let dk = SymPolygon::dk(field);
    let inv = dk.scale(&p.as_element().inv().expect("π ≠ 0")).expect("same field");
    let third = dk.scale(&QuadRat::from_parts(field, 1, 0, 3)).expect("same field");
    r.check(fiber_member(&pt, &inv).expect("valid"), || format!("{inv} rejected at {p}"));
    r.check(!fiber_member(&pt, &third).expect("valid"), || format!("{third} accepted at {p}"));
    r
}

fn tensor_sandwich(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("09_tensor_sandwich");
    let field = FieldId::new(1).expect("d = 1");
    let raw = |pairs: Vec<(Envelope, Envelope)>| FormalTensor::raw(pairs);
    let certified =
        |s: &FormalTensor, t: &FormalTensor| normalize_equal(s, t) && eval_separator(s, t) == SepVerdict::PossiblyEqual;
    for i in 0..2000 {
        let mut rng = rng_for(seed, stream(9, field, i));
        let a = tensor(&mut rng, 2);
        let b = match i % 3 {
            0 => tensor(&mut rng, 2),
            1 => {
                let ps = a.pairs();
                let f = ps.iter().skip(1).fold(ps[0].1.clone(), |acc, p| acc.tmax(&p.1));
                tensor_add(&a, &raw(vec![(Envelope::zero(), f)]))
            }
            _ => {
                let mut ps = a.pairs().to_vec();
                ps[0].0 = gaussian_envelope(&mut rng, 2);
                normalize(&raw(ps))
            }
        };
        let clash = normalize_equal(&a, &b) && eval_separator(&a, &b) == SepVerdict::Distinct;
        r.check(!clash, || format!("sample {i}: {a} vs {b}"));

        let e = gaussian_envelope(&mut rng, 2);
        let e2 = gaussian_envelope(&mut rng, 2);
        let f = gaussian_envelope(&mut rng, 2);
        let f2 = gaussian_envelope(&mut rng, 2);
        let tag = || format!("sample {i}: e={e} e'={e2} f={f} f'={f2}");
        let lhs = raw(vec![(e.clone(), f.clone()), (e2.clone(), f.clone())]);
        r.check(certified(&lhs, &raw(vec![(e.tmax(&e2), f.clone())])), || format!("left bilinearity, {}", tag()));
        let lhs = raw(vec![(e.clone(), f.clone()), (e.clone(), f2.clone())]);
        r.check(certified(&lhs, &raw(vec![(e.clone(), f.tmax(&f2))])), || format!("right bilinearity, {}", tag()));
        r.check(certified(&tensor_add(&a, &a), &a), || format!("idempotence, sample {i}"));
        r.check(certified(&raw(vec![(Envelope::Bottom, f.clone())]), &FormalTensor::bottom()), || {
            format!("bottom factor, {}", tag())
        });
        let with_bottom = raw(vec![(e.clone(), f.clone()), (e2.clone(), Envelope::Bottom)]);
        r.check(certified(&with_bottom, &raw(vec![(e.clone(), f.clone())])), || format!("bottom summand, {}", tag()));
    }
    r
}

fn reduced_quotient(seed: u64) -> GroupReport {
    let mut r = GroupReport::new("10_reduced_quotient");
    let field = FieldId::new(1).expect("d = 1");
    for i in 0..200 {
        let mut rng = rng_for(seed, stream(10, field, i));
        let (a, b, x) = (tensor(&mut rng, 2), tensor(&mut rng, 2), tensor(&mut rng, 2));
        let (c, d) = (tensor(&mut rng, 2), tensor(&mut rng, 2));
        // (a, b) and (a', b') = (ax, bx) have equal products with (c, d)
        let u = ReducedElement::new(a.clone(), b.clone());
        let v = ReducedElement::new(tensor_mul(&a, &x), tensor_mul(&b, &x));
        let w = ReducedElement::new(c.clone(), d.clone());
        let (uw, vw) = (u.mul(&w), v.mul(&w));
        let hyp = tensor_mul(&uw.p, &vw.q) == tensor_mul(&vw.p, &uw.q);
        r.check(hyp, || format!("instance {i}: products not equal in R"));
        let cd = tensor_product(&[&c, &d]);
        let lhs = tensor_product(&[&u.p, &v.q, &cd]);
        let rhs = tensor_product(&[&v.p, &u.q, &cd]);
        r.check(lhs == rhs, || format!("instance {i}: c·d does not certify"));
        let verdict = reduced_equal(&u, &v, 0, std::slice::from_ref(&cd));
        r.check(matches!(verdict, ReducedVerdict::Equal { .. }), || format!("instance {i}: {verdict:?}"));
    }
    for i in 0..200 {
        let mut rng = rng_for(seed, stream(10, field, 1000 + i));
        let (a, b) = (tensor(&mut rng, 2), tensor(&mut rng, 2));
        let sum = ReducedElement::gamma(&tensor_add(&a, &b));
        let parts = ReducedElement::gamma(&a).add(&ReducedElement::gamma(&b));
        let verdict = reduced_equal(&sum, &parts, 0, &[]);
        r.check(matches!(verdict, ReducedVerdict::Equal { .. }), || format!("γ additivity {i}: {verdict:?}"));
        let prod = ReducedElement::gamma(&tensor_mul(&a, &b));
        let parts = ReducedElement::gamma(&a).mul(&ReducedElement::gamma(&b));
        let verdict = reduced_equal(&prod, &parts, 0, &[]);
        r.check(matches!(verdict, ReducedVerdict::Equal { .. }), || format!("γ multiplicativity {i}: {verdict:?}"));
    }
    r
}
