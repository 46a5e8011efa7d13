use super::*;
use crate::envelope::Line;
use crate::polygeom::SymPolygon;
use crate::quadfield::FieldId;
use crate::random::{rng_for, tensor};

fn env(ls: &[(i64, i64)]) -> Envelope {
    Envelope::from_lines(ls.iter().map(|&(a, b)| Line::from_ints(a, b)).collect())
}

fn dk() -> Envelope {
    env(&[(1, 0), (0, 1)])
}

fn t(pairs: &[(Envelope, Envelope)]) -> FormalTensor {
    FormalTensor::raw(pairs.iter().cloned())
}

#[test]
fn add_examples() {
    let e = dk();
    let e2 = env(&[(2, 0), (0, 2)]);
    let f = env(&[(1, 1)]);
    let x = normalize(&t(&[(e.clone(), f.clone())]));
    assert_eq!(tensor_add(&x, &x), x);
    let merged = tensor_add(&t(&[(e.clone(), f.clone())]), &t(&[(env(&[(3, 0)]), f.clone())]));
    assert_eq!(merged, normalize(&t(&[(e.tmax(&env(&[(3, 0)])), f.clone())])));
    let absorbed = tensor_add(&t(&[(e.clone(), f.clone())]), &t(&[(e2.clone(), f.tplus(&f))]));
    assert_eq!(absorbed, normalize(&t(&[(e2, f.tplus(&f))])));
}

#[test]
fn normalize_examples() {
    let e = dk();
    let f = env(&[(1, 1)]);
    let g = env(&[(3, 0)]);
    assert_eq!(normalize(&t(&[(e.clone(), f.clone()), (e.clone(), g.clone())])), t(&[(e.clone(), f.tmax(&g))]));
    // incomparable in both coordinates: unchanged
    let anti = t(&[(env(&[(3, 0)]), env(&[(0, 3)])), (env(&[(0, 3)]), env(&[(3, 0)]))]);
    assert_eq!(normalize(&anti), anti);
    assert!(normalize(&t(&[(Envelope::Bottom, e)])).is_bottom());
}

#[test]
fn mul_examples() {
    let e = dk();
    let f = env(&[(1, 1)]);
    let x = normalize(&t(&[(e.clone(), f.clone())]));
    assert_eq!(tensor_mul(&x, &FormalTensor::neutral()), x);
    assert!(tensor_mul(&x, &FormalTensor::bottom()).is_bottom());
    let y = normalize(&t(&[(f.clone(), e.clone())]));
    assert_eq!(tensor_mul(&x, &y), normalize(&t(&[(e.tplus(&f), f.tplus(&e))])));
}

#[test]
fn action_examples() {
    let d = FieldId::new(1).unwrap();
    let x = normalize(&t(&[(dk(), dk())]));
    let one = d.one();
    let i = d.omega();
    let one_plus_i = QuadInt::new(d, 1, 1);
    assert_eq!(act_pair(&one, &one, &x), x);
    assert_eq!(act_pair(&i, &i, &x), x);
    let sq = phi(&SymPolygon::dk(d).scale(&QuadRat::from_int(one_plus_i.clone())).unwrap()).unwrap();
    assert_eq!(act_pair(&one_plus_i, &one, &x), normalize(&t(&[(sq, dk())])));
}

#[test]
fn separator_examples() {
    let e = dk();
    let f = env(&[(2, 0), (0, 2)]);
    let x = normalize(&t(&[(e.clone(), f.clone())]));
    assert_eq!(eval_separator(&x, &x), SepVerdict::PossiblyEqual);
    let y = normalize(&t(&[(f.clone(), e.clone())]));
    assert_eq!(eval_separator(&x, &y), SepVerdict::Distinct);
    // bilinearity identity must not separate
    let g = env(&[(3, 0)]);
    let lhs = t(&[(e.clone(), f.clone()), (g.clone(), f.clone())]);
    let rhs = t(&[(e.tmax(&g), f.clone())]);
    assert_eq!(eval_separator(&lhs, &rhs), SepVerdict::PossiblyEqual);
    assert_eq!(eval_separator(&FormalTensor::bottom(), &x), SepVerdict::Distinct);
    assert_eq!(eval_separator(&FormalTensor::bottom(), &FormalTensor::bottom()), SepVerdict::PossiblyEqual);
}

#[test]
fn reduced_examples() {
    let mut rng = rng_for(7, 0);
    let x = tensor(&mut rng, 2);
    let a = ReducedElement::new(x.clone(), x.clone());
    let one = ReducedElement::gamma(&FormalTensor::neutral());
    match reduced_equal(&a, &one, 1, &[]) {
        ReducedVerdict::Equal { witness } => assert_eq!(witness, FormalTensor::neutral()),
        v => panic!("{v:?}"),
    }
    let y = tensor(&mut rng, 2);
    let distinct = ReducedElement::gamma(&tensor_mul(&y, &y));
    if eval_separator(&tensor_mul(&y, &y), &FormalTensor::neutral()) == SepVerdict::Distinct {
        assert_eq!(reduced_equal(&distinct, &one, 1, &[]), ReducedVerdict::Distinct);
    }
}

#[test]
fn normalize_commutes_with_products() {
    for i in 0..60 {
        let mut rng = rng_for(11, i);
        let a = tensor(&mut rng, 2);
        let b = tensor(&mut rng, 2);
        let c = tensor(&mut rng, 2);
        let left = tensor_mul(&tensor_mul(&a, &b), &c);
        let right = tensor_mul(&a, &tensor_mul(&b, &c));
        assert_eq!(left, right, "sample {i}");
        assert_eq!(tensor_product(&[&a, &b, &c]), left, "sample {i}");
    }
}

#[test]
fn experiment_is_consistent_and_deterministic() {
    let r1 = cancellativity_experiment(12, 5, 3);
    let r2 = cancellativity_experiment(12, 5, 1);
    assert_eq!(r1, r2);
    assert!(r1.iter().all(ExperimentRecord::consistent));
    assert!(cancellativity_experiment(0, 5, 2).is_empty());
}
