use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use arsite::adelic::{adele_from_module, module_from_adele, primes_above, valuation};
use arsite::envelope::{phi, phi_inv};
use arsite::json::{
    envelope_from_json, polygon_from_json, quad_rat_from_json, tensor_from_json, vector_from_json, ToJson,
};
use arsite::oracle;
use arsite::polygeom::{convex_hull, SymPolygon};
use arsite::quadfield::{FieldId, PlanePoint, QuadInt, QuadRat};
use arsite::random::{polygon, proper_polygon, rng_for, tensor, valuation_vector};
use arsite::tensorlab::{eval_separator, normalize, tensor_add, tensor_mul, SepVerdict};

const DS: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

fn field() -> impl Strategy<Value = FieldId> {
    prop::sample::select(DS.to_vec()).prop_map(|d| FieldId::new(d).unwrap())
}

fn elem(field: FieldId, r: i64) -> impl Strategy<Value = QuadInt> {
    (-r..=r, -r..=r).prop_map(move |(a, b)| QuadInt::new(field, a, b))
}

fn field_and_pair(r: i64) -> impl Strategy<Value = (QuadInt, QuadInt)> {
    field().prop_flat_map(move |f| (elem(f, r), elem(f, r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative((x, y) in field_and_pair(40)) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(&x * &x.conj(), QuadInt::from_integer(x.field, x.norm()));
    }

    #[test]
    fn gcd_divides_and_matches_euclid((x, y) in field_and_pair(30)) {
        prop_assume!(!x.is_zero() || !y.is_zero());
        let g = QuadInt::gcd(&x, &y).unwrap();
        prop_assert!(g.divides(&x) && g.divides(&y));
        if let Some(e) = oracle::euclid_gcd(&x, &y) {
            prop_assert_eq!(e.canonical_unit_rep().unwrap(), g.clone());
        }
        // x | y forces gcd(x, y) ~ x
        if !x.is_zero() && x.divides(&y) {
            prop_assert_eq!(g, x.canonical_unit_rep().unwrap());
        }
    }

    #[test]
    fn rational_field_laws((x, y) in field_and_pair(20), dx in 1i64..9, dy in 1i64..9) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let p = QuadRat::new(x, dx.into());
        let q = QuadRat::new(y, dy.into());
        let one = QuadRat::from_integer(p.field(), 1);
        prop_assert_eq!(&p * &p.inv().unwrap(), one);
        prop_assert_eq!((&p * &q).div(&q).unwrap(), p.clone());
        prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
        prop_assert_eq!(QuadRat::from_plane(p.field(), &p.to_plane()), p);
    }

    #[test]
    fn hull_matches_gift_wrapping(pts in prop::collection::vec((-6i64..=6, -6i64..=6), 3..12)) {
        let pts: Vec<PlanePoint> = pts.into_iter().map(|(x, y)| PlanePoint::from_ints(x, y)).collect();
        let ours = convex_hull(&pts);
        let reference = oracle::gift_wrap(&pts);
        let key = |p: &PlanePoint| (p.x.clone(), p.y.clone());
        let mut a: Vec<_> = ours.iter().map(key).collect();
        let mut b: Vec<_> = reference.iter().map(key).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(oracle::shoelace2(&ours), oracle::shoelace2(&reference));
    }

    #[test]
    fn minkowski_area_is_superadditive(f in field(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let a = proper_polygon(&mut rng, f, 3, 3);
        let b = proper_polygon(&mut rng, f, 3, 3);
        let s = a.minkowski_sum(&b).unwrap();
        // mixed area term is non-negative
        prop_assert!(s.twice_area() >= a.twice_area() + b.twice_area());
        prop_assert!(s.contains(&a.hull_union(&b).unwrap()));
    }

    #[test]
    fn scaling_is_a_semiring_map(f in field(), seed in any::<u64>(), k in (-3i64..=3, -3i64..=3, 1i64..4)) {
        let mut rng = rng_for(seed, 1);
        let a = polygon(&mut rng, f, 3, 3);
        let b = polygon(&mut rng, f, 3, 3);
        let k = QuadRat::from_parts(f, k.0, k.1, k.2);
        let s = |p: &SymPolygon| p.scale(&k).unwrap();
        prop_assert_eq!(s(&a.hull_union(&b).unwrap()), s(&a).hull_union(&s(&b)).unwrap());
        prop_assert_eq!(s(&a.minkowski_sum(&b).unwrap()), s(&a).minkowski_sum(&s(&b)).unwrap());
    }

    #[test]
    fn lattice_meet_is_a_lower_bound(f in field(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 2);
        let a = proper_polygon(&mut rng, f, 4, 3);
        let b = proper_polygon(&mut rng, f, 4, 3);
        let m = a.lattice_meet(&b).unwrap();
        prop_assert!(a.contains(&m) && b.contains(&m));
        prop_assert!(m.is_integral());
        prop_assert_eq!(m.clone(), b.lattice_meet(&a).unwrap());
        prop_assert_eq!(a.lattice_meet(&a).unwrap(), a.clone());
        prop_assert_eq!(m.lattice_meet(&a).unwrap(), m);
    }

    #[test]
    fn phi_is_order_preserving(seed in any::<u64>()) {
        let f = FieldId::new(1).unwrap();
        let mut rng = rng_for(seed, 3);
        let a = polygon(&mut rng, f, 4, 3);
        let b = polygon(&mut rng, f, 4, 3);
        let (pa, pb) = (phi(&a).unwrap(), phi(&b).unwrap());
        prop_assert_eq!(b.contains(&a), pa.leq(&pb));
        prop_assert_eq!(phi_inv(&pa), a);
    }

    #[test]
    fn valuations_are_additive(f in field(), (x, y) in (-20i64..=20, -20i64..=20), (u, v) in (-20i64..=20, -20i64..=20), p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 29])) {
        let a = QuadRat::from_parts(f, x, y, 1);
        let b = QuadRat::from_parts(f, u, v, 6);
        prop_assume!(!a.is_zero() && !b.is_zero());
        for q in primes_above(f, p) {
            let va = valuation(&a, &q).unwrap();
            let vb = valuation(&b, &q).unwrap();
            prop_assert_eq!(valuation(&(&a * &b), &q).unwrap(), va + vb);
        }
        let product: BigInt = primes_above(f, p).iter().map(|q| BigInt::from(q.norm()).pow(q.ramification() as u32)).product();
        prop_assert_eq!(product, BigInt::from(p * p));
    }

    #[test]
    fn adele_roundtrip(f in field(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 4);
        let a = valuation_vector(&mut rng, f, 60);
        prop_assert_eq!(adele_from_module(&module_from_adele(&a)).unwrap(), a);
    }

    #[test]
    fn json_roundtrip(f in field(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 5);
        let p = polygon(&mut rng, f, 4, 3);
        prop_assert_eq!(polygon_from_json(&p.to_json()).unwrap(), p);
        let q = QuadRat::from_parts(f, 3, -7, 4);
        prop_assert_eq!(quad_rat_from_json(f, &q.to_json()).unwrap(), q);
        let v = valuation_vector(&mut rng, f, 60);
        prop_assert_eq!(vector_from_json(f, &v.to_json()).unwrap(), v);
        let g = FieldId::new(1).unwrap();
        let e = phi(&polygon(&mut rng, g, 4, 3)).unwrap();
        prop_assert_eq!(envelope_from_json(&e.to_json()).unwrap(), e);
        let t = tensor(&mut rng, 3);
        prop_assert_eq!(tensor_from_json(&t.to_json()).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn normal_forms_are_stable_and_sound(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 6);
        let a = tensor(&mut rng, 3);
        let b = tensor(&mut rng, 2);
        let c = tensor(&mut rng, 2);
        prop_assert_eq!(normalize(&a), a.clone());
        prop_assert_eq!(tensor_add(&a, &b), tensor_add(&b, &a));
        prop_assert_eq!(tensor_mul(&a, &b), tensor_mul(&b, &a));
        let lhs = tensor_mul(&a, &tensor_add(&b, &c));
        let rhs = tensor_add(&tensor_mul(&a, &b), &tensor_mul(&a, &c));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(eval_separator(&lhs, &rhs), SepVerdict::PossiblyEqual);
    }
}

#[test]
fn units_and_one() {
    for f in FieldId::all() {
        let units = f.units();
        assert_eq!(units.len(), f.unit_order());
        assert!(units.iter().all(QuadInt::is_unit));
        assert!(f.one().norm().is_one());
        assert!(f.zero().norm().is_zero());
    }
}
