use super::*;
use crate::oracle;

fn f(d: u32) -> FieldId {
    FieldId::new(d).unwrap()
}

fn pt(x: i64, y: i64) -> PlanePoint {
    PlanePoint::from_ints(x, y)
}

fn q(field: FieldId, a: i64, b: i64) -> QuadRat {
    QuadRat::from_int(QuadInt::new(field, a, b))
}

fn half(x: i64, y: i64) -> PlanePoint {
    PlanePoint::new(Rational::new(x.into(), 2.into()), Rational::new(y.into(), 2.into()))
}

#[test]
fn dk_sector_vertices() {
    assert_eq!(SymPolygon::dk(f(1)).sector(), &[pt(1, 0)]);
    assert_eq!(SymPolygon::dk(f(3)).sector(), &[pt(1, 0)]);
    assert_eq!(SymPolygon::dk(f(2)).sector(), &[pt(1, 0), pt(0, 1)]);
    assert_eq!(SymPolygon::dk(f(7)).sector(), &[pt(1, 0), half(1, 1)]);
    assert_eq!(SymPolygon::dk(f(3)).full_orbit().len(), 6);
}

#[test]
fn neutral_and_absorbing_elements() {
    for d in FieldId::all() {
        let dk = SymPolygon::dk(d);
        let e = SymPolygon::empty(d);
        let z = SymPolygon::zero(d);
        assert_eq!(dk.hull_union(&e).unwrap(), dk);
        assert_eq!(dk.minkowski_sum(&z).unwrap(), dk);
        assert_eq!(dk.minkowski_sum(&e).unwrap(), e);
        let two = QuadRat::from_integer(d, 2);
        assert_eq!(dk.minkowski_sum(&dk).unwrap(), dk.scale(&two).unwrap());
        assert_eq!(dk.hull_union(&dk.scale(&two).unwrap()).unwrap(), dk.scale(&two).unwrap());
    }
}

#[test]
fn union_with_rotated_square_matches_reference_hull() {
    let d = f(1);
    let dk = SymPolygon::dk(d);
    let u = dk.hull_union(&dk.scale(&q(d, 1, 1)).unwrap()).unwrap();
    let mut pts = pt(1, 0).orbit(d);
    pts.extend(pt(1, 1).orbit(d));
    let mut expected = oracle::gift_wrap(&pts);
    let mut got = u.full_orbit();
    expected.sort();
    got.sort();
    assert_eq!(got, expected);
    // 1 sits on the edge from 1−i to 1+i, so the union is (1+i)·D_K
    assert_eq!(u, dk.scale(&q(d, 1, 1)).unwrap());
    let u = dk.scale(&QuadRat::from_integer(d, 3)).unwrap().hull_union(&dk.scale(&q(d, 2, 2)).unwrap()).unwrap();
    assert_eq!(u.full_orbit().len(), 8);
}

#[test]
fn scale_examples() {
    let d = f(1);
    let dk = SymPolygon::dk(d);
    assert_eq!(dk.scale(&q(d, 0, 0)).unwrap(), SymPolygon::zero(d));
    assert_eq!(SymPolygon::empty(d).scale(&q(d, 0, 0)).unwrap(), SymPolygon::empty(d));
    assert_eq!(dk.scale(&q(d, 0, 1)).unwrap(), dk);
    assert_eq!(dk.scale(&q(d, 1, 1)).unwrap().sector(), &[pt(1, 1)]);
}

#[test]
fn degenerate_orbit_rejected() {
    assert_eq!(SymPolygon::from_points(f(2), &[pt(1, 1)]), Err(PolyError::NotProper));
    assert!(SymPolygon::from_points(f(1), &[pt(1, 1)]).is_ok());
    assert_eq!(SymPolygon::from_points(f(2), &[pt(0, 0)]).unwrap(), SymPolygon::zero(f(2)));
}

#[test]
fn field_mismatch_reported() {
    let a = SymPolygon::dk(f(1));
    let b = SymPolygon::dk(f(2));
    assert_eq!(a.hull_union(&b), Err(PolyError::FieldMismatch(1, 2)));
    assert_eq!(a.minkowski_sum(&b), Err(PolyError::FieldMismatch(1, 2)));
}

#[test]
fn sector_decomposition_examples() {
    let d = f(1);
    assert_eq!(sector_decompose(&SymPolygon::dk(d)).unwrap(), vec![q(d, 1, 0)]);
    assert_eq!(sector_decompose(&SymPolygon::dk(f(3))).unwrap(), vec![q(f(3), 1, 0)]);
    let p = SymPolygon::from_points(d, &[pt(3, 0), pt(2, 2)]).unwrap();
    let s = sector_decompose(&p).unwrap();
    assert_eq!(s, vec![q(d, 3, 0), q(d, 2, 2)]);
    let flat = SymPolygon::from_points(d, &[pt(2, 0), pt(1, 1)]).unwrap();
    assert_eq!(sector_decompose(&flat).unwrap(), vec![q(d, 2, 0)]);
    assert_eq!(reconstruct_from_summits(d, &s).unwrap(), p);
    assert_eq!(sector_decompose(&SymPolygon::dk(f(2))), Err(PolyError::WrongField(2)));
    assert_eq!(sector_decompose(&SymPolygon::zero(d)), Err(PolyError::NotProper));
}

#[test]
fn global_sections() {
    let d = f(7);
    assert!(global_sections_check(&SymPolygon::empty(d)));
    assert!(global_sections_check(&SymPolygon::zero(d)));
    assert!(!global_sections_check(&SymPolygon::dk(d)));
}

#[test]
fn aut_orbit_examples() {
    assert!(aut_orbit_equiv(&q(f(1), 0, 1), &q(f(1), 1, 0)).unwrap());
    assert!(!aut_orbit_equiv(&q(f(2), 0, 1), &q(f(2), 1, 0)).unwrap());
    let mu = QuadRat::from_parts(f(43), 3, -2, 5);
    assert!(aut_orbit_equiv(&mu, &mu).unwrap());
    assert_eq!(aut_orbit_equiv(&q(f(43), 0, 0), &mu), Err(PolyError::ZeroInput));
}

#[test]
fn stalk_examples() {
    let d = f(1);
    let k = q(d, 1, 1).inv().unwrap();
    let p = SymPolygon::dk(d).scale(&q(d, 1, 1)).unwrap();
    let s = stalk_scale(&k, &p).unwrap();
    assert_eq!(s.polygon, SymPolygon::dk(d));
    assert!(s.membership().unwrap().member);
    let e = stalk_scale(&k, &SymPolygon::empty(d)).unwrap();
    assert!(e.polygon.is_empty());
    assert_eq!(stalk_scale(&q(d, 0, 0), &p), Err(PolyError::ZeroInput));
}

#[test]
fn membership_counterexamples_rejected() {
    let p = SymPolygon::from_points(f(2), &[pt(3, 0), pt(0, 1)]).unwrap();
    assert!(!p.in_generator_semiring().unwrap().member);
    for d in [7, 11, 19, 43, 67, 163] {
        let p = SymPolygon::from_points(f(d), &[pt(2, 0), half(1, 1)]).unwrap();
        assert!(!p.in_generator_semiring().unwrap().member, "d = {d}");
    }
}

#[test]
fn membership_positive_cases_replay() {
    let d = f(1);
    let p = SymPolygon::from_points(d, &[pt(3, 1), pt(2, 2)]).unwrap();
    let m = p.in_generator_semiring().unwrap();
    assert!(m.member);
    assert_eq!(m.decomposition.unwrap().replay(d).unwrap(), p);
    // 3·D_K over Z[√−2] needs a genuine sum
    let d = f(2);
    let p = SymPolygon::dk(d).scale(&QuadRat::from_integer(d, 3)).unwrap();
    let m = p.in_generator_semiring().unwrap();
    assert!(m.member);
    assert_eq!(m.decomposition.unwrap().replay(d).unwrap(), p);
}

#[test]
fn membership_requires_vertices_in_module() {
    let d = f(1);
    let p = SymPolygon::dk(d);
    assert!(!membership_in_generated(&p, &[q(d, 2, 0)]).unwrap().member);
    assert!(membership_in_generated(&p, &[q(d, 2, 0), q(d, 3, 0)]).unwrap().member);
    assert!(!membership_in_generated(&p, &[]).unwrap().member);
    assert!(membership_in_generated(&SymPolygon::zero(d), &[]).unwrap().member);
}

#[test]
fn ideal_generator_of_fractions() {
    let d = f(1);
    let g = ideal_generator(d, &[QuadRat::from_parts(d, 1, 0, 2), QuadRat::from_parts(d, 1, 0, 3)]).unwrap().unwrap();
    assert_eq!(g, QuadRat::from_parts(d, 1, 0, 6));
}

#[test]
fn elements_by_norm_match_brute_force() {
    for d in FieldId::all() {
        let got = elements_up_to_norm(d, &20.into());
        let mut count = 0;
        for a in -10..=10 {
            for b in -10..=10 {
                if QuadInt::new(d, a, b).norm() <= 20.into() {
                    count += 1;
                }
            }
        }
        assert_eq!(got.len(), count, "d = {}", d.d());
    }
}

#[test]
fn lattice_meet_examples() {
    let d = f(1);
    let a = SymPolygon::dk(d).scale(&q(d, 3, 0)).unwrap();
    let b = SymPolygon::dk(d).scale(&q(d, 2, 2)).unwrap();
    let m = a.lattice_meet(&b).unwrap();
    let expect = SymPolygon::from_points(d, &[pt(2, 1), pt(1, 2)]).unwrap();
    assert_eq!(m, expect);
    assert_eq!(SymPolygon::dk(d).lattice_meet(&b).unwrap(), SymPolygon::dk(d));
    assert!(a.lattice_meet(&SymPolygon::empty(d)).unwrap().is_empty());
    assert!(a.lattice_meet(&SymPolygon::zero(d)).unwrap().is_zero());
}

#[test]
fn lattice_meet_keeps_every_common_lattice_point() {
    use crate::random::{proper_polygon, rng_for};
    for d in FieldId::all() {
        for i in 0..15 {
            let mut rng = rng_for(3, i);
            let a = proper_polygon(&mut rng, d, 4, 3);
            let b = proper_polygon(&mut rng, d, 4, 3);
            let m = a.lattice_meet(&b).unwrap();
            let mut common = Vec::new();
            for x in -10..=10 {
                for y in -10..=10 {
                    let z = QuadInt::new(d, x, y).embed();
                    let both = a.contains_point(&z) && b.contains_point(&z);
                    if both {
                        common.push(z.clone());
                    }
                    if !m.is_zero() {
                        assert_eq!(m.contains_point(&z), both, "d={} {a} {b} at {x},{y}", d.d());
                    }
                }
            }
            if m.is_zero() {
                // only a segment through 0 is common
                let o = PlanePoint::origin();
                assert!(common.iter().all(|z| common.iter().all(|w| cross(&o, z, w).is_zero())));
            }
        }
    }
}
