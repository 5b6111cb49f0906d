use std::sync::Arc;

use njordan::models::{
    enumerate_additive_maps, is_n_jordan, is_n_ring, make_zm, matrix_ring, predicate_report, product, recheck_witness,
    strict_upper, upper_triangular, AdditiveMap, FiniteRing, MapSpace,
};
use proptest::prelude::*;

fn rings() -> Vec<Arc<FiniteRing>> {
    let z5 = make_zm(5).unwrap();
    vec![
        Arc::new(z5.clone()),
        Arc::new(product(&z5, &z5).unwrap()),
        Arc::new(make_zm(7).unwrap()),
        Arc::new(upper_triangular(2, 2).unwrap()),
        Arc::new(strict_upper(3, 2).unwrap()),
    ]
}

#[test]
fn ring_maps_are_jordan_and_witnesses_recheck() {
    for r in rings() {
        for h in enumerate_additive_maps(&r, &r).unwrap() {
            for n in 2..=4 {
                let ring = is_n_ring(&h, n).unwrap();
                let jordan = is_n_jordan(&h, n).unwrap();
                if ring.holds {
                    assert!(jordan.holds, "{h} is {n}-ring but not {n}-Jordan");
                }
                for v in [&ring, &jordan] {
                    if let Some(w) = &v.witness {
                        assert!(!v.holds && recheck_witness(&h, n, w), "{h}");
                    }
                }
            }
        }
    }
}

#[test]
fn jordan_maps_are_n_jordan() {
    let z5 = make_zm(5).unwrap();
    let rs = [Arc::new(z5.clone()), Arc::new(product(&z5, &z5).unwrap()), Arc::new(make_zm(7).unwrap())];
    for r in rs {
        for h in enumerate_additive_maps(&r, &r).unwrap() {
            if is_n_jordan(&h, 2).unwrap().holds {
                let rep = predicate_report(&h, &[3, 4, 5, 6], &[]).unwrap();
                assert!((3..=6).all(|n| rep.is_jordan(n) == Some(true)), "{h}");
            }
        }
    }
}

#[test]
fn jordan_maps_on_m2_z2() {
    let m2 = Arc::new(matrix_ring(2, 2).unwrap());
    let t = AdditiveMap::involution(&m2).unwrap();
    let rep = predicate_report(&t, &[2, 3, 4, 5, 6], &[]).unwrap();
    assert!((2..=6).all(|n| rep.is_jordan(n) == Some(true)));

    // a -> tr(a)·E22 is Jordan in characteristic 2 but tr(a³) = tr(a)³ + tr(a)·det(a)
    let mut failing = 0;
    for h in enumerate_additive_maps(&m2, &m2).unwrap() {
        if is_n_jordan(&h, 2).unwrap().holds && !is_n_jordan(&h, 3).unwrap().holds {
            failing += 1;
        }
    }
    assert!(failing > 0);
    let space = MapSpace::new(m2.clone(), m2).unwrap();
    let trace = space.map_at(9);
    assert_eq!(trace.rows(), vec![vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![1, 0, 0, 1]]);
    assert!(is_n_jordan(&trace, 2).unwrap().holds);
    let v = is_n_jordan(&trace, 3).unwrap();
    assert!(!v.holds && recheck_witness(&trace, 3, v.witness.as_ref().unwrap()));
}

#[test]
fn jordan_maps_on_triangular_z2_can_fail_odd_powers() {
    let r = Arc::new(upper_triangular(2, 2).unwrap());
    let h = MapSpace::new(r.clone(), r).unwrap().map_at(21);
    assert!(is_n_jordan(&h, 2).unwrap().holds);
    let three = is_n_jordan(&h, 3).unwrap();
    assert!(!three.holds);
    assert!(recheck_witness(&h, 3, three.witness.as_ref().unwrap()));
    assert!(is_n_jordan(&h, 4).unwrap().holds);
}

#[test]
fn commutative_models_of_the_main_result() {
    let z5 = make_zm(5).unwrap();
    for r in [Arc::new(z5.clone()), Arc::new(product(&z5, &z5).unwrap()), Arc::new(make_zm(7).unwrap())] {
        for h in enumerate_additive_maps(&r, &r).unwrap() {
            for n in [3, 4] {
                if is_n_jordan(&h, n).unwrap().holds {
                    assert!(is_n_ring(&h, n).unwrap().holds, "{h}: {n}-Jordan but not {n}-ring");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn map_index_round_trip(idx in 0u64..65536) {
        let m2 = Arc::new(matrix_ring(2, 2).unwrap());
        let space = MapSpace::new(m2.clone(), m2).unwrap();
        let h = space.map_at(idx);
        prop_assert_eq!(space.index_of(h.matrix()), idx);
    }

    #[test]
    fn maps_are_additive(idx in 0u64..65536, a in 0u64..16, b in 0u64..16) {
        let m2 = Arc::new(matrix_ring(2, 2).unwrap());
        let h: AdditiveMap = MapSpace::new(m2.clone(), m2.clone()).unwrap().map_at(idx);
        let (x, y) = (m2.element_at(a), m2.element_at(b));
        let cod = h.codomain();
        prop_assert_eq!(h.apply(&m2.add(&x, &y)), cod.add(&h.apply(&x), &h.apply(&y)));
    }

    #[test]
    fn ring_multiplication_is_associative(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
        let u = strict_upper(4, 2).unwrap();
        let (x, y, z) = (u.element_at(a), u.element_at(b), u.element_at(c));
        prop_assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
    }
}
