mod common;

use std::collections::BTreeSet;

use njordan::derivation::{
    builtin, consequence_check, generate_instances, replay, verify_certificate, ConsequenceOptions, FieldTag,
    InstanceGuard, BUILTIN_SCRIPTS,
};
use njordan::freealg::{ratio, Mode, Scalar, Variable};
use njordan::identities::HIdentity;
use njordan::models::{make_zm, product, AdditiveMap};
use proptest::prelude::*;

const XYZ: [Variable; 3] = [Variable::X, Variable::Y, Variable::Z];

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::NonCommutative), Just(Mode::Commutative)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chains_stay_homogeneous(n in 2u32..=4, m in mode(), seed in any::<u64>()) {
        for id in common::random_chain(n, m, 8, seed) {
            prop_assert!(id.lhs().terms().all(|(w, _)| w.len() == n as usize));
            prop_assert!(id.rhs().as_poly().terms().all(|(w, _)| w.len() == n as usize));
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chains_are_sound_on_integer_models(seed in any::<u64>()) {
        let z5 = make_zm(5).unwrap();
        let mut maps = common::n_jordan_maps(product(&z5, &z5).unwrap(), z5.clone(), 3);
        maps.extend(common::n_jordan_maps(make_zm(7).unwrap(), make_zm(7).unwrap(), 3));
        for id in common::random_chain(3, Mode::Commutative, 8, seed) {
            for h in &maps {
                prop_assert!(common::holds(&id, h, seed), "{} fails for {}", id, h);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solver_certifies_explicit_combinations(
        m in mode(),
        picks in prop::collection::vec((0usize..13, -3i64..=3, 1i64..=3), 1..5),
    ) {
        let inst = generate_instances(3, m, &XYZ, 1, InstanceGuard::default()).unwrap();
        let terms: Vec<(Scalar, &HIdentity)> =
            picks.iter().map(|&(i, p, q)| (ratio(p, q), &inst[i % inst.len()].identity)).collect();
        let target = HIdentity::combine(&terms).unwrap();
        let r = consequence_check(3, &target, &XYZ, 1, ConsequenceOptions::default()).unwrap();
        let cert = r.certificate().expect("explicit combination lies in the span");
        prop_assert!(verify_certificate(cert, &target));
        for p in [5u64, 7] {
            if let Some(red) = cert.reduce_mod(p) {
                prop_assert!(verify_certificate(&red, &target));
            }
        }
    }
}

#[test]
fn prime_field_solutions_verify() {
    let target = HIdentity::parse("h(x*y*z) = H(x)*H(y)*H(z)", Mode::Commutative).unwrap();
    for p in [5, 7] {
        let opts = ConsequenceOptions { field: FieldTag::Prime(p), ..Default::default() };
        let r = consequence_check(3, &target, &XYZ, 1, opts).unwrap();
        assert!(verify_certificate(r.certificate().unwrap(), &target));
    }
}

#[test]
fn replay_is_deterministic() {
    for name in BUILTIN_SCRIPTS {
        let a = replay(&builtin(name).unwrap()).unwrap().to_json();
        let b = replay(&builtin(name).unwrap()).unwrap().to_json();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn denominator_tracking_is_conservative() {
    let t = replay(&builtin("thm2_2_n3").unwrap()).unwrap();
    let step = t.assertion("(1)").unwrap().step;
    let primes: BTreeSet<u64> = t.steps[step].denominators.iter().copied().collect();
    assert!(primes.contains(&3));
    assert!(t.denominators.iter().all(|p| [2, 3].contains(p)));
}

#[test]
fn trace_carries_symmetrized_commutator_identity() {
    let t = replay(&builtin("thm2_5_step1").unwrap()).unwrap();
    let a = t.assertion("(15)").unwrap();
    let sym = HIdentity::parse("h(y*x*z + y*z*x - x*z*y - z*x*y) = 0", Mode::NonCommutative).unwrap();
    assert_eq!(a.expected, sym.to_string());
    assert!(a.printed.is_some());
}

#[test]
fn instance_evaluations_hold_on_negation() {
    let z5 = std::sync::Arc::new(make_zm(5).unwrap());
    let neg = AdditiveMap::negation(&z5);
    for i in generate_instances(3, Mode::Commutative, &XYZ, 1, InstanceGuard::default()).unwrap() {
        assert!(common::holds(&i.identity, &neg, 0));
    }
}
