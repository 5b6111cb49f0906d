#![allow(dead_code)]

use std::sync::Arc;

use njordan::freealg::{ratio, LinearForm, Mode, Scalar, Substitution, Variable};
use njordan::identities::{evaluate, evaluate_sampled, HIdentity};
use njordan::models::{
    make_zm, matrix_ring, search, upper_triangular, AdditiveMap, FiniteRing, Predicate, SearchOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ASSIGNMENT_CAP: u64 = 100_000;
/// Assignments drawn when the exhaustive count exceeds the cap.
pub const OVER_CAP_SAMPLES: u64 = 2_000;

const SCALARS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (1, 3), (-3, 2)];

fn random_form(rng: &mut ChaCha8Rng) -> LinearForm {
    let vars = [Variable::X, Variable::Y, Variable::Z];
    loop {
        let pairs: Vec<(Variable, i64)> = vars.iter().map(|&v| (v, rng.gen_range(-2..=2))).collect();
        if pairs.iter().any(|&(_, c)| c != 0) {
            return LinearForm::from_pairs(pairs);
        }
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let (p, q) = *SCALARS.choose(rng).unwrap();
    ratio(p, q)
}

/// A random chain of at most `max_steps` substitute / combine steps
/// starting from `seed(n)`; returns every identity produced.
pub fn random_chain(n: u32, mode: Mode, max_steps: usize, seed: u64) -> Vec<HIdentity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = vec![HIdentity::seed(n, mode).unwrap()];
    let steps = rng.gen_range(1..=max_steps);
    for _ in 0..steps {
        let next = if rng.gen_bool(0.5) || pool.len() == 1 {
            let from = pool.choose(&mut rng).unwrap();
            let mut s = Substitution::identity();
            for v in from.variables() {
                s.insert(v, random_form(&mut rng));
            }
            from.substitute(&s)
        } else {
            let a = pool.choose(&mut rng).unwrap();
            let b = pool.choose(&mut rng).unwrap();
            HIdentity::combine(&[(random_scalar(&mut rng), a), (random_scalar(&mut rng), b)]).unwrap()
        };
        pool.push(next);
    }
    pool
}

/// Exhaustive when the assignment count is within the cap, otherwise a
/// seeded sample.
pub fn holds(id: &HIdentity, h: &AdditiveMap, seed: u64) -> bool {
    let vars = id.variables().len() as u32;
    let count = (h.domain().order().unwrap_or(u64::MAX) as f64).powi(vars as i32);
    let eval = if count <= ASSIGNMENT_CAP as f64 {
        evaluate(id, h, ASSIGNMENT_CAP).unwrap()
    } else {
        evaluate_sampled(id, h, OVER_CAP_SAMPLES, seed).unwrap()
    };
    eval.holds
}

pub fn n_jordan_maps(domain: FiniteRing, codomain: FiniteRing, n: u32) -> Vec<AdditiveMap> {
    let (d, c) = (Arc::new(domain), Arc::new(codomain));
    search(&d, &c, n, &Predicate::NJordan, usize::MAX, SearchOptions::default()).unwrap()
}

/// 3-Jordan maps with noncommutative domain and commutative codomain:
/// M₂(ℤ₅) → ℤ₅ (only the zero map), T₂(ℤ₅) → ℤ₅ (the diagonal
/// projections up to sign) and ℤ₇ → ℤ₇.
pub fn three_jordan_surrogates() -> Vec<AdditiveMap> {
    let mut out = n_jordan_maps(matrix_ring(2, 5).unwrap(), make_zm(5).unwrap(), 3);
    out.extend(n_jordan_maps(upper_triangular(2, 5).unwrap(), make_zm(5).unwrap(), 3));
    out.extend(n_jordan_maps(make_zm(7).unwrap(), make_zm(7).unwrap(), 3));
    out
}
