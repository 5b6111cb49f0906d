use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::HIdentity;
use crate::freealg::{Scalar, Variable};
use crate::models::{inv_mod, AdditiveMap, Element, FiniteRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("codomain {0} is not commutative")]
    NonCommutativeCodomain(String),
    #[error("prime {prime} is not invertible in {ring}")]
    DenominatorNotInvertible { prime: u64, ring: String },
    #[error("{space} assignments exceed the cap {cap}")]
    CapExceeded { space: String, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub holds: bool,
    pub exhaustive: bool,
    pub assignments: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, Element>>,
}

struct Compiled {
    vars: Vec<Variable>,
    // (positions into vars, coefficient mod m)
    lhs: Vec<(Vec<usize>, u32)>,
    rhs: Vec<(Vec<usize>, u32)>,
}

fn reduce_scalar(c: &Scalar, m: u32, ring: &str) -> Result<u32, EvalError> {
    let mm = BigInt::from(m);
    let residue = |n: &BigInt| ((n % &mm + &mm) % &mm).to_u32().expect("below modulus");
    let den = residue(c.denom());
    let inv = inv_mod(den, m)
        .ok_or_else(|| EvalError::DenominatorNotInvertible { prime: m as u64, ring: ring.to_string() })?;
    Ok((residue(c.numer()) as u64 * inv as u64 % m as u64) as u32)
}

fn compile(id: &HIdentity, h: &AdditiveMap) -> Result<Compiled, EvalError> {
    let b = h.codomain();
    if !b.is_commutative() {
        return Err(EvalError::NonCommutativeCodomain(b.label().to_string()));
    }
    let m = b.modulus();
    if let Some(&p) = id.denominators().iter().find(|&&p| p % m as u64 == 0) {
        return Err(EvalError::DenominatorNotInvertible { prime: p, ring: b.label().to_string() });
    }
    let vars: Vec<Variable> = id.variables().into_iter().collect();
    let pos = |v: &Variable| vars.binary_search(v).expect("collected above");
    let side = |terms: Vec<(Vec<usize>, &Scalar)>| -> Result<Vec<(Vec<usize>, u32)>, EvalError> {
        terms
            .into_iter()
            .map(|(w, c)| Ok((w, reduce_scalar(c, m, b.label())?)))
            .filter(|r| !matches!(r, Ok((_, 0))))
            .collect()
    };
    let lhs = side(id.lhs().terms().map(|(w, c)| (w.letters().iter().map(pos).collect(), c)).collect())?;
    let rhs = side(id.rhs().as_poly().terms().map(|(w, c)| (w.letters().iter().map(pos).collect(), c)).collect())?;
    Ok(Compiled { vars, lhs, rhs })
}

fn product(ring: &FiniteRing, word: &[usize], values: &[Element]) -> Element {
    let mut acc = values[word[0]].clone();
    for &i in &word[1..] {
        acc = ring.mul(&acc, &values[i]);
    }
    acc
}

/// Whether `h(lhs) = rhs(h(x), …)` at one assignment of domain elements.
fn holds_at(c: &Compiled, h: &AdditiveMap, values: &[Element]) -> bool {
    let (a, b) = (h.domain(), h.codomain());
    let images: Vec<Element> = values.iter().map(|v| h.apply(v)).collect();
    let mut left = b.zero();
    for (w, k) in &c.lhs {
        let v = if w.is_empty() { a.unit().cloned().unwrap_or_else(|| a.zero()) } else { product(a, w, values) };
        left = b.add(&left, &b.scale(*k, &h.apply(&v)));
    }
    let mut right = b.zero();
    for (w, k) in &c.rhs {
        let v = if w.is_empty() { b.unit().cloned().unwrap_or_else(|| b.zero()) } else { product(b, w, &images) };
        right = b.add(&right, &b.scale(*k, &v));
    }
    left == right
}

fn named(c: &Compiled, values: &[Element]) -> BTreeMap<String, Element> {
    c.vars.iter().zip(values).map(|(v, x)| (v.name(), x.clone())).collect()
}

/// Checks the identity at every assignment of elements of the domain to its
/// variables. The codomain must be commutative and every tracked prime
/// invertible in it; at most `cap` assignments are tried.
pub fn evaluate(id: &HIdentity, h: &AdditiveMap, cap: u64) -> Result<Evaluation, EvalError> {
    let c = compile(id, h)?;
    let a = h.domain();
    let space = a.order().and_then(|n| n.checked_pow(c.vars.len() as u32)).filter(|&s| s <= cap);
    let Some(space) = space else {
        return Err(EvalError::CapExceeded {
            space: format!("{}^{}", a.order().map_or("?".into(), |n| n.to_string()), c.vars.len()),
            cap,
        });
    };
    let order = a.order().expect("checked");
    for idx in 0..space {
        let mut rest = idx;
        let mut values = vec![Element::new(); c.vars.len()];
        for slot in values.iter_mut().rev() {
            *slot = a.element_at(rest % order);
            rest /= order;
        }
        if !holds_at(&c, h, &values) {
            return Ok(Evaluation {
                holds: false,
                exhaustive: true,
                assignments: idx + 1,
                counterexample: Some(named(&c, &values)),
            });
        }
    }
    Ok(Evaluation { holds: true, exhaustive: true, assignments: space, counterexample: None })
}

/// Like [`evaluate`] but at `samples` uniformly random assignments drawn
/// from `seed`.
pub fn evaluate_sampled(id: &HIdentity, h: &AdditiveMap, samples: u64, seed: u64) -> Result<Evaluation, EvalError> {
    let c = compile(id, h)?;
    let a = h.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = a.modulus();
    for k in 0..samples {
        let values: Vec<Element> =
            (0..c.vars.len()).map(|_| (0..a.dim()).map(|_| rng.gen_range(0..m)).collect()).collect();
        if !holds_at(&c, h, &values) {
            return Ok(Evaluation {
                holds: false,
                exhaustive: false,
                assignments: k + 1,
                counterexample: Some(named(&c, &values)),
            });
        }
    }
    Ok(Evaluation { holds: true, exhaustive: false, assignments: samples, counterexample: None })
}
