use std::collections::BTreeMap;

use serde::Serialize;

use super::maps::AdditiveMap;
use super::ring::{Element, FiniteRing};
use super::ModelError;

/// Largest element or tuple space checked exhaustively.
pub const EXHAUSTIVE_TUPLES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    /// Basis-vector tuples only. Both sides of `h(a₁⋯aₙ) = h(a₁)⋯h(aₙ)`
    /// are additive in each slot, so this decides the property exactly.
    BasisTuples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Element(Element),
    Tuple(Vec<Element>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub mode: CheckMode,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn too_large(what: &'static str, count: Option<u64>) -> ModelError {
    ModelError::TooLarge {
        what,
        count: count.map_or_else(|| "overflow".into(), |n| n.to_string()),
        cap: EXHAUSTIVE_TUPLES,
    }
}

fn naive_pow(ring: &FiniteRing, a: &[u32], n: u32) -> Element {
    let mut acc = a.to_vec();
    for _ in 1..n {
        acc = ring.mul(&acc, a);
    }
    acc
}

fn naive_product(ring: &FiniteRing, factors: &[Element]) -> Element {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = ring.mul(&acc, f);
    }
    acc
}

/// `h(aⁿ) = h(a)ⁿ` for every `a ∈ A`. The witness is the first failing
/// element in index order.
pub fn is_n_jordan(h: &AdditiveMap, n: u32) -> Result<Verdict, ModelError> {
    assert!(n >= 1);
    let (a, b) = (h.domain(), h.codomain());
    let count = a.order().filter(|&c| c <= EXHAUSTIVE_TUPLES).ok_or_else(|| too_large("ring order", a.order()))?;
    let image = h.image_table().expect("order below cap");
    let fails = |i: u64| image[a.pow_idx(i, n) as usize] != b.pow_idx(image[i as usize], n);
    let witness = (0..count).find(|&i| fails(i)).map(|i| Witness::Element(a.element_at(i)));
    Ok(Verdict { holds: witness.is_none(), mode: CheckMode::Exhaustive, checked: count, witness })
}

/// `h(a₁⋯aₙ) = h(a₁)⋯h(aₙ)`, exhaustive when `|A|ⁿ ≤ 10⁷`, otherwise over
/// basis tuples.
pub fn is_n_ring(h: &AdditiveMap, n: u32) -> Result<Verdict, ModelError> {
    let exhaustive = h.domain().order().and_then(|c| c.checked_pow(n)).is_some_and(|c| c <= EXHAUSTIVE_TUPLES);
    is_n_ring_with(h, n, if exhaustive { CheckMode::Exhaustive } else { CheckMode::BasisTuples })
}

pub fn is_n_ring_with(h: &AdditiveMap, n: u32, mode: CheckMode) -> Result<Verdict, ModelError> {
    assert!(n >= 1);
    match mode {
        CheckMode::Exhaustive => ring_exhaustive(h, n),
        CheckMode::BasisTuples => ring_basis(h, n),
    }
}

fn ring_exhaustive(h: &AdditiveMap, n: u32) -> Result<Verdict, ModelError> {
    let (a, b) = (h.domain(), h.codomain());
    let size = a.order().filter(|&c| c <= EXHAUSTIVE_TUPLES).ok_or_else(|| too_large("ring order", a.order()))?;
    let count = size
        .checked_pow(n)
        .filter(|&c| c <= EXHAUSTIVE_TUPLES)
        .ok_or_else(|| too_large("tuple space", size.checked_pow(n)))?;
    let image = h.image_table().expect("order below cap");
    // depth-first over tuples in lexicographic order, carrying prefix
    // products on both sides
    let mut tuple = Vec::with_capacity(n as usize);
    let mut stack: Vec<(u64, u64)> = Vec::with_capacity(n as usize);
    let mut next = vec![0u64; n as usize];
    let mut depth = 0usize;
    loop {
        if next[depth] == size {
            if depth == 0 {
                break;
            }
            next[depth] = 0;
            depth -= 1;
            tuple.pop();
            stack.pop();
            continue;
        }
        let x = next[depth];
        next[depth] += 1;
        let (pa, pb) = match stack.last() {
            None => (x, image[x as usize]),
            Some(&(pa, pb)) => (a.mul_idx(pa, x), b.mul_idx(pb, image[x as usize])),
        };
        if depth + 1 == n as usize {
            if image[pa as usize] != pb {
                tuple.push(x);
                let witness = Witness::Tuple(tuple.iter().map(|&i| a.element_at(i)).collect());
                return Ok(Verdict {
                    holds: false,
                    mode: CheckMode::Exhaustive,
                    checked: count,
                    witness: Some(witness),
                });
            }
        } else {
            tuple.push(x);
            stack.push((pa, pb));
            depth += 1;
        }
    }
    Ok(Verdict { holds: true, mode: CheckMode::Exhaustive, checked: count, witness: None })
}

fn ring_basis(h: &AdditiveMap, n: u32) -> Result<Verdict, ModelError> {
    let (a, b) = (h.domain(), h.codomain());
    let d = a.dim() as u64;
    let count = d
        .checked_pow(n)
        .filter(|&c| c <= EXHAUSTIVE_TUPLES)
        .ok_or_else(|| too_large("basis tuple space", d.checked_pow(n)))?;
    let images: Vec<Element> = (0..a.dim()).map(|i| h.apply(&a.basis(i))).collect();
    for t in 0..count {
        let mut idx = Vec::with_capacity(n as usize);
        let mut rest = t;
        for _ in 0..n {
            idx.push((rest % d) as usize);
            rest /= d;
        }
        idx.reverse();
        let mut pa = a.basis(idx[0]);
        let mut pb = images[idx[0]].clone();
        for &i in &idx[1..] {
            pa = a.mul(&pa, &a.basis(i));
            pb = b.mul(&pb, &images[i]);
        }
        if h.apply(&pa) != pb {
            let witness = Witness::Tuple(idx.iter().map(|&i| a.basis(i)).collect());
            return Ok(Verdict { holds: false, mode: CheckMode::BasisTuples, checked: count, witness: Some(witness) });
        }
    }
    Ok(Verdict { holds: true, mode: CheckMode::BasisTuples, checked: count, witness: None })
}

/// Re-evaluates a failure witness with plain structure-constant products.
/// Returns true when the witness really is a failure of the `n`-Jordan
/// (element) or `n`-ring (tuple) property.
pub fn recheck_witness(h: &AdditiveMap, n: u32, witness: &Witness) -> bool {
    let (a, b) = (h.domain(), h.codomain());
    match witness {
        Witness::Element(x) => h.apply(&naive_pow(a, x, n)) != naive_pow(b, &h.apply(x), n),
        Witness::Tuple(xs) => {
            let images: Vec<Element> = xs.iter().map(|x| h.apply(x)).collect();
            xs.len() == n as usize && h.apply(&naive_product(a, xs)) != naive_product(b, &images)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateReport {
    pub map: AdditiveMap,
    /// `n ↦ n-Jordan verdict`; the `n = 2` entry is the Jordan property.
    pub jordan: BTreeMap<u32, Verdict>,
    pub ring: BTreeMap<u32, Verdict>,
}

impl PredicateReport {
    pub fn is_jordan(&self, n: u32) -> Option<bool> {
        self.jordan.get(&n).map(|v| v.holds)
    }

    pub fn is_ring(&self, n: u32) -> Option<bool> {
        self.ring.get(&n).map(|v| v.holds)
    }
}

/// Runs the requested checks and re-verifies every witness.
pub fn predicate_report(h: &AdditiveMap, jordan_ns: &[u32], ring_ns: &[u32]) -> Result<PredicateReport, ModelError> {
    let mut jordan = BTreeMap::new();
    for &n in jordan_ns {
        jordan.insert(n, is_n_jordan(h, n)?);
    }
    let mut ring = BTreeMap::new();
    for &n in ring_ns {
        ring.insert(n, is_n_ring(h, n)?);
    }
    for (n, v) in jordan.iter().chain(&ring) {
        if let Some(w) = &v.witness {
            assert!(recheck_witness(h, *n, w), "witness for {} failed to recheck", h.name());
        }
    }
    Ok(PredicateReport { map: h.clone(), jordan, ring })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::models::{make_zm, matrix_ring, strict_upper};

    #[test]
    fn negation_on_z5() {
        let z5 = Arc::new(make_zm(5).unwrap());
        let neg = AdditiveMap::negation(&z5);
        assert!(is_n_jordan(&neg, 3).unwrap().holds);
        let v2 = is_n_jordan(&neg, 2).unwrap();
        assert!(!v2.holds);
        assert_eq!(v2.witness, Some(Witness::Element(vec![1])));
        assert!(!is_n_jordan(&neg, 4).unwrap().holds);
    }

    #[test]
    fn transpose_is_jordan_not_ring() {
        let r = Arc::new(matrix_ring(2, 2).unwrap());
        let t = AdditiveMap::involution(&r).unwrap();
        assert!(is_n_jordan(&t, 2).unwrap().holds);
        let v = is_n_ring(&t, 2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.checked, 256);
        let w = v.witness.unwrap();
        assert!(recheck_witness(&t, 2, &w));
        let Witness::Tuple(pair) = w else { panic!() };
        assert_ne!(r.mul(&pair[0], &pair[1]), r.mul(&pair[1], &pair[0]));
    }

    #[test]
    fn both_modes_agree() {
        let r = Arc::new(matrix_ring(2, 2).unwrap());
        for h in crate::models::sample_additive_maps(&r, &r, 20, 3).unwrap() {
            for n in 2..=3 {
                let e = is_n_ring_with(&h, n, CheckMode::Exhaustive).unwrap();
                let b = is_n_ring_with(&h, n, CheckMode::BasisTuples).unwrap();
                assert_eq!(e.holds, b.holds);
            }
        }
        let t = AdditiveMap::involution(&r).unwrap();
        assert!(!is_n_ring_with(&t, 2, CheckMode::BasisTuples).unwrap().holds);
    }

    #[test]
    fn strict_upper_identity_is_four_jordan() {
        let u = Arc::new(strict_upper(4, 2).unwrap());
        let id = AdditiveMap::identity(&u);
        assert!(is_n_jordan(&id, 4).unwrap().holds);
        assert!(is_n_ring(&id, 3).unwrap().holds);
    }

    #[test]
    fn report_rechecks_witnesses() {
        let z5 = Arc::new(make_zm(5).unwrap());
        let rep = predicate_report(&AdditiveMap::scalar(&z5, 2), &[2, 3], &[2]).unwrap();
        assert_eq!(rep.is_jordan(2), Some(false));
        assert_eq!(rep.is_ring(2), Some(false));
    }
}
