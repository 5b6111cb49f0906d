use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::maps::{enumerate_additive_maps, AdditiveMap};
use super::nilpotency::{nilpotency_index, nonzero_product_witness, ProductWitness};
use super::predicates::{is_n_jordan, is_n_ring, Verdict};
use super::ring::FiniteRing;
use super::{function_ring, make_zm, product, strict_upper, ModelError};

const SURROGATE: &str = "finite surrogate: real scalars replaced by Z_m";

#[derive(Clone, Debug, Serialize)]
pub struct NegationExample {
    pub ring: String,
    pub note: &'static str,
    pub map: AdditiveMap,
    pub jordan: BTreeMap<u32, Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentExample {
    pub ring: String,
    pub note: &'static str,
    pub dim: usize,
    pub elements: u64,
    pub unital: bool,
    pub nilpotency_index: Option<usize>,
    pub triple_product: Option<ProductWitness>,
    pub four_fold_product: Option<ProductWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionRingExample {
    pub ring: String,
    pub note: &'static str,
    pub dim: usize,
    pub nilpotency_index: Option<usize>,
    /// Every product of four basis vectors vanishes (hence every 4-fold
    /// product does).
    pub all_four_fold_products_zero: bool,
    pub basis_tuples_checked: u64,
    /// `a⁴ = 0` for every element, checked one element at a time.
    pub all_fourth_powers_zero: bool,
    pub elements_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativeJordanExample {
    pub ring: String,
    pub maps: u64,
    pub jordan_maps: u64,
    pub jordan_maps_that_are_ring: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExamplesReport {
    pub negation: NegationExample,
    pub nilpotent_algebra: NilpotentExample,
    pub function_ring: FunctionRingExample,
    pub commutative_jordan: Vec<CommutativeJordanExample>,
}

fn four_fold_products_zero(ring: &FiniteRing) -> (bool, u64) {
    let d = ring.dim();
    let mut checked = 0;
    for i in 0..d {
        for j in 0..d {
            let ij = ring.mul(&ring.basis(i), &ring.basis(j));
            for k in 0..d {
                let ijk = ring.mul(&ij, &ring.basis(k));
                for l in 0..d {
                    checked += 1;
                    if !ring.is_zero(&ring.mul(&ijk, &ring.basis(l))) {
                        return (false, checked);
                    }
                }
            }
        }
    }
    (true, checked)
}

fn commutative_jordan(ring: FiniteRing) -> Result<CommutativeJordanExample, ModelError> {
    let ring = Arc::new(ring);
    let (mut maps, mut jordan, mut both) = (0, 0, 0);
    for h in enumerate_additive_maps(&ring, &ring)? {
        maps += 1;
        if is_n_jordan(&h, 2)?.holds {
            jordan += 1;
            if is_n_ring(&h, 2)?.holds {
                both += 1;
            }
        }
    }
    Ok(CommutativeJordanExample {
        ring: ring.label().to_string(),
        maps,
        jordan_maps: jordan,
        jordan_maps_that_are_ring: both,
    })
}

/// Reproduces the introductory examples on finite surrogates: negation on
/// ℤ₅, the strictly upper triangular 4×4 algebra over ℤ₂, functions from
/// three points into it, and Jordan maps on small commutative rings.
pub fn paper_examples() -> Result<ExamplesReport, ModelError> {
    let z5 = Arc::new(make_zm(5)?);
    let neg = AdditiveMap::negation(&z5);
    let mut jordan = BTreeMap::new();
    for n in [2, 3, 4] {
        jordan.insert(n, is_n_jordan(&neg, n)?);
    }
    let negation = NegationExample {
        ring: z5.label().to_string(),
        note: "negation on Z5 as a surrogate for -h with h a Jordan homomorphism",
        map: neg,
        jordan,
    };

    let a = strict_upper(4, 2)?;
    let index = nilpotency_index(&a);
    let nilpotent_algebra = NilpotentExample {
        ring: a.label().to_string(),
        note: SURROGATE,
        dim: a.dim(),
        elements: a.order().unwrap_or(u64::MAX),
        unital: a.is_unital(),
        nilpotency_index: index,
        triple_product: nonzero_product_witness(&a, 3),
        four_fold_product: nonzero_product_witness(&a, 4),
    };

    let f = function_ring(&a, 3)?;
    let (four_zero, tuples) = four_fold_products_zero(&f);
    let elements = f.order().unwrap_or(u64::MAX);
    let powers_zero = f.elements().all(|x| f.is_zero(&f.pow(&x, 4)));
    let function_ring = FunctionRingExample {
        ring: f.label().to_string(),
        note: SURROGATE,
        dim: f.dim(),
        nilpotency_index: nilpotency_index(&f),
        all_four_fold_products_zero: four_zero,
        basis_tuples_checked: tuples,
        all_fourth_powers_zero: powers_zero,
        elements_checked: elements,
    };

    let commutative = vec![commutative_jordan(make_zm(5)?)?, commutative_jordan(product(&make_zm(5)?, &make_zm(5)?)?)?];

    Ok(ExamplesReport { negation, nilpotent_algebra, function_ring, commutative_jordan: commutative })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_contents() {
        let r = paper_examples().unwrap();
        let j = &r.negation.jordan;
        assert!(!j[&2].holds && j[&3].holds && !j[&4].holds);
        assert_eq!(r.nilpotent_algebra.nilpotency_index, Some(4));
        assert_eq!(r.nilpotent_algebra.triple_product.as_ref().unwrap().product, "E14");
        assert!(r.nilpotent_algebra.four_fold_product.is_none());
        assert!(r.function_ring.all_four_fold_products_zero);
        assert!(r.function_ring.all_fourth_powers_zero);
        assert_eq!(r.function_ring.dim, 18);
        for c in &r.commutative_jordan {
            assert_eq!(c.jordan_maps, c.jordan_maps_that_are_ring);
        }
    }
}
