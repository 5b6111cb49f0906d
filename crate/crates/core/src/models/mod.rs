//! Finite rings with additive group `(ℤ_m)^d`, additive maps between them
//! and exhaustive or sampled checks of the n-Jordan and n-ring properties.

mod constructors;
mod maps;
mod nilpotency;
mod predicates;
mod reproductions;
mod ring;
mod search;

pub use constructors::{function_ring, make_zm, matrix_ring, product, strict_upper, upper_triangular, Guard, RingSpec};
pub use maps::{enumerate_additive_maps, sample_additive_maps, AdditiveMap, MapSpace, EXHAUSTIVE_MAPS};
pub use nilpotency::{nilpotency_index, nonzero_product_witness, ProductWitness};
pub use predicates::{
    is_n_jordan, is_n_ring, is_n_ring_with, predicate_report, recheck_witness, CheckMode, PredicateReport, Verdict,
    Witness, EXHAUSTIVE_TUPLES,
};
pub use reproductions::{paper_examples, ExamplesReport};
pub use ring::{Element, FiniteRing};
pub use search::{search, MapTest, Predicate, SearchOptions};

pub(crate) use ring::inv_mod;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("guard: {0}")]
    Guard(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("{ring} is not associative on basis triple {triple:?}")]
    NotAssociative { ring: String, triple: (usize, usize, usize) },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("bad ring spec `{0}`")]
    BadSpec(String),
    #[error("{what}: {count} exceeds the cap {cap}")]
    TooLarge { what: &'static str, count: String, cap: u64 },
}

pub(crate) fn is_prime_u64(p: u64) -> bool {
    u32::try_from(p).is_ok_and(ring::is_prime)
}
