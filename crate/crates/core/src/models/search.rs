use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::maps::{AdditiveMap, MapSpace};
use super::predicates::{is_n_jordan, is_n_ring};
use super::ring::FiniteRing;
use super::ModelError;

pub type MapTest = Arc<dyn Fn(&AdditiveMap) -> Result<bool, ModelError> + Send + Sync>;

/// What a search looks for, relative to the exponent `n` passed to
/// [`search`].
#[derive(Clone)]
pub enum Predicate {
    /// `n`-Jordan but not `n`-ring.
    JordanNotRing,
    /// `n`-Jordan but not Jordan (2-Jordan).
    NJordanNotJordan,
    /// `n`-Jordan only.
    NJordan,
    Custom(MapTest),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::JordanNotRing => f.write_str("JordanNotRing"),
            Predicate::NJordanNotJordan => f.write_str("NJordanNotJordan"),
            Predicate::NJordan => f.write_str("NJordan"),
            Predicate::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl Predicate {
    pub fn custom(f: impl Fn(&AdditiveMap) -> Result<bool, ModelError> + Send + Sync + 'static) -> Self {
        Predicate::Custom(Arc::new(f))
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "jordan_not_ring" => Some(Predicate::JordanNotRing),
            "njordan_not_jordan" => Some(Predicate::NJordanNotJordan),
            "njordan" => Some(Predicate::NJordan),
            _ => None,
        }
    }

    pub fn matches(&self, h: &AdditiveMap, n: u32) -> Result<bool, ModelError> {
        match self {
            Predicate::JordanNotRing => Ok(is_n_jordan(h, n)?.holds && !is_n_ring(h, n)?.holds),
            Predicate::NJordanNotJordan => Ok(is_n_jordan(h, n)?.holds && !is_n_jordan(h, 2)?.holds),
            Predicate::NJordan => Ok(is_n_jordan(h, n)?.holds),
            Predicate::Custom(f) => f(h),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub threads: usize,
    /// Draw this many random maps from the seed instead of enumerating.
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1, samples: None, seed: 0 }
    }
}

const CHUNK: u64 = 256;

/// The first `limit` maps `A → B` satisfying `predicate`, in enumeration
/// order (or draw order when sampling). The result does not depend on the
/// thread count.
pub fn search(
    domain: &Arc<FiniteRing>,
    codomain: &Arc<FiniteRing>,
    n: u32,
    predicate: &Predicate,
    limit: usize,
    opts: SearchOptions,
) -> Result<Vec<AdditiveMap>, ModelError> {
    let space = MapSpace::new(domain.clone(), codomain.clone())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| ModelError::Guard(format!("thread pool: {e}")))?;
    let mut found = Vec::new();
    if limit == 0 {
        return Ok(found);
    }
    match opts.samples {
        None => {
            let total = space.exhaustive_count()?;
            let batch = CHUNK * opts.threads.max(1) as u64;
            let mut start = 0;
            while start < total && found.len() < limit {
                let end = (start + batch).min(total);
                let chunks: Vec<(u64, u64)> =
                    (start..end).step_by(CHUNK as usize).map(|s| (s, (s + CHUNK).min(end))).collect();
                let hits: Vec<Vec<AdditiveMap>> = pool.install(|| {
                    chunks
                        .par_iter()
                        .map(|&(s, e)| {
                            let mut out = Vec::new();
                            for i in s..e {
                                let h = space.map_at(i);
                                if predicate.matches(&h, n)? {
                                    out.push(h);
                                }
                            }
                            Ok(out)
                        })
                        .collect::<Result<_, ModelError>>()
                })?;
                found.extend(hits.into_iter().flatten());
                start = end;
            }
        }
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let draws: Vec<AdditiveMap> =
                (0..count).map(|k| space.random(&mut rng).renamed(format!("sample {k}"))).collect();
            let flags: Vec<bool> =
                pool.install(|| draws.par_iter().map(|h| predicate.matches(h, n)).collect::<Result<_, ModelError>>())?;
            found.extend(draws.into_iter().zip(flags).filter(|(_, f)| *f).map(|(h, _)| h));
        }
    }
    found.truncate(limit);
    Ok(found)
}
