use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::ring::{Element, FiniteRing};
use super::ModelError;

/// Largest map space enumerated exhaustively.
pub const EXHAUSTIVE_MAPS: u64 = 10_000_000;

/// An additive map `A → B`, i.e. a `d_B × d_A` matrix over ℤ_m acting on
/// coordinate vectors.
#[derive(Clone)]
pub struct AdditiveMap {
    name: String,
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    // row-major, d_B rows of d_A entries
    matrix: Vec<u32>,
}

impl fmt::Debug for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveMap")
            .field("name", &self.name)
            .field("domain", &self.domain.label())
            .field("codomain", &self.codomain.label())
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl AdditiveMap {
    pub fn new(
        name: impl Into<String>,
        domain: Arc<FiniteRing>,
        codomain: Arc<FiniteRing>,
        matrix: Vec<u32>,
    ) -> Result<Self, ModelError> {
        if domain.modulus() != codomain.modulus() {
            return Err(ModelError::ModulusMismatch(domain.modulus(), codomain.modulus()));
        }
        if matrix.len() != domain.dim() * codomain.dim() {
            return Err(ModelError::Shape(format!(
                "map matrix needs {}x{} entries, got {}",
                codomain.dim(),
                domain.dim(),
                matrix.len()
            )));
        }
        let m = domain.modulus();
        let matrix = matrix.into_iter().map(|c| c % m).collect();
        Ok(AdditiveMap { name: name.into(), domain, codomain, matrix })
    }

    /// `a ↦ k·a` on one ring.
    pub fn scalar(ring: &Arc<FiniteRing>, k: i64) -> Self {
        let d = ring.dim();
        let k = ring.reduce(k);
        let matrix = (0..d * d).map(|i| if i / d == i % d { k } else { 0 }).collect();
        let name = match k {
            0 => "zero".to_string(),
            1 => "identity".to_string(),
            k if k == ring.modulus() - 1 => "negation".to_string(),
            k => format!("scalar {k}"),
        };
        AdditiveMap { name, domain: ring.clone(), codomain: ring.clone(), matrix }
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        Self::scalar(ring, 1)
    }

    pub fn negation(ring: &Arc<FiniteRing>) -> Self {
        Self::scalar(ring, -1)
    }

    pub fn zero(domain: &Arc<FiniteRing>, codomain: &Arc<FiniteRing>) -> Result<Self, ModelError> {
        Self::new("zero", domain.clone(), codomain.clone(), vec![0; domain.dim() * codomain.dim()])
    }

    /// The ring's involution (transpose for matrix rings) as a map.
    pub fn involution(ring: &Arc<FiniteRing>) -> Option<Self> {
        let matrix = ring.involution()?.to_vec();
        let name = if ring.is_commutative() { "involution" } else { "transpose" };
        Some(AdditiveMap { name: name.into(), domain: ring.clone(), codomain: ring.clone(), matrix })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn matrix(&self) -> &[u32] {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.matrix.chunks(self.domain.dim().max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn apply(&self, a: &[u32]) -> Element {
        let m = self.domain.modulus();
        let da = self.domain.dim();
        (0..self.codomain.dim())
            .map(|r| {
                let row = &self.matrix[r * da..(r + 1) * da];
                row.iter().zip(a).fold(0u32, |acc, (x, y)| (acc + x * y) % m)
            })
            .collect()
    }

    /// Codomain index of `h(a)` for every domain index `a`.
    pub(crate) fn image_table(&self) -> Option<Vec<u64>> {
        let n = self.domain.order().filter(|&n| n <= EXHAUSTIVE_MAPS)?;
        Some((0..n).map(|i| self.codomain.index_of(&self.apply(&self.domain.element_at(i)))).collect())
    }
}

impl fmt::Display for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} {:?}", self.name, self.domain.label(), self.codomain.label(), self.rows())
    }
}

impl Serialize for AdditiveMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdditiveMap", 4)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("domain", self.domain.label())?;
        st.serialize_field("codomain", self.codomain.label())?;
        st.serialize_field("matrix", &self.rows())?;
        st.end()
    }
}

/// All additive maps `A → B`, indexed in row-major lexicographic order of
/// their matrices (entry `(0,0)` is the most significant digit).
#[derive(Clone, Debug)]
pub struct MapSpace {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
}

impl MapSpace {
    pub fn new(domain: Arc<FiniteRing>, codomain: Arc<FiniteRing>) -> Result<Self, ModelError> {
        if domain.modulus() != codomain.modulus() {
            return Err(ModelError::ModulusMismatch(domain.modulus(), codomain.modulus()));
        }
        Ok(MapSpace { domain, codomain })
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    fn entries(&self) -> usize {
        self.domain.dim() * self.codomain.dim()
    }

    /// `m^(d_A·d_B)`, if it fits in a `u64`.
    pub fn count(&self) -> Option<u64> {
        (self.domain.modulus() as u64).checked_pow(self.entries() as u32)
    }

    pub fn map_at(&self, mut idx: u64) -> AdditiveMap {
        let m = self.domain.modulus() as u64;
        let mut matrix = vec![0u32; self.entries()];
        for slot in matrix.iter_mut().rev() {
            *slot = (idx % m) as u32;
            idx /= m;
        }
        AdditiveMap {
            name: format!("#{}", self.index_of(&matrix)),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        }
    }

    pub fn index_of(&self, matrix: &[u32]) -> u64 {
        let m = self.domain.modulus() as u64;
        matrix.iter().fold(0u64, |acc, &c| acc * m + c as u64)
    }

    /// Uniform random map from the rng.
    pub fn random(&self, rng: &mut impl Rng) -> AdditiveMap {
        let m = self.domain.modulus();
        let matrix = (0..self.entries()).map(|_| rng.gen_range(0..m)).collect();
        AdditiveMap { name: "sample".into(), domain: self.domain.clone(), codomain: self.codomain.clone(), matrix }
    }

    pub(crate) fn exhaustive_count(&self) -> Result<u64, ModelError> {
        match self.count() {
            Some(n) if n <= EXHAUSTIVE_MAPS => Ok(n),
            other => Err(ModelError::TooLarge {
                what: "additive map space",
                count: other.map_or_else(|| format!("{}^{}", self.domain.modulus(), self.entries()), |n| n.to_string()),
                cap: EXHAUSTIVE_MAPS,
            }),
        }
    }
}

/// Every additive map `A → B` exactly once, in index order.
pub fn enumerate_additive_maps(
    domain: &Arc<FiniteRing>,
    codomain: &Arc<FiniteRing>,
) -> Result<impl Iterator<Item = AdditiveMap>, ModelError> {
    let space = MapSpace::new(domain.clone(), codomain.clone())?;
    let n = space.exhaustive_count()?;
    Ok((0..n).map(move |i| space.map_at(i)))
}

/// `count` uniform draws, reproducible from `seed`.
pub fn sample_additive_maps(
    domain: &Arc<FiniteRing>,
    codomain: &Arc<FiniteRing>,
    count: usize,
    seed: u64,
) -> Result<impl Iterator<Item = AdditiveMap>, ModelError> {
    let space = MapSpace::new(domain.clone(), codomain.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |k| space.random(&mut rng).renamed(format!("sample {k}"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{make_zm, matrix_ring, product, strict_upper};

    #[test]
    fn counts() {
        let z5 = Arc::new(make_zm(5).unwrap());
        let maps: Vec<_> = enumerate_additive_maps(&z5, &z5).unwrap().collect();
        assert_eq!(maps.len(), 5);
        for (k, h) in maps.iter().enumerate() {
            assert_eq!(h.apply(&[1]), vec![k as u32]);
        }
        let p = Arc::new(product(&make_zm(5).unwrap(), &make_zm(5).unwrap()).unwrap());
        assert_eq!(enumerate_additive_maps(&p, &p).unwrap().count(), 625);
        let u = Arc::new(strict_upper(4, 2).unwrap());
        let space = MapSpace::new(u.clone(), u.clone()).unwrap();
        assert_eq!(space.count(), Some(1 << 36));
        assert!(enumerate_additive_maps(&u, &u).is_err());
        assert_eq!(sample_additive_maps(&u, &u, 10, 0).unwrap().count(), 10);
    }

    #[test]
    fn index_is_row_major() {
        let z3 = Arc::new(make_zm(3).unwrap());
        let p = Arc::new(product(&make_zm(3).unwrap(), &make_zm(3).unwrap()).unwrap());
        let space = MapSpace::new(p.clone(), z3).unwrap();
        assert_eq!(space.map_at(1).matrix(), &[0, 1]);
        assert_eq!(space.map_at(3).matrix(), &[1, 0]);
        for i in 0..9 {
            assert_eq!(space.index_of(space.map_at(i).matrix()), i);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let r = Arc::new(matrix_ring(2, 3).unwrap());
        let a: Vec<_> = sample_additive_maps(&r, &r, 5, 7).unwrap().map(|h| h.matrix().to_vec()).collect();
        let b: Vec<_> = sample_additive_maps(&r, &r, 5, 7).unwrap().map(|h| h.matrix().to_vec()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn transpose_swaps_off_diagonal() {
        let r = Arc::new(matrix_ring(2, 2).unwrap());
        let t = AdditiveMap::involution(&r).unwrap();
        assert_eq!(t.apply(&[1, 1, 0, 0]), vec![1, 0, 1, 0]);
        assert_eq!(AdditiveMap::negation(&Arc::new(make_zm(5).unwrap())).apply(&[2]), vec![3]);
    }
}
