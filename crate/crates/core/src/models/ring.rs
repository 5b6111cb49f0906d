use std::fmt;
use std::sync::OnceLock;

use super::ModelError;

/// Coordinate vector of a ring element over the basis `e₀..e_{d-1}`.
pub type Element = Vec<u32>;

/// Rings whose element count is at most this get a full multiplication
/// table indexed by element.
const TABLE_LIMIT: u64 = 1024;

/// A finite ring with additive group `(ℤ_m)^d`, given by structure
/// constants `eᵢ·eⱼ = Σₖ c[i][j][k]·eₖ`. `m` is always prime.
#[derive(Clone)]
pub struct FiniteRing {
    label: String,
    modulus: u32,
    dim: usize,
    // sparse structure constants, indexed i*dim + j
    products: Vec<Vec<(usize, u32)>>,
    commutative: bool,
    unit: Option<Element>,
    involution: Option<Vec<u32>>,
    names: Vec<String>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("modulus", &self.modulus)
            .field("dim", &self.dim)
            .finish()
    }
}

pub(crate) fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

pub(crate) fn inv_mod(a: u32, m: u32) -> Option<u32> {
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i64) as u32)
}

impl FiniteRing {
    /// Builds a ring from dense structure constants `table[i*d + j] = eᵢ·eⱼ`
    /// and checks associativity on every basis triple.
    pub fn new(
        label: impl Into<String>,
        modulus: u32,
        dim: usize,
        table: Vec<Element>,
        unit: Option<Element>,
    ) -> Result<Self, ModelError> {
        let label = label.into();
        if !is_prime(modulus) {
            return Err(ModelError::Guard(format!("modulus {modulus} is not prime")));
        }
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(ModelError::Shape(format!("structure constants for {label}")));
        }
        let products = table
            .iter()
            .map(|v| {
                v.iter().enumerate().filter_map(|(k, &c)| (c % modulus != 0).then_some((k, c % modulus))).collect()
            })
            .collect();
        let commutative = (0..dim).all(|i| (0..dim).all(|j| table[i * dim + j] == table[j * dim + i]));
        let ring = FiniteRing {
            label,
            modulus,
            dim,
            products,
            commutative,
            unit: None,
            involution: None,
            names: (0..dim).map(|i| format!("e{i}")).collect(),
            table: OnceLock::new(),
        };
        for i in 0..dim {
            for j in 0..dim {
                let eij = ring.mul(&ring.basis(i), &ring.basis(j));
                for k in 0..dim {
                    let left = ring.mul(&eij, &ring.basis(k));
                    let right = ring.mul(&ring.basis(i), &ring.mul(&ring.basis(j), &ring.basis(k)));
                    if left != right {
                        return Err(ModelError::NotAssociative { ring: ring.label.clone(), triple: (i, j, k) });
                    }
                }
            }
        }
        let mut ring = ring;
        if let Some(u) = unit {
            let u: Element = u.into_iter().map(|c| c % modulus).collect();
            let ok = u.len() == dim
                && (0..dim).all(|i| {
                    let e = ring.basis(i);
                    ring.mul(&u, &e) == e && ring.mul(&e, &u) == e
                });
            if !ok {
                return Err(ModelError::Shape(format!("claimed unit of {} is not a unit", ring.label)));
            }
            ring.unit = Some(u);
        }
        Ok(ring)
    }

    /// Attaches an involution given as a `d×d` row-major matrix over ℤ_m.
    pub fn with_involution(mut self, matrix: Vec<u32>) -> Result<Self, ModelError> {
        if matrix.len() != self.dim * self.dim {
            return Err(ModelError::Shape(format!("involution of {}", self.label)));
        }
        self.involution = Some(matrix);
        Ok(self)
    }

    pub(crate) fn relabeled(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.dim);
        self.names = names;
        self
    }

    /// Display name of basis vector `i` (`E12` for matrix units).
    pub fn basis_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn involution(&self) -> Option<&[u32]> {
        self.involution.as_deref()
    }

    /// Number of elements, `m^d`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.modulus as u64).checked_pow(self.dim as u32)
    }

    /// Whether multiplication by the integer `p` is a bijection of the
    /// additive group.
    pub fn scalar_invertible(&self, p: u64) -> bool {
        !p.is_multiple_of(self.modulus as u64)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim]
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Element {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    pub fn add_assign(&self, acc: &mut [u32], b: &[u32]) {
        for (x, y) in acc.iter_mut().zip(b) {
            *x = (*x + y) % self.modulus;
        }
    }

    pub fn neg(&self, a: &[u32]) -> Element {
        a.iter().map(|&x| (self.modulus - x) % self.modulus).collect()
    }

    pub fn scale(&self, k: u32, a: &[u32]) -> Element {
        let k = k % self.modulus;
        a.iter().map(|&x| (x * k) % self.modulus).collect()
    }

    /// Product via structure constants.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Element {
        let m = self.modulus;
        let d = self.dim;
        let mut out = vec![0u32; d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let ab = ai * bj % m;
                for &(k, c) in &self.products[i * d + j] {
                    out[k] = (out[k] + ab * c) % m;
                }
            }
        }
        out
    }

    /// `aⁿ` for `n ≥ 1`.
    pub fn pow(&self, a: &[u32], n: u32) -> Element {
        assert!(n >= 1, "pow needs n >= 1");
        let mut acc = a.to_vec();
        for _ in 1..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `eᵢ·eⱼ` as stored.
    pub fn structure_constant(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for &(k, c) in &self.products[i * self.dim + j] {
            out[k] = c;
        }
        out
    }

    /// Big-endian base-`m` index of an element.
    pub fn index_of(&self, a: &[u32]) -> u64 {
        a.iter().fold(0u64, |acc, &c| acc * self.modulus as u64 + c as u64)
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        let m = self.modulus as u64;
        let mut out = vec![0u32; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = (idx % m) as u32;
            idx /= m;
        }
        out
    }

    /// All elements in index order. Callers check [`Self::order`] first.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.order().expect("ring too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order().filter(|&n| n <= TABLE_LIMIT)?;
                let elems: Vec<Element> = (0..n).map(|i| self.element_at(i)).collect();
                let mut t = Vec::with_capacity((n * n) as usize);
                for a in &elems {
                    for b in &elems {
                        t.push(self.index_of(&self.mul(a, b)) as u32);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Product of two elements given by index.
    pub fn mul_idx(&self, a: u64, b: u64) -> u64 {
        match self.table() {
            Some(t) => t[(a * self.order().expect("tabled") + b) as usize] as u64,
            None => self.index_of(&self.mul(&self.element_at(a), &self.element_at(b))),
        }
    }

    pub fn pow_idx(&self, a: u64, n: u32) -> u64 {
        let mut acc = a;
        for _ in 1..n {
            acc = self.mul_idx(acc, a);
        }
        acc
    }

    /// Reduces an integer (possibly negative) into ℤ_m.
    pub fn reduce(&self, k: i64) -> u32 {
        k.rem_euclid(self.modulus as i64) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{make_zm, matrix_ring, strict_upper};

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(0, 5), None);
    }

    #[test]
    fn index_round_trip() {
        let r = matrix_ring(2, 3).unwrap();
        for i in 0..r.order().unwrap() {
            assert_eq!(r.index_of(&r.element_at(i)), i);
        }
    }

    #[test]
    fn table_agrees_with_structure_constants() {
        let r = strict_upper(3, 2).unwrap();
        let n = r.order().unwrap();
        for a in 0..n {
            for b in 0..n {
                let direct = r.index_of(&r.mul(&r.element_at(a), &r.element_at(b)));
                assert_eq!(r.mul_idx(a, b), direct);
            }
        }
    }

    #[test]
    fn rejects_non_associative_tables() {
        // e0*e0 = e1, e1*e0 = 0, e0*e1 = e0: (e0 e0) e1 = e1 e1 = 0 but e0 (e0 e1) = e0 e0 = e1
        let t = vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![0, 0]];
        assert!(matches!(FiniteRing::new("bad", 5, 2, t, None), Err(ModelError::NotAssociative { .. })));
        assert!(FiniteRing::new("z6", 6, 1, vec![vec![1]], None).is_err());
    }

    #[test]
    fn zm_is_unital_and_commutative() {
        let r = make_zm(5).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.is_commutative() && r.is_unital());
        assert_eq!(r.mul(&[3], &[4]), vec![2]);
    }
}
