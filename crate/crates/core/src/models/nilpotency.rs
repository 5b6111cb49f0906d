use serde::Serialize;

use super::ring::{inv_mod, Element, FiniteRing};

/// Row-echelon basis of a subspace of `(ℤ_m)^d`.
struct Echelon {
    m: u32,
    rows: Vec<(usize, Element)>,
}

impl Echelon {
    fn new(m: u32) -> Self {
        Echelon { m, rows: Vec::new() }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut v: Element) -> bool {
        let m = self.m;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (m - c) * r) % m;
                }
            }
        }
        let Some(p) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(v[p], m).expect("prime modulus");
        for x in v.iter_mut() {
            *x = *x * inv % m;
        }
        self.rows.push((p, v));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Smallest `k` such that every product of `k` elements is zero, or `None`
/// if the powers `A ⊇ A² ⊇ …` stabilise at a nonzero subspace.
pub fn nilpotency_index(ring: &FiniteRing) -> Option<usize> {
    let mut current: Vec<Element> = (0..ring.dim()).map(|i| ring.basis(i)).collect();
    let mut k = 1;
    loop {
        if current.is_empty() {
            return Some(k);
        }
        let mut next = Echelon::new(ring.modulus());
        for u in &current {
            for j in 0..ring.dim() {
                next.insert(ring.mul(u, &ring.basis(j)));
            }
        }
        if next.dim() == current.len() {
            return None;
        }
        current = next.rows.into_iter().map(|(_, v)| v).collect();
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub factors: Vec<String>,
    pub factor_vectors: Vec<Element>,
    pub product: String,
    pub product_vector: Element,
}

fn render(ring: &FiniteRing, v: &[u32]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { ring.basis_name(i).to_string() } else { format!("{c}*{}", ring.basis_name(i)) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// First basis tuple of length `k` (lexicographic) whose product is
/// nonzero.
pub fn nonzero_product_witness(ring: &FiniteRing, k: usize) -> Option<ProductWitness> {
    fn go(ring: &FiniteRing, k: usize, prefix: &mut Vec<usize>, acc: &Element) -> Option<Element> {
        if prefix.len() == k {
            return (!ring.is_zero(acc)).then(|| acc.clone());
        }
        for j in 0..ring.dim() {
            let next = if prefix.is_empty() { ring.basis(j) } else { ring.mul(acc, &ring.basis(j)) };
            if ring.is_zero(&next) {
                continue;
            }
            prefix.push(j);
            if let Some(p) = go(ring, k, prefix, &next) {
                return Some(p);
            }
            prefix.pop();
        }
        None
    }
    if k == 0 {
        return None;
    }
    let mut prefix = Vec::new();
    let product = go(ring, k, &mut prefix, &ring.zero())?;
    Some(ProductWitness {
        factors: prefix.iter().map(|&i| ring.basis_name(i).to_string()).collect(),
        factor_vectors: prefix.iter().map(|&i| ring.basis(i)).collect(),
        product: render(ring, &product),
        product_vector: product,
    })
}
