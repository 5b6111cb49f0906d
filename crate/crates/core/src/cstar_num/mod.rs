//! Numeric checks on the commutative C*-algebras ℂᵏ with pointwise
//! operations, sup norm and entrywise conjugation.

mod checks;

pub use checks::{
    check_contractive_jordan, check_corollary_2_6, check_theorem_2_7, classify_njordan_functionals,
    step2_reduction_check, ContractiveReport, FilterVerdict, MapVerdict, StarReport,
};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const ALGEBRA_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_SAMPLES: usize = 256;

#[derive(Debug, Error)]
pub enum CstarError {
    #[error("{0}")]
    Precondition(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("`{map}` fails the {hypothesis} hypothesis at sample {sample:?}")]
    Hypothesis { hypothesis: String, map: String, sample: Vec<[f64; 2]> },
    #[error("`{map}` has norm {norm} > 1")]
    NotContractive { map: String, norm: f64 },
}

/// ℂᵏ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagAlgebra {
    pub dim: usize,
}

impl DiagAlgebra {
    pub fn new(dim: usize) -> Self {
        DiagAlgebra { dim }
    }

    pub fn norm(a: &[Complex64]) -> f64 {
        a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn star(a: &[Complex64]) -> Vec<Complex64> {
        a.iter().map(|z| z.conj()).collect()
    }

    pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    pub fn pow(a: &[Complex64], n: u32) -> Vec<Complex64> {
        a.iter().map(|z| z.powu(n)).collect()
    }

    /// Entries uniform in the square `[0,1] + [0,1]i`.
    pub fn random(&self, rng: &mut impl Rng) -> Vec<Complex64> {
        (0..self.dim).map(|_| Complex64::new(rng.gen(), rng.gen())).collect()
    }

    /// `count` elements from a ChaCha8 stream seeded with `seed`.
    pub fn samples(&self, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.random(&mut rng)).collect()
    }
}

/// A linear map ℂᵐ → ℂᵏ given by its k×m matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMapC {
    pub name: String,
    pub matrix: Vec<Vec<Complex64>>,
    pub domain_dim: usize,
    pub tolerance: f64,
}

impl Serialize for LinearMapC {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<[f64; 2]>> = self.matrix.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        let mut st = s.serialize_struct("LinearMapC", 4)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("domain_dim", &self.domain_dim)?;
        st.serialize_field("codomain_dim", &self.matrix.len())?;
        st.serialize_field("matrix", &rows)?;
        st.end()
    }
}

impl LinearMapC {
    pub fn new(name: impl Into<String>, domain_dim: usize, matrix: Vec<Vec<Complex64>>) -> Result<Self, CstarError> {
        if let Some(r) = matrix.iter().find(|r| r.len() != domain_dim) {
            return Err(CstarError::Shape(format!("row of length {} for domain dimension {domain_dim}", r.len())));
        }
        Ok(LinearMapC { name: name.into(), matrix, domain_dim, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn real(name: impl Into<String>, domain_dim: usize, rows: &[Vec<f64>]) -> Result<Self, CstarError> {
        let matrix = rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::new(name, domain_dim, matrix)
    }

    pub fn zero(m: usize, k: usize) -> Self {
        LinearMapC::new("zero", m, vec![vec![Complex64::new(0.0, 0.0); m]; k]).expect("square shape")
    }

    /// `ω·aᵢ` as a map ℂᵐ → ℂ.
    pub fn scaled_projection(m: usize, i: usize, omega: Complex64) -> Self {
        let mut row = vec![Complex64::new(0.0, 0.0); m];
        row[i] = omega;
        let name = if omega == Complex64::new(1.0, 0.0) {
            format!("proj{}", i + 1)
        } else if omega == Complex64::new(-1.0, 0.0) {
            format!("-proj{}", i + 1)
        } else {
            format!("({:.4}{:+.4}i)*proj{}", omega.re, omega.im, i + 1)
        };
        LinearMapC::new(name, m, vec![row]).expect("one row")
    }

    /// `a ↦ (a_{σ(0)}, …, a_{σ(m-1)})`.
    pub fn permutation(sigma: &[usize]) -> Result<Self, CstarError> {
        let m = sigma.len();
        let mut seen = vec![false; m];
        for &s in sigma {
            if s >= m || std::mem::replace(&mut seen[s], true) {
                return Err(CstarError::Shape(format!("{sigma:?} is not a permutation")));
            }
        }
        let rows =
            sigma.iter().map(|&s| (0..m).map(|j| if j == s { 1.0 } else { 0.0 }).collect()).collect::<Vec<Vec<f64>>>();
        Self::real(format!("perm{sigma:?}"), m, &rows)
    }

    /// Stacks `k` maps into ℂ into one map into ℂᵏ.
    pub fn stack(parts: &[LinearMapC]) -> Result<Self, CstarError> {
        let m = parts.first().map_or(0, |p| p.domain_dim);
        let mut matrix = Vec::new();
        for p in parts {
            if p.domain_dim != m {
                return Err(CstarError::Shape("components with different domains".into()));
            }
            matrix.extend(p.matrix.iter().cloned());
        }
        let name = format!("({})", parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", "));
        Self::new(name, m, matrix)
    }

    pub fn scale(&self, t: Complex64) -> Self {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|z| z * t).collect()).collect();
        LinearMapC { name: format!("{t}*{}", self.name), matrix, ..self.clone() }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn component(&self, i: usize) -> LinearMapC {
        LinearMapC { name: format!("{}[{i}]", self.name), matrix: vec![self.matrix[i].clone()], ..self.clone() }
    }

    pub fn apply(&self, a: &[Complex64]) -> Vec<Complex64> {
        self.matrix.iter().map(|r| r.iter().zip(a).map(|(x, y)| x * y).sum()).collect()
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().flatten().all(|z| z.im == 0.0)
    }
}

/// The sup→sup operator norm: the largest row ℓ₁ norm.
pub fn op_norm_sup(h: &LinearMapC) -> f64 {
    h.matrix.iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Random maps ℂᵐ → ℂᵏ with `m, k ≤ max_dim`. About half are stacks of
/// classified functionals, the rest have entries in `{-1, 0, 1}` plus a
/// random perturbation on some entries.
pub fn random_linear_maps(count: usize, max_dim: usize, seed: u64) -> Vec<LinearMapC> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|idx| {
            let m = rng.gen_range(1..=max_dim);
            let k = rng.gen_range(1..=max_dim);
            let name = format!("random {idx}");
            if rng.gen_bool(0.5) {
                let n = rng.gen_range(2..=4);
                let parts = classify_njordan_functionals(m, n).expect("small dimension");
                let chosen: Vec<LinearMapC> = (0..k).map(|_| parts[rng.gen_range(0..parts.len())].clone()).collect();
                LinearMapC { name, ..LinearMapC::stack(&chosen).expect("shared domain") }
            } else {
                let matrix = (0..k)
                    .map(|_| {
                        (0..m)
                            .map(|_| {
                                let base = rng.gen_range(-1i32..=1) as f64;
                                if rng.gen_bool(0.25) {
                                    Complex64::new(base + rng.gen::<f64>(), rng.gen::<f64>())
                                } else {
                                    Complex64::new(base, 0.0)
                                }
                            })
                            .collect()
                    })
                    .collect();
                LinearMapC::new(name, m, matrix).expect("rows of length m")
            }
        })
        .collect()
}

pub(crate) fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm())))
}
