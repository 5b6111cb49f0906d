use std::str::FromStr;

use super::ring::{Element, FiniteRing};
use super::ModelError;

/// Desk-scale limits for ring constructors. The default enforces
/// `m ∈ {2,3,5,7}`, matrix size `k ≤ 4` and at most 4 points for function
/// rings; `unsafe_override` lifts them (the modulus must still be prime).
#[derive(Clone, Copy, Debug, Default)]
pub struct Guard {
    pub unsafe_override: bool,
}

impl Guard {
    pub const DEFAULT: Guard = Guard { unsafe_override: false };
    pub const OVERRIDE: Guard = Guard { unsafe_override: true };

    fn modulus(self, m: u32) -> Result<(), ModelError> {
        if !self.unsafe_override && ![2, 3, 5, 7].contains(&m) {
            return Err(ModelError::Guard(format!("modulus {m} outside {{2,3,5,7}}")));
        }
        Ok(())
    }

    fn size(self, k: usize) -> Result<(), ModelError> {
        if k == 0 || (!self.unsafe_override && k > 4) {
            return Err(ModelError::Guard(format!("matrix size {k} outside 1..=4")));
        }
        Ok(())
    }

    pub fn zm(self, m: u32) -> Result<FiniteRing, ModelError> {
        self.modulus(m)?;
        Ok(FiniteRing::new(format!("Z{m}"), m, 1, vec![vec![1]], Some(vec![1]))?
            .with_involution(vec![1])?
            .with_names(vec!["1".into()]))
    }

    pub fn matrix_ring(self, k: usize, m: u32) -> Result<FiniteRing, ModelError> {
        self.modulus(m)?;
        self.size(k)?;
        let basis: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        let unit = basis.iter().map(|&(i, j)| u32::from(i == j)).collect();
        let ring = matrix_like(format!("M{k}(Z{m})"), m, &basis, Some(unit))?;
        // transpose permutes the matrix units
        let d = basis.len();
        let mut inv = vec![0u32; d * d];
        for (col, &(i, j)) in basis.iter().enumerate() {
            let row = basis.iter().position(|&p| p == (j, i)).expect("square basis");
            inv[row * d + col] = 1;
        }
        ring.with_involution(inv)
    }

    pub fn strict_upper(self, k: usize, m: u32) -> Result<FiniteRing, ModelError> {
        self.modulus(m)?;
        self.size(k)?;
        let basis: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        matrix_like(format!("StrictUpper{k}(Z{m})"), m, &basis, None)
    }

    pub fn upper_triangular(self, k: usize, m: u32) -> Result<FiniteRing, ModelError> {
        self.modulus(m)?;
        self.size(k)?;
        let basis: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let unit = basis.iter().map(|&(i, j)| u32::from(i == j)).collect();
        matrix_like(format!("Upper{k}(Z{m})"), m, &basis, Some(unit))
    }

    pub fn product(self, a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing, ModelError> {
        if a.modulus() != b.modulus() {
            return Err(ModelError::ModulusMismatch(a.modulus(), b.modulus()));
        }
        let (da, db) = (a.dim(), b.dim());
        let d = da + db;
        let mut table = vec![vec![0u32; d]; d * d];
        for i in 0..da {
            for j in 0..da {
                table[i * d + j][..da].copy_from_slice(&a.structure_constant(i, j));
            }
        }
        for i in 0..db {
            for j in 0..db {
                table[(da + i) * d + da + j][da..].copy_from_slice(&b.structure_constant(i, j));
            }
        }
        let unit = match (a.unit(), b.unit()) {
            (Some(u), Some(v)) => Some(u.iter().chain(v).copied().collect()),
            _ => None,
        };
        let names = a.basis_names().iter().chain(b.basis_names()).cloned().collect();
        let ring =
            FiniteRing::new(format!("{}x{}", a.label(), b.label()), a.modulus(), d, table, unit)?.with_names(names);
        match (a.involution(), b.involution()) {
            (Some(ia), Some(ib)) => {
                let mut inv = vec![0u32; d * d];
                for r in 0..da {
                    inv[r * d..r * d + da].copy_from_slice(&ia[r * da..(r + 1) * da]);
                }
                for r in 0..db {
                    inv[(da + r) * d + da..(da + r + 1) * d].copy_from_slice(&ib[r * db..(r + 1) * db]);
                }
                ring.with_involution(inv)
            }
            _ => Ok(ring),
        }
    }

    /// `base`-valued functions on a set of `npoints` points, pointwise.
    pub fn function_ring(self, base: &FiniteRing, npoints: usize) -> Result<FiniteRing, ModelError> {
        if npoints == 0 || (!self.unsafe_override && npoints > 4) {
            return Err(ModelError::Guard(format!("{npoints} points outside 1..=4")));
        }
        let mut acc = base.clone();
        for _ in 1..npoints {
            acc = self.product(&acc, base)?;
        }
        let names = (0..npoints).flat_map(|p| base.basis_names().iter().map(move |n| format!("{n}[p{p}]"))).collect();
        Ok(acc.relabeled(format!("Fun({}, {npoints} pts)", base.label())).with_names(names))
    }
}

/// Rings spanned by matrix units `E_ij` for the given index pairs; the pair
/// set must be closed under the products that do not vanish.
fn matrix_like(
    label: String,
    m: u32,
    basis: &[(usize, usize)],
    unit: Option<Element>,
) -> Result<FiniteRing, ModelError> {
    let d = basis.len();
    let mut table = vec![vec![0u32; d]; d * d];
    for (a, &(i, j)) in basis.iter().enumerate() {
        for (b, &(k, l)) in basis.iter().enumerate() {
            if j == k {
                let c = basis
                    .iter()
                    .position(|&p| p == (i, l))
                    .ok_or_else(|| ModelError::Shape(format!("{label}: basis not closed")))?;
                table[a * d + b][c] = 1;
            }
        }
    }
    let names = basis.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    Ok(FiniteRing::new(label, m, d, table, unit)?.with_names(names))
}

pub fn make_zm(m: u32) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.zm(m)
}

pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.product(a, b)
}

pub fn matrix_ring(k: usize, m: u32) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.matrix_ring(k, m)
}

pub fn strict_upper(k: usize, m: u32) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.strict_upper(k, m)
}

pub fn upper_triangular(k: usize, m: u32) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.upper_triangular(k, m)
}

pub fn function_ring(base: &FiniteRing, npoints: usize) -> Result<FiniteRing, ModelError> {
    Guard::DEFAULT.function_ring(base, npoints)
}

/// A ring catalog entry:
///
/// | spec                    | ring                                   |
/// |-------------------------|----------------------------------------|
/// | `zm:5`                  | ℤ₅                                     |
/// | `zm:5^2`                | ℤ₅ × ℤ₅                                |
/// | `mat:2x2@2`             | M₂(ℤ₂)                                 |
/// | `upper:4@2`             | strictly upper triangular 4×4 over ℤ₂  |
/// | `tri:2@5`               | upper triangular 2×2 over ℤ₅           |
/// | `fun:upper:4@2,pts:3`   | functions from 3 points into the above |
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Zm { m: u32, power: usize },
    Matrix { k: usize, m: u32 },
    StrictUpper { k: usize, m: u32 },
    Triangular { k: usize, m: u32 },
    Functions { base: Box<RingSpec>, points: usize },
}

impl RingSpec {
    pub fn build(&self, guard: Guard) -> Result<FiniteRing, ModelError> {
        match self {
            RingSpec::Zm { m, power } => {
                let base = guard.zm(*m)?;
                if *power == 0 || (!guard.unsafe_override && *power > 4) {
                    return Err(ModelError::Guard(format!("power {power} outside 1..=4")));
                }
                let mut acc = base.clone();
                for _ in 1..*power {
                    acc = guard.product(&acc, &base)?;
                }
                Ok(acc)
            }
            RingSpec::Matrix { k, m } => guard.matrix_ring(*k, *m),
            RingSpec::StrictUpper { k, m } => guard.strict_upper(*k, *m),
            RingSpec::Triangular { k, m } => guard.upper_triangular(*k, *m),
            RingSpec::Functions { base, points } => {
                let b = base.build(guard)?;
                guard.function_ring(&b, *points)
            }
        }
    }
}

fn num<T: FromStr>(s: &str, spec: &str) -> Result<T, ModelError> {
    s.trim().parse().map_err(|_| ModelError::BadSpec(spec.to_string()))
}

impl FromStr for RingSpec {
    type Err = ModelError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadSpec(spec.to_string());
        let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
        match kind {
            "zm" => {
                let (m, power) = match rest.split_once('^') {
                    Some((m, p)) => (num(m, spec)?, num(p, spec)?),
                    None => (num(rest, spec)?, 1),
                };
                Ok(RingSpec::Zm { m, power })
            }
            "mat" => {
                let (dims, m) = rest.split_once('@').ok_or_else(bad)?;
                let (r, c) = dims.split_once('x').ok_or_else(bad)?;
                let (r, c): (usize, usize) = (num(r, spec)?, num(c, spec)?);
                if r != c {
                    return Err(bad());
                }
                Ok(RingSpec::Matrix { k: r, m: num(m, spec)? })
            }
            "upper" | "tri" => {
                let (k, m) = rest.split_once('@').ok_or_else(bad)?;
                let (k, m) = (num(k, spec)?, num(m, spec)?);
                Ok(if kind == "upper" { RingSpec::StrictUpper { k, m } } else { RingSpec::Triangular { k, m } })
            }
            "fun" => {
                let (base, pts) = rest.rsplit_once(",pts:").ok_or_else(bad)?;
                let base: RingSpec = base.parse()?;
                Ok(RingSpec::Functions { base: Box::new(base), points: num(pts, spec)? })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_upper_four_over_z2() {
        let a = strict_upper(4, 2).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.order(), Some(64));
        assert!(!a.is_unital());
        assert!(!a.is_commutative());
    }

    #[test]
    fn matrix_ring_has_unit_and_transpose() {
        let r = matrix_ring(2, 2).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.is_unital());
        assert!(!r.is_commutative());
        let inv = r.involution().unwrap();
        // E12 (index 1) <-> E21 (index 2)
        assert_eq!(inv[2 * 4 + 1], 1);
        assert_eq!(inv[4 + 2], 1);
    }

    #[test]
    fn guards() {
        assert!(make_zm(11).is_err());
        assert!(Guard::OVERRIDE.zm(11).is_ok());
        assert!(Guard::OVERRIDE.zm(9).is_err());
        assert!(matrix_ring(5, 2).is_err());
        let b = strict_upper(2, 2).unwrap();
        assert!(function_ring(&b, 5).is_err());
    }

    #[test]
    fn function_ring_dimension() {
        let a = strict_upper(4, 2).unwrap();
        let f = function_ring(&a, 3).unwrap();
        assert_eq!(f.dim(), 18);
    }

    #[test]
    fn products_and_mismatch() {
        let z5 = make_zm(5).unwrap();
        let p = product(&z5, &z5).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.is_commutative() && p.is_unital());
        assert!(matches!(product(&z5, &make_zm(7).unwrap()), Err(ModelError::ModulusMismatch(5, 7))));
    }

    #[test]
    fn catalog_strings() {
        let cases = [
            ("zm:5", 1),
            ("zm:5^2", 2),
            ("mat:2x2@2", 4),
            ("upper:4@2", 6),
            ("tri:2@5", 3),
            ("fun:upper:4@2,pts:3", 18),
        ];
        for (s, d) in cases {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.build(Guard::DEFAULT).unwrap().dim(), d, "{s}");
        }
        for bad in ["", "zm", "mat:2x3@2", "blah:3", "upper:4"] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
        }
    }
}
