//! Span membership by incremental row reduction. Rows are reduced in the
//! order given; each kept row pivots on its leftmost nonzero column.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) struct Outcome<C, V> {
    pub rank: usize,
    /// `target = Σ coeffs[i]·rows[i]` when the target is in the span.
    pub coeffs: Option<Vec<C>>,
    /// The target after reduction against the span; zero iff it lies in it.
    pub residual: Vec<V>,
}

/// One row `vec = Σ track[j]·input[j]`, kept with integer entries.
struct QRow {
    vec: Vec<BigInt>,
    track: Vec<BigInt>,
}

fn normalize(vec: &mut [BigInt], track: &mut [BigInt], extra: Option<&mut BigInt>) {
    let mut g = BigInt::zero();
    for x in vec.iter().chain(track.iter()) {
        g = g.gcd(x);
    }
    if let Some(s) = &extra {
        g = g.gcd(s);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in vec.iter_mut().chain(track.iter_mut()) {
        *x /= &g;
    }
    if let Some(s) = extra {
        *s /= &g;
    }
}

/// `r <- piv[c]·r - r[c]·piv` on both the vector and tracking parts.
fn eliminate(vec: &mut [BigInt], track: &mut [BigInt], piv: &QRow, c: usize) -> BigInt {
    let a = piv.vec[c].clone();
    let b = vec[c].clone();
    for (x, p) in vec.iter_mut().zip(&piv.vec) {
        *x = &a * &*x - &b * p;
    }
    for (x, p) in track.iter_mut().zip(&piv.track) {
        *x = &a * &*x - &b * p;
    }
    a
}

/// Fraction-free elimination over ℚ. `rows` are integer vectors, `target`
/// is rational.
pub(crate) fn solve_rational(rows: &[Vec<BigInt>], target: &[BigRational]) -> Outcome<BigRational, BigRational> {
    let k = rows.len();
    let width = target.len();
    let mut echelon: BTreeMap<usize, QRow> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        let mut vec = row.clone();
        let mut track = vec![BigInt::zero(); k];
        track[i] = BigInt::one();
        for (&c, piv) in &echelon {
            if !vec[c].is_zero() {
                eliminate(&mut vec, &mut track, piv, c);
            }
        }
        if let Some(p) = vec.iter().position(|x| !x.is_zero()) {
            normalize(&mut vec, &mut track, None);
            echelon.insert(p, QRow { vec, track });
        }
    }

    // clear denominators: T_int = L·target
    let lcm = target.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut vec: Vec<BigInt> =
        target.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    // invariant: vec = scale·T_int + Σ comb[j]·input[j]
    let mut comb = vec![BigInt::zero(); k];
    let mut scale = BigInt::one();
    for (&c, piv) in &echelon {
        if !vec[c].is_zero() {
            let a = eliminate(&mut vec, &mut comb, piv, c);
            scale *= a;
            normalize(&mut vec, &mut comb, Some(&mut scale));
        }
    }
    if scale.is_negative() {
        scale = -scale;
        vec.iter_mut().chain(comb.iter_mut()).for_each(|x| *x = -x.clone());
    }
    let denom = &scale * &lcm;
    let residual: Vec<BigRational> = vec.iter().map(|x| BigRational::new(x.clone(), denom.clone())).collect();
    let coeffs = vec
        .iter()
        .all(Zero::is_zero)
        .then(|| comb.iter().map(|x| BigRational::new(-x.clone(), denom.clone())).collect());
    debug_assert_eq!(residual.len(), width);
    Outcome { rank: echelon.len(), coeffs, residual }
}

fn inv(a: u64, p: u64) -> u64 {
    crate::models::inv_mod(a as u32, p as u32).expect("nonzero element of a prime field") as u64
}

/// Elimination over GF(p) with entries already reduced into `0..p`.
pub(crate) fn solve_prime(rows: &[Vec<u64>], target: &[u64], p: u64) -> Outcome<u64, u64> {
    let k = rows.len();
    // pivot rows normalized to leading 1
    let mut echelon: BTreeMap<usize, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
    let reduce = |vec: &mut Vec<u64>, track: &mut Vec<u64>, echelon: &BTreeMap<usize, (Vec<u64>, Vec<u64>)>| {
        for (&c, (pv, pt)) in echelon {
            let f = vec[c];
            if f != 0 {
                for (x, y) in vec.iter_mut().zip(pv) {
                    *x = (*x + (p - f) * y) % p;
                }
                for (x, y) in track.iter_mut().zip(pt) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
    };
    for (i, row) in rows.iter().enumerate() {
        let mut vec = row.clone();
        let mut track = vec![0u64; k];
        track[i] = 1;
        reduce(&mut vec, &mut track, &echelon);
        if let Some(c) = vec.iter().position(|&x| x != 0) {
            let s = inv(vec[c], p);
            vec.iter_mut().chain(track.iter_mut()).for_each(|x| *x = *x * s % p);
            echelon.insert(c, (vec, track));
        }
    }
    let mut vec = target.to_vec();
    // invariant: vec = target + Σ comb[j]·input[j]
    let mut comb = vec![0u64; k];
    reduce(&mut vec, &mut comb, &echelon);
    let coeffs = vec.iter().all(|&x| x == 0).then(|| comb.iter().map(|&x| (p - x) % p).collect());
    Outcome { rank: echelon.len(), coeffs, residual: vec }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn rational_membership() {
        let rows = vec![bi(&[2, 0, 1]), bi(&[0, 3, 1]), bi(&[2, 3, 2])];
        let out = solve_rational(&rows, &q(&[1, 1, 0]));
        assert_eq!(out.rank, 2);
        assert!(out.coeffs.is_none());
        let target = q(&[4, 3, 3]);
        let out = solve_rational(&rows, &target);
        let c = out.coeffs.unwrap();
        for col in 0..3 {
            let s: BigRational = (0..3).map(|i| &c[i] * BigRational::from_integer(rows[i][col].clone())).sum();
            assert_eq!(s, target[col]);
        }
    }

    #[test]
    fn rational_target_with_denominator() {
        let rows = vec![bi(&[3, 0]), bi(&[0, 2])];
        let target = vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
        let c = solve_rational(&rows, &target).coeffs.unwrap();
        assert_eq!(c[0], BigRational::new(1.into(), 6.into()));
        assert_eq!(c[1], BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn prime_membership() {
        let rows = vec![vec![1, 2, 0], vec![0, 1, 1]];
        let out = solve_prime(&rows, &[1, 3, 1], 5);
        assert_eq!(out.coeffs, Some(vec![1, 1]));
        let out = solve_prime(&rows, &[0, 0, 1], 5);
        assert!(out.coeffs.is_none());
        assert_eq!(out.rank, 2);
    }
}
