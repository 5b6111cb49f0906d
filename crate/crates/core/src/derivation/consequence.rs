use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::certificate::{CertTerm, Certificate, FieldTag};
use super::instances::{generate_instances, InstanceGuard};
use super::linalg::{solve_prime, solve_rational};
use super::DerivationError;
use crate::freealg::{format_scalar, CommPoly, FreePoly, Mode, Scalar, Variable, Word};
use crate::identities::HIdentity;

#[derive(Clone, Copy, Debug)]
pub struct ConsequenceOptions {
    pub field: FieldTag,
    pub guard: InstanceGuard,
}

impl Default for ConsequenceOptions {
    fn default() -> Self {
        ConsequenceOptions { field: FieldTag::Rationals, guard: InstanceGuard::default() }
    }
}

/// Why a target is not a combination of the generated instances. This
/// speaks only about those instances, not about other routes to the target.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub field: String,
    pub instances: usize,
    pub coordinates: usize,
    pub rank: usize,
    pub rank_with_target: usize,
    /// The target reduced against the instance span, as an identity.
    pub residual: String,
}

#[derive(Clone, Debug)]
pub enum ConsequenceResult {
    InSpan(Certificate),
    NotInSpan(RankReport),
}

impl ConsequenceResult {
    pub fn is_in_span(&self) -> bool {
        matches!(self, ConsequenceResult::InSpan(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ConsequenceResult::InSpan(c) => Some(c),
            ConsequenceResult::NotInSpan(_) => None,
        }
    }

    pub fn rank_report(&self) -> Option<&RankReport> {
        match self {
            ConsequenceResult::NotInSpan(r) => Some(r),
            ConsequenceResult::InSpan(_) => None,
        }
    }
}

struct Coordinates {
    lhs: BTreeMap<Word, usize>,
    rhs: BTreeMap<Word, usize>,
}

impl Coordinates {
    fn new<'a>(ids: impl Iterator<Item = &'a HIdentity>) -> Self {
        let mut lhs = BTreeSet::new();
        let mut rhs = BTreeSet::new();
        for id in ids {
            lhs.extend(id.lhs().terms().map(|(w, _)| w.clone()));
            rhs.extend(id.rhs().as_poly().terms().map(|(w, _)| w.clone()));
        }
        let nl = lhs.len();
        Coordinates {
            lhs: lhs.into_iter().enumerate().map(|(i, w)| (w, i)).collect(),
            rhs: rhs.into_iter().enumerate().map(|(i, w)| (w, nl + i)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    fn vector(&self, id: &HIdentity) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (w, c) in id.lhs().terms() {
            v[self.lhs[w]] = c.clone();
        }
        for (w, c) in id.rhs().as_poly().terms() {
            v[self.rhs[w]] = c.clone();
        }
        v
    }

    fn identity(&self, v: &[Scalar], mode: Mode) -> HIdentity {
        let lhs = FreePoly::from_terms(mode, self.lhs.iter().map(|(w, &i)| (w.clone(), v[i].clone())));
        let rhs = FreePoly::from_terms(Mode::Commutative, self.rhs.iter().map(|(w, &i)| (w.clone(), v[i].clone())));
        HIdentity::new(lhs, CommPoly::from_poly(rhs))
    }
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let pp = BigInt::from(p);
    ((x % &pp + &pp) % &pp).to_u64().expect("below p")
}

/// Decides whether `target` is a combination of the instances of `seed(n)`
/// at `a -> Σ εᵥ·v`, `ε ∈ {-c..c}^vars`, by exact elimination.
pub fn consequence_check(
    n: u32,
    target: &HIdentity,
    vars: &[Variable],
    c: u32,
    opts: ConsequenceOptions,
) -> Result<ConsequenceResult, DerivationError> {
    if !target.is_homogeneous(n as usize) {
        return Err(DerivationError::NotHomogeneous(n));
    }
    let mode = target.mode();
    let instances = generate_instances(n, mode, vars, c, opts.guard)?;
    if let Some(i) = instances.first() {
        if i.identity.mode() != mode {
            return Err(DerivationError::ModeMismatch { target: mode, instances: i.identity.mode() });
        }
    }
    let coords = Coordinates::new(instances.iter().map(|i| &i.identity).chain(std::iter::once(target)));
    let rows: Vec<Vec<Scalar>> = instances.iter().map(|i| coords.vector(&i.identity)).collect();
    let tvec = coords.vector(target);

    let (rank, coeffs, residual) = match opts.field {
        FieldTag::Rationals => {
            let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
            let out = solve_rational(&int_rows, &tvec);
            (out.rank, out.coeffs, out.residual)
        }
        FieldTag::Prime(p) => {
            if !crate::models::is_prime_u64(p) {
                return Err(DerivationError::NotPrime(p));
            }
            let reduce = |x: &Scalar| -> Result<u64, DerivationError> {
                let d = residue(x.denom(), p);
                let inv = crate::models::inv_mod(d as u32, p as u32)
                    .ok_or_else(|| DerivationError::NotInvertible { denominator: x.denom().to_string(), prime: p })?;
                Ok(residue(x.numer(), p) * inv as u64 % p)
            };
            let mrows: Vec<Vec<u64>> =
                rows.iter().map(|r| r.iter().map(&reduce).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
            let mt: Vec<u64> = tvec.iter().map(&reduce).collect::<Result<_, _>>()?;
            let out = solve_prime(&mrows, &mt, p);
            let lift = |x: &u64| Scalar::from_integer(BigInt::from(*x));
            (out.rank, out.coeffs.map(|c| c.iter().map(lift).collect()), out.residual.iter().map(lift).collect())
        }
    };

    Ok(match coeffs {
        Some(coeffs) => ConsequenceResult::InSpan(Certificate {
            n,
            mode,
            field: opts.field,
            target: target.clone(),
            instances: instances
                .iter()
                .zip(coeffs)
                .filter(|(_, k)| !k.is_zero())
                .map(|(i, coeff)| CertTerm { subst: i.subst.clone(), coeff })
                .collect(),
        }),
        None => ConsequenceResult::NotInSpan(RankReport {
            field: opts.field.to_string(),
            instances: instances.len(),
            coordinates: coords.len(),
            rank,
            rank_with_target: rank + 1,
            residual: coords.identity(&residual, mode).to_string(),
        }),
    })
}

/// A fixed span-membership question and its answer.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub name: &'static str,
    pub n: u32,
    pub target: HIdentity,
    pub coeff_range: u32,
    pub result: ConsequenceResult,
}

impl Experiment {
    pub fn summary(&self) -> String {
        match &self.result {
            ConsequenceResult::InSpan(c) => {
                let coeffs: Vec<String> = c.instances.iter().map(|t| format_scalar(&t.coeff)).collect();
                format!("{}: {} is in the span ({} terms: {})", self.name, self.target, coeffs.len(), coeffs.join(", "))
            }
            ConsequenceResult::NotInSpan(r) => format!(
                "{}: {} is not in the span (rank {} of {} instances, {} coordinates)",
                self.name, self.target, r.rank, r.instances, r.coordinates
            ),
        }
    }
}

/// Stock questions over the variables `x, y, z`: the commutator identity
/// as printed and symmetrized, the 3-ring conclusion for `n = 3`, and the
/// Jordan case `n = 2`, all with noncommutative domain.
pub fn stock_experiments() -> Result<Vec<Experiment>, DerivationError> {
    let xyz = [Variable::X, Variable::Y, Variable::Z];
    let nc = Mode::NonCommutative;
    let cases: [(&'static str, u32, &str, u32); 5] = [
        ("collapsed_commutator", 3, "h(y*x*z - x*z*y) = 0", 1),
        ("symmetrized_commutator", 3, "h(y*x*z + y*z*x - x*z*y - z*x*y) = 0", 1),
        ("three_ring", 3, "h(x*y*z) = H(x)*H(y)*H(z)", 1),
        ("symmetric_three_ring", 3, "h(x*y*z + x*z*y + y*x*z + y*z*x + z*x*y + z*y*x) = 6*H(x)*H(y)*H(z)", 1),
        ("jordan_two_ring", 2, "h(x*y) = H(x)*H(y)", 2),
    ];
    cases
        .into_iter()
        .map(|(name, n, text, c)| {
            let target = HIdentity::parse(text, nc)?;
            let result = consequence_check(n, &target, &xyz, c, ConsequenceOptions::default())?;
            Ok(Experiment { name, n, target, coeff_range: c, result })
        })
        .collect()
}
