use std::collections::HashSet;

use rayon::prelude::*;

use super::DerivationError;
use crate::freealg::{LinearForm, Mode, Substitution, Variable};
use crate::identities::HIdentity;

/// Default size limits for [`generate_instances`].
#[derive(Clone, Copy, Debug, Default)]
pub struct InstanceGuard {
    pub unsafe_override: bool,
}

impl InstanceGuard {
    pub const MAX_VARS: usize = 4;
    pub const MAX_COEFF: u32 = 2;

    fn check(self, vars: usize, c: u32) -> Result<(), DerivationError> {
        if !self.unsafe_override && (vars > Self::MAX_VARS || c > Self::MAX_COEFF) {
            return Err(DerivationError::Guard(format!(
                "{vars} variables with coefficient range {c} exceeds {} variables / range {}",
                Self::MAX_VARS,
                Self::MAX_COEFF
            )));
        }
        Ok(())
    }
}

/// `seed(n)` at `a -> Σ εᵥ·v`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub epsilon: Vec<i64>,
    pub subst: Substitution,
    pub identity: HIdentity,
}

/// Coefficient vectors in `{-c..c}^k`, lexicographic with the first
/// variable most significant.
fn epsilons(k: usize, c: i64) -> Vec<Vec<i64>> {
    let width = (2 * c + 1) as usize;
    let total = width.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut e = vec![0; k];
            for slot in e.iter_mut().rev() {
                *slot = (idx % width) as i64 - c;
                idx /= width;
            }
            e
        })
        .collect()
}

/// Substitution instances of `seed(n)` for every `ε ∈ {-c..c}^|vars|`.
/// The zero vector is dropped, and of `ε` and `-ε` only the one whose first
/// nonzero entry is positive is kept; identical identities are kept once.
pub fn generate_instances(
    n: u32,
    mode: Mode,
    vars: &[Variable],
    c: u32,
    guard: InstanceGuard,
) -> Result<Vec<Instance>, DerivationError> {
    guard.check(vars.len(), c)?;
    let seed = HIdentity::seed(n, mode)?;
    let kept: Vec<Vec<i64>> = epsilons(vars.len(), c as i64)
        .into_iter()
        .filter(|e| e.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    let expanded: Vec<Instance> = kept
        .into_par_iter()
        .map(|epsilon| {
            let form = LinearForm::from_pairs(vars.iter().copied().zip(epsilon.iter().copied()));
            let mut subst = Substitution::identity();
            subst.insert(Variable::A, form);
            let identity = seed.substitute(&subst);
            Instance { epsilon, subst, identity }
        })
        .collect();
    let mut seen = HashSet::new();
    Ok(expanded.into_iter().filter(|i| seen.insert((i.identity.lhs().clone(), i.identity.rhs().clone()))).collect())
}
