//! Scripted replays of polarization proofs, and a decision procedure for
//! whether a target identity is a rational combination of substitution
//! instances of the seed `h(aⁿ) = H(a)ⁿ`.

mod builtin;
mod certificate;
mod consequence;
mod instances;
mod linalg;
mod replay;
mod script;

pub use builtin::{builtin, BUILTIN_SCRIPTS};
pub use certificate::{verify_certificate, CertTerm, Certificate, CertificateError, FieldTag};
pub use consequence::{
    consequence_check, stock_experiments, ConsequenceOptions, ConsequenceResult, Experiment, RankReport,
};
pub use instances::{generate_instances, Instance, InstanceGuard};
pub use replay::{replay, AssertionRecord, StepRecord, Trace};
pub use script::{DerivationScript, ScriptBuilder, Step, StepRef};

use thiserror::Error;

use crate::freealg::{Mode, SubstitutionError};
use crate::identities::IdentityError;

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("step {step} refers to step {target}, which is not earlier")]
    ForwardReference { step: usize, target: usize },
    #[error("duplicate assertion label {0}")]
    DuplicateLabel(String),
    #[error("script has no steps")]
    EmptyScript,
    #[error("guard: {0}")]
    Guard(String),
    #[error("mode mismatch: target is {target:?}, instances are {instances:?}")]
    ModeMismatch { target: Mode, instances: Mode },
    #[error("target is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator {denominator} vanishes mod {prime}")]
    NotInvertible { denominator: String, prime: u64 },
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}
