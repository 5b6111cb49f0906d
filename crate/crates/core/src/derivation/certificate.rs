use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freealg::{
    format_ratio, parse_scalar, CommPoly, FreePoly, Mode, Scalar, Substitution, SubstitutionError, Variable,
};
use crate::identities::{HIdentity, IdentityError};
use crate::models::inv_mod;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => f.write_str("Q"),
            FieldTag::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = CertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(FieldTag::Rationals);
        }
        s.strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|p| p.parse().ok())
            .filter(|&p: &u64| p < u32::MAX as u64 && crate::models::is_prime_u64(p))
            .map(FieldTag::Prime)
            .ok_or_else(|| CertificateError::Field(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown field tag `{0}`")]
    Field(String),
    #[error("unknown mode `{0}`")]
    Mode(String),
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("substitution may only map the seed variable a, got `{0}`")]
    SubstKey(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub subst: Substitution,
    pub coeff: Scalar,
}

/// `target = Σ coeffᵢ · seed(n)[substᵢ]`, over ℚ or GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: u32,
    pub mode: Mode,
    pub field: FieldTag,
    pub target: HIdentity,
    pub instances: Vec<CertTerm>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    subst: BTreeMap<String, String>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    n: u32,
    mode: String,
    field: String,
    target: String,
    instances: Vec<TermJson>,
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let pp = BigInt::from(p);
    ((x % &pp + &pp) % &pp).to_u64().expect("below p")
}

/// `c mod p`, or `None` if `p` divides the denominator.
fn reduce_scalar(c: &Scalar, p: u64) -> Option<u64> {
    let inv = inv_mod(residue(c.denom(), p) as u32, p as u32)? as u64;
    Some(residue(c.numer(), p) * inv % p)
}

fn vanishes_mod(poly: &FreePoly, p: u64) -> bool {
    poly.terms().all(|(_, c)| reduce_scalar(c, p) == Some(0))
}

impl Certificate {
    /// Re-expands `Σ coeffᵢ · seed(n)[substᵢ]` with the identity calculus.
    pub fn combination(&self) -> Result<HIdentity, IdentityError> {
        let seed = HIdentity::seed(self.n, self.mode)?;
        let instances: Vec<HIdentity> = self.instances.iter().map(|t| seed.substitute(&t.subst)).collect();
        let mut terms: Vec<(Scalar, &HIdentity)> =
            self.instances.iter().zip(&instances).map(|(t, i)| (t.coeff.clone(), i)).collect();
        let zero = HIdentity::new(FreePoly::zero(self.mode), CommPoly::zero());
        if terms.is_empty() {
            terms.push((Scalar::zero(), &zero));
        }
        HIdentity::combine(&terms)
    }

    /// The same certificate with coefficients reduced into `0..p`, if no
    /// coefficient denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Certificate> {
        let mut instances = Vec::new();
        for t in &self.instances {
            let c = reduce_scalar(&t.coeff, p)?;
            if c != 0 {
                instances.push(CertTerm { subst: t.subst.clone(), coeff: Scalar::from_integer(BigInt::from(c)) });
            }
        }
        Some(Certificate { field: FieldTag::Prime(p), instances, ..self.clone() })
    }

    pub fn to_json(&self) -> String {
        let dto = CertJson {
            n: self.n,
            mode: self.mode.tag().to_string(),
            field: self.field.to_string(),
            target: self.target.to_string(),
            instances: self
                .instances
                .iter()
                .map(|t| TermJson { subst: t.subst.to_string_map(), coeff: format_ratio(&t.coeff) })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        let dto: CertJson = serde_json::from_str(text)?;
        let mode = Mode::from_tag(&dto.mode).ok_or(CertificateError::Mode(dto.mode))?;
        let field: FieldTag = dto.field.parse()?;
        let target = HIdentity::parse(&dto.target, mode)?;
        let mut instances = Vec::new();
        for t in dto.instances {
            if let Some(k) = t.subst.keys().find(|k| Variable::from_name(k) != Some(Variable::A)) {
                return Err(CertificateError::SubstKey(k.clone()));
            }
            let subst = Substitution::parse(t.subst.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
            let coeff = parse_scalar(&t.coeff).ok_or(CertificateError::Coefficient(t.coeff))?;
            instances.push(CertTerm { subst, coeff });
        }
        Ok(Certificate { n: dto.n, mode, field, target, instances })
    }
}

/// Recomputes the certificate's combination and compares it with `target`:
/// exactly over ℚ, coefficientwise mod `p` over GF(p).
pub fn verify_certificate(cert: &Certificate, target: &HIdentity) -> bool {
    if cert.mode != target.mode() || !cert.target.same_statement(target) {
        return false;
    }
    let Ok(sum) = cert.combination() else {
        return false;
    };
    match cert.field {
        FieldTag::Rationals => sum.same_statement(target),
        FieldTag::Prime(p) => {
            let Ok(lhs) = sum.lhs().sub(target.lhs()) else {
                return false;
            };
            let rhs = sum.rhs().sub(target.rhs());
            vanishes_mod(&lhs, p) && vanishes_mod(rhs.as_poly(), p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, ratio};

    #[test]
    fn seed_certificate_round_trip() {
        let target = HIdentity::seed(3, Mode::NonCommutative).unwrap();
        let cert = Certificate {
            n: 3,
            mode: Mode::NonCommutative,
            field: FieldTag::Rationals,
            target: target.clone(),
            instances: vec![CertTerm { subst: Substitution::parse([("a", "a")]).unwrap(), coeff: int(1) }],
        };
        assert!(verify_certificate(&cert, &target));
        let json = cert.to_json();
        assert!(json.contains("\"coeff\": \"1/1\""));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        let mut bad = cert.clone();
        bad.instances[0].coeff = int(2);
        assert!(!verify_certificate(&bad, &target));
    }

    #[test]
    fn empty_certificate_for_trivial_target() {
        let zero = HIdentity::parse("h(0) = 0", Mode::NonCommutative).unwrap();
        let cert = Certificate {
            n: 3,
            mode: Mode::NonCommutative,
            field: FieldTag::Rationals,
            target: zero.clone(),
            instances: vec![],
        };
        assert!(verify_certificate(&cert, &zero));
    }

    #[test]
    fn modular_reduction() {
        let c = ratio(1, 3);
        assert_eq!(reduce_scalar(&c, 5), Some(2));
        assert_eq!(reduce_scalar(&c, 3), None);
        assert_eq!(reduce_scalar(&ratio(-1, 2), 7), Some(3));
        assert!("GF(4)".parse::<FieldTag>().is_err());
        assert_eq!("GF(7)".parse::<FieldTag>().unwrap(), FieldTag::Prime(7));
    }

    #[test]
    fn rejects_foreign_substitution_keys() {
        let text = r#"{"n":2,"mode":"nc","field":"Q","target":"h(x^2) = H(x)^2",
            "instances":[{"subst":{"x":"x"},"coeff":"1/1"}]}"#;
        assert!(matches!(Certificate::from_json(text), Err(CertificateError::SubstKey(_))));
        assert!(Certificate::from_json("{\"n\": 3").is_err());
    }
}
