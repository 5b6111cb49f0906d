//! Formal statements `h(L) = R` about an additive map `h`.
//!
//! `L` is a polynomial in the domain, read as `Σ cᵢ·h(wordᵢ)` by additivity
//! of `h`; `R` is a commutative polynomial in the symbols `H(v) = h(v)`. New
//! statements come from integer-linear substitution and rational linear
//! combination only, which is sound for any additive `h` into a commutative
//! ring. Every rational coefficient used along the way contributes the primes
//! of its denominator to [`HIdentity::denominators`]: the statement is only
//! claimed for codomains where those primes are invertible.

mod eval;

pub use eval::{evaluate, evaluate_sampled, EvalError, Evaluation};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::freealg::{
    format_scalar, parse_identity_text, AlgebraError, CommPoly, FreePoly, Mode, ParseError, Scalar, Substitution,
    Variable, Word,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("seed exponent must be at least 2, got {0}")]
    SeedExponent(u32),
    #[error("cannot combine an empty list of identities")]
    EmptyCombination,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HIdentity {
    lhs: FreePoly,
    rhs: CommPoly,
    denominators: BTreeSet<u64>,
}

impl HIdentity {
    /// A bare statement; tracked primes are those of its own coefficients.
    pub fn new(lhs: FreePoly, rhs: CommPoly) -> Self {
        let mut denominators = BTreeSet::new();
        for (_, c) in lhs.terms().chain(rhs.as_poly().terms()) {
            denominators.extend(prime_factors(c.denom()));
        }
        HIdentity { lhs, rhs, denominators }
    }

    /// `h(aⁿ) = H(a)ⁿ`.
    pub fn seed(n: u32, mode: Mode) -> Result<Self, IdentityError> {
        Self::seed_in(n, mode, Variable::A)
    }

    /// `h(vⁿ) = H(v)ⁿ` for a chosen variable.
    pub fn seed_in(n: u32, mode: Mode, v: Variable) -> Result<Self, IdentityError> {
        if n < 2 {
            return Err(IdentityError::SeedExponent(n));
        }
        let word = Word::new(vec![v; n as usize], mode);
        Ok(HIdentity {
            lhs: FreePoly::monomial(word, Scalar::one(), mode),
            rhs: CommPoly::h(v).pow(n),
            denominators: BTreeSet::new(),
        })
    }

    /// Parses `h(<expr>) = <expr in H(v)>`.
    pub fn parse(text: &str, mode: Mode) -> Result<Self, IdentityError> {
        let (lhs, rhs) = parse_identity_text(text, mode)?;
        Ok(Self::new(lhs, rhs))
    }

    pub fn lhs(&self) -> &FreePoly {
        &self.lhs
    }

    pub fn rhs(&self) -> &CommPoly {
        &self.rhs
    }

    pub fn mode(&self) -> Mode {
        self.lhs.mode()
    }

    pub fn denominators(&self) -> &BTreeSet<u64> {
        &self.denominators
    }

    pub fn with_denominators(mut self, primes: impl IntoIterator<Item = u64>) -> Self {
        self.denominators.extend(primes);
        self
    }

    /// Applies `σ` to both sides; on the right `H(v)` becomes the matching
    /// combination of `H` symbols.
    pub fn substitute(&self, subst: &Substitution) -> HIdentity {
        HIdentity {
            lhs: self.lhs.substitute_linear(subst),
            rhs: self.rhs.substitute_linear(subst),
            denominators: self.denominators.clone(),
        }
    }

    /// `Σ cᵢ·idᵢ`. Denominator primes of every `cᵢ` are added to the result.
    pub fn combine(terms: &[(Scalar, &HIdentity)]) -> Result<HIdentity, IdentityError> {
        let (_, first) = terms.first().ok_or(IdentityError::EmptyCombination)?;
        let mode = first.mode();
        let mut lhs = FreePoly::zero(mode);
        let mut rhs = CommPoly::zero();
        let mut denominators = BTreeSet::new();
        for (c, id) in terms {
            lhs = lhs.add(&id.lhs.scalar_mul(c))?;
            rhs = rhs.add(&id.rhs.scalar_mul(c));
            denominators.extend(id.denominators.iter().copied());
            denominators.extend(prime_factors(c.denom()));
        }
        Ok(HIdentity { lhs, rhs, denominators })
    }

    pub fn scale(&self, c: &Scalar) -> HIdentity {
        HIdentity::combine(&[(c.clone(), self)]).expect("non-empty")
    }

    /// `0 = 0`.
    pub fn is_trivial(&self) -> bool {
        self.lhs.is_zero() && self.rhs.is_zero()
    }

    /// Same lhs and rhs; tracked denominators are not compared.
    pub fn same_statement(&self, other: &HIdentity) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }

    /// Every lhs word has length `n` and every rhs monomial degree `n`.
    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.lhs.is_homogeneous(n) && self.rhs.as_poly().is_homogeneous(n)
    }

    /// Describes the first term (lhs first, graded-lex order) where `self`
    /// and `expected` disagree.
    pub fn first_difference(&self, expected: &HIdentity) -> Option<String> {
        if let Some(d) = first_poly_difference(&self.lhs, &expected.lhs, &|v| v.name()) {
            return Some(format!("lhs {d}"));
        }
        first_poly_difference(self.rhs.as_poly(), expected.rhs.as_poly(), &|v| format!("H({})", v.name()))
            .map(|d| format!("rhs {d}"))
    }
}

fn first_poly_difference(got: &FreePoly, expected: &FreePoly, atom: &dyn Fn(Variable) -> String) -> Option<String> {
    let mut words: BTreeSet<&Word> = got.terms().map(|(w, _)| w).collect();
    words.extend(expected.terms().map(|(w, _)| w));
    words.into_iter().find_map(|w| {
        let (g, e) = (got.coefficient(w), expected.coefficient(w));
        (g != e).then(|| format!("term {}: expected {}, got {}", w.render(atom), format_scalar(&e), format_scalar(&g)))
    })
}

impl fmt::Display for HIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({}) = {}", self.lhs, self.rhs)
    }
}

/// Prime divisors of `n`, by trial division. A cofactor left after trial
/// division up to 10⁶ is recorded whole (it may be composite), which only
/// over-approximates the set of primes that need to be invertible.
pub fn prime_factors(n: &BigInt) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut rest: BigUint = n.magnitude().clone();
    if rest.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    while !rest.is_one() && d <= 1_000_000 {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            break;
        }
        if (&rest % &bd).is_zero() {
            out.insert(d);
            while (&rest % &bd).is_zero() {
                rest /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        out.insert(rest.to_u64().unwrap_or(u64::MAX));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, parse_expr, parse_h_expr, ratio};

    const NC: Mode = Mode::NonCommutative;
    const C: Mode = Mode::Commutative;

    fn sub(pairs: &[(&str, &str)]) -> Substitution {
        Substitution::parse(pairs.iter().copied()).unwrap()
    }

    fn id(text: &str, mode: Mode) -> HIdentity {
        HIdentity::parse(text, mode).unwrap()
    }

    #[test]
    fn seeds() {
        assert_eq!(HIdentity::seed(3, NC).unwrap().to_string(), "h(a^3) = H(a)^3");
        assert_eq!(HIdentity::seed(2, NC).unwrap().to_string(), "h(a^2) = H(a)^2");
        assert_eq!(HIdentity::seed(4, C).unwrap().to_string(), "h(a^4) = H(a)^4");
        assert_eq!(HIdentity::seed(1, NC), Err(IdentityError::SeedExponent(1)));
        assert!(HIdentity::seed(3, NC).unwrap().denominators().is_empty());
    }

    #[test]
    fn commutative_cube_polarizes_with_a_third() {
        let s = HIdentity::seed(3, C).unwrap();
        let sxy = s.substitute(&sub(&[("a", "x+y")]));
        let sx = s.substitute(&sub(&[("a", "x")]));
        let sy = s.substitute(&sub(&[("a", "y")]));
        let third = ratio(1, 3);
        let eq1 = HIdentity::combine(&[(third.clone(), &sxy), (-third.clone(), &sx), (-third, &sy)]).unwrap();
        assert!(eq1.same_statement(&id("h(x^2*y + x*y^2) = H(x)^2*H(y) + H(x)*H(y)^2", C)));
        assert_eq!(eq1.denominators().iter().copied().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn noncommutative_cube_and_sign_flip() {
        let s = HIdentity::seed(3, NC).unwrap();
        let sxy = s.substitute(&sub(&[("a", "x+y")]));
        let sx = s.substitute(&sub(&[("a", "x")]));
        let sy = s.substitute(&sub(&[("a", "y")]));
        let eq7 = HIdentity::combine(&[(int(1), &sxy), (int(-1), &sx), (int(-1), &sy)]).unwrap();
        let printed7 = id("h(x*y*x + y*x^2 + y^2*x + x^2*y + x*y^2 + y*x*y) = 3*(H(x)^2*H(y) + H(x)*H(y)^2)", NC);
        assert!(eq7.same_statement(&printed7));
        let eq8 = eq7.substitute(&sub(&[("y", "-y")]));
        let printed8 = id("h(-x*y*x - y*x^2 + y^2*x - x^2*y + x*y^2 + y*x*y) = 3*(-H(x)^2*H(y) + H(x)*H(y)^2)", NC);
        assert!(eq8.same_statement(&printed8));
        let half = ratio(1, 2);
        let eq9 = HIdentity::combine(&[(half.clone(), &eq7), (half, &eq8)]).unwrap();
        assert!(eq9.same_statement(&id("h(x*y^2 + y^2*x + y*x*y) = 3*H(x)*H(y)^2", NC)));
        assert!(eq9.denominators().contains(&2));
    }

    #[test]
    fn self_cancellation_is_trivial() {
        let e = id("h(x*y - y*x) = 0", NC);
        let z = HIdentity::combine(&[(int(1), &e), (int(-1), &e)]).unwrap();
        assert!(z.is_trivial());
        assert_eq!(HIdentity::combine(&[]), Err(IdentityError::EmptyCombination));
    }

    #[test]
    fn mixed_modes_do_not_combine() {
        let a = HIdentity::seed(2, C).unwrap();
        let b = HIdentity::seed(2, NC).unwrap();
        assert!(matches!(
            HIdentity::combine(&[(int(1), &a), (int(1), &b)]),
            Err(IdentityError::Algebra(AlgebraError::ModeMismatch(..)))
        ));
    }

    #[test]
    fn text_round_trip() {
        let e = id("h(2*x*y - 1/2*y*x) = H(x)*H(y)", NC);
        assert_eq!(e.to_string(), "h(2*x*y - 1/2*y*x) = H(x)*H(y)");
        assert!(e.denominators().contains(&2));
        assert_eq!(HIdentity::parse(&e.to_string(), NC).unwrap(), e);
        assert_eq!(e.lhs(), &parse_expr("2*x*y - 1/2*y*x", NC).unwrap());
        assert_eq!(e.rhs(), &parse_h_expr("H(y)*H(x)").unwrap());
    }

    #[test]
    fn first_difference_reports_a_term() {
        let a = id("h(x*y + y*x) = 2*H(x)*H(y)", NC);
        let b = id("h(2*x*y) = 2*H(x)*H(y)", NC);
        assert_eq!(a.first_difference(&b).unwrap(), "lhs term x*y: expected 2, got 1");
        assert_eq!(a.first_difference(&a), None);
    }

    #[test]
    fn factorization() {
        let f = |n: i64| prime_factors(&BigInt::from(n)).into_iter().collect::<Vec<_>>();
        assert_eq!(f(12), vec![2, 3]);
        assert_eq!(f(1), Vec::<u64>::new());
        assert_eq!(f(-49), vec![7]);
        assert_eq!(f(2 * 1_000_003), vec![2, 1_000_003]);
    }
}
