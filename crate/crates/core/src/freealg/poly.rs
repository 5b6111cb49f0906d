use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_scalar, AlgebraError, Mode, Scalar, Substitution, Variable, Word};

/// A finite linear combination of words with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    mode: Mode,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(mode: Mode) -> Self {
        FreePoly { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: Mode) -> Self {
        Self::monomial(Word::empty(), Scalar::one(), mode)
    }

    pub fn var(v: Variable, mode: Mode) -> Self {
        Self::monomial(Word::new(vec![v], mode), Scalar::one(), mode)
    }

    pub fn monomial(word: Word, coeff: Scalar, mode: Mode) -> Self {
        let mut p = Self::zero(mode);
        p.add_term(word, coeff);
        p
    }

    /// Collects `(word, coefficient)` pairs, normalizing words to `mode`.
    pub fn from_terms<I>(mode: Mode, terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut p = Self::zero(mode);
        for (w, c) in terms {
            let w = if mode == Mode::Commutative { w.sorted() } else { w };
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).collect()
    }

    /// Largest word length, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// True when every stored word has length `n` (vacuously for zero).
    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    fn check_mode(&self, other: &FreePoly) -> Result<(), AlgebraError> {
        if self.mode != other.mode {
            return Err(AlgebraError::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    pub fn add(&self, other: &FreePoly) -> Result<FreePoly, AlgebraError> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreePoly) -> Result<FreePoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly { mode: self.mode, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scalar_mul(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        FreePoly { mode: self.mode, terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    pub fn mul(&self, other: &FreePoly) -> Result<FreePoly, AlgebraError> {
        self.check_mode(other)?;
        let mut out = Self::zero(self.mode);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v, self.mode), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> FreePoly {
        let mut acc = Self::one(self.mode);
        for _ in 0..k {
            acc = acc.mul(self).expect("same mode");
        }
        acc
    }

    /// Replaces each variable by its image under `subst` and expands.
    pub fn substitute_linear(&self, subst: &Substitution) -> FreePoly {
        let mode = self.mode;
        let images: BTreeMap<Variable, FreePoly> =
            self.variables().into_iter().map(|v| (v, subst.image(v).to_poly(mode))).collect();
        let mut out = Self::zero(mode);
        for (w, c) in &self.terms {
            let mut prod = Self::monomial(Word::empty(), c.clone(), mode);
            for v in w.letters() {
                prod = prod.mul(&images[v]).expect("same mode");
                if prod.is_zero() {
                    break;
                }
            }
            for (u, k) in prod.terms {
                out.add_term(u, k);
            }
        }
        out
    }

    /// Image in the commutative quotient.
    pub fn abelianize(&self) -> FreePoly {
        Self::from_terms(Mode::Commutative, self.terms.iter().map(|(w, c)| (w.sorted(), c.clone())))
    }

    /// Reinterprets the words of a polynomial in another mode.
    pub fn with_mode(&self, mode: Mode) -> FreePoly {
        Self::from_terms(mode, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Renders with a custom atom printer.
    pub fn render(&self, atom: &dyn Fn(Variable) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&format_scalar(&mag));
            } else if mag.is_one() {
                out.push_str(&w.render(atom));
            } else {
                out.push_str(&format_scalar(&mag));
                out.push('*');
                out.push_str(&w.render(atom));
            }
        }
        out
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| v.name()))
    }
}

/// Commutative polynomial in the codomain symbols `H(v)`, one per domain
/// variable. Stored as a commutative [`FreePoly`]; a sorted word is an
/// exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPoly(FreePoly);

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly(FreePoly::zero(Mode::Commutative))
    }

    /// The symbol `H(v)`.
    pub fn h(v: Variable) -> Self {
        CommPoly(FreePoly::var(v, Mode::Commutative))
    }

    pub fn from_poly(p: FreePoly) -> Self {
        CommPoly(p.with_mode(Mode::Commutative))
    }

    pub fn as_poly(&self) -> &FreePoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        CommPoly(self.0.add(&other.0).expect("commutative"))
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        CommPoly(self.0.sub(&other.0).expect("commutative"))
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        CommPoly(self.0.mul(&other.0).expect("commutative"))
    }

    pub fn scalar_mul(&self, c: &Scalar) -> CommPoly {
        CommPoly(self.0.scalar_mul(c))
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        CommPoly(self.0.pow(k))
    }

    pub fn substitute_linear(&self, subst: &Substitution) -> CommPoly {
        CommPoly(self.0.substitute_linear(subst))
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.0.variables()
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(&|v| format!("H({})", v.name())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, parse_expr};

    const NC: Mode = Mode::NonCommutative;

    fn p(s: &str) -> FreePoly {
        parse_expr(s, NC).unwrap()
    }

    #[test]
    fn difference_of_squares_does_not_collapse() {
        // four-term distribution, xy and yx survive separately
        let got = p("x+y").mul(&p("x-y")).unwrap();
        assert_eq!(got, p("x*x - x*y + y*x - y*y"));
        assert_eq!(got.len(), 4);
        let c = got.abelianize();
        assert_eq!(c, parse_expr("x^2 - y^2", Mode::Commutative).unwrap());
    }

    #[test]
    fn unit_and_inverse() {
        let q = p("2*x*y - 1/3*z^2*x + 5");
        assert_eq!(q.mul(&FreePoly::one(NC)).unwrap(), q);
        assert!(q.add(&q.scalar_mul(&int(-1))).unwrap().is_zero());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = FreePoly::var(Variable::X, NC);
        let b = FreePoly::var(Variable::X, Mode::Commutative);
        assert!(matches!(a.mul(&b), Err(AlgebraError::ModeMismatch(..))));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(FreePoly::zero(NC).to_string(), "0");
        assert_eq!(FreePoly::one(NC).to_string(), "1");
        assert_eq!(p("-x + 3/2*y*x - 2").to_string(), "-2 - x + 3/2*y*x");
        let h = CommPoly::h(Variable::X).pow(2).mul(&CommPoly::h(Variable::Y));
        assert_eq!(h.to_string(), "H(x)^2*H(y)");
    }

    #[test]
    fn abelianize_examples() {
        let c = Mode::Commutative;
        assert_eq!(p("x*y*x + y*x^2 + x^2*y").abelianize(), parse_expr("3*x^2*y", c).unwrap());
        assert!(p("y*x*z - x*z*y").abelianize().is_zero());
        assert_eq!(
            p("x*y*x + y*x^2 + y^2*x + x^2*y + x*y^2 + y*x*y").abelianize(),
            parse_expr("3*x^2*y + 3*x*y^2", c).unwrap()
        );
    }
}
