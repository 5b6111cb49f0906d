//! Exact polynomial arithmetic over the free associative algebra and its
//! commutative quotient.
//!
//! A [`FreePoly`] is a finite map from [`Word`]s to exact rationals. In
//! noncommutative mode words are sequences and multiplication concatenates;
//! in commutative mode every word is kept sorted, so it encodes a monomial
//! as a multiset of variables.
//!
//! Terms are ordered graded-lexicographically: shorter words first, then
//! left-to-right comparison of variable ids with `x < y < z < w < t < a < b < c`.

mod parse;
mod poly;
mod subst;

pub(crate) use parse::parse_identity_text;
pub use parse::{parse_expr, parse_h_expr, ParseError};
pub use poly::{CommPoly, FreePoly};
pub use subst::{LinearForm, Substitution, SubstitutionError};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// Builds an integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the scalar `num/den`, reduced.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Formats a scalar as `p/q`, always with an explicit denominator.
pub fn format_ratio(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

const ALPHABET: [&str; 8] = ["x", "y", "z", "w", "t", "a", "b", "c"];

/// An interned variable. Ids `0..8` display as `x y z w t a b c`, higher ids
/// as `v0, v1, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u16);

impl Variable {
    pub const X: Variable = Variable(0);
    pub const Y: Variable = Variable(1);
    pub const Z: Variable = Variable(2);
    pub const W: Variable = Variable(3);
    pub const T: Variable = Variable(4);
    pub const A: Variable = Variable(5);

    pub const fn new(id: u16) -> Self {
        Variable(id)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    pub fn name(self) -> String {
        match ALPHABET.get(self.0 as usize) {
            Some(s) => (*s).to_string(),
            None => format!("v{}", self.0 as usize - ALPHABET.len()),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        if let Some(i) = ALPHABET.iter().position(|s| *s == name) {
            return Some(Variable(i as u16));
        }
        let digits = name.strip_prefix('v')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let k: u16 = digits.parse().ok()?;
        k.checked_add(ALPHABET.len() as u16).map(Variable)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Whether words commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "c")]
    Commutative,
    #[serde(rename = "nc")]
    NonCommutative,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Commutative => "c",
            Mode::NonCommutative => "nc",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "c" => Some(Mode::Commutative),
            "nc" => Some(Mode::NonCommutative),
            _ => None,
        }
    }
}

/// A monomial: a sequence of variables, sorted when commutative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Variable>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, sorting the letters in commutative mode.
    pub fn new(mut letters: Vec<Variable>, mode: Mode) -> Self {
        if mode == Mode::Commutative {
            letters.sort_unstable();
        }
        Word(letters)
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word, mode: Mode) -> Word {
        match mode {
            Mode::NonCommutative => {
                let mut v = Vec::with_capacity(self.len() + other.len());
                v.extend_from_slice(&self.0);
                v.extend_from_slice(&other.0);
                Word(v)
            }
            Mode::Commutative => {
                // both inputs are sorted; merge
                let (a, b) = (&self.0, &other.0);
                let mut v = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    if a[i] <= b[j] {
                        v.push(a[i]);
                        i += 1;
                    } else {
                        v.push(b[j]);
                        j += 1;
                    }
                }
                v.extend_from_slice(&a[i..]);
                v.extend_from_slice(&b[j..]);
                Word(v)
            }
        }
    }

    /// The commutative image of this word.
    pub fn sorted(&self) -> Word {
        Word::new(self.0.clone(), Mode::Commutative)
    }

    /// Writes the word with runs of equal letters collapsed to powers,
    /// e.g. `x^2*y*x`. `atom` renders one variable.
    pub fn render(&self, atom: &dyn Fn(Variable) -> String) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            let run = j - i;
            if run == 1 {
                parts.push(atom(v));
            } else {
                parts.push(format!("{}^{}", atom(v), run));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| v.name()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("mode mismatch: {0:?} vs {1:?}")]
    ModeMismatch(Mode, Mode),
    #[error("substitution image for {var} is not linear: {image}")]
    NonLinear { var: String, image: String },
    #[error("substitution image for {var} has a non-integer coefficient: {image}")]
    NonInteger { var: String, image: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in 0..20u16 {
            let v = Variable::new(id);
            assert_eq!(Variable::from_name(&v.name()), Some(v));
        }
        assert_eq!(Variable::new(8).name(), "v0");
        assert_eq!(Variable::from_name("q"), None);
        assert_eq!(Variable::from_name("v"), None);
    }

    #[test]
    fn graded_lex_order() {
        let nc = Mode::NonCommutative;
        let xy = Word::new(vec![Variable::X, Variable::Y], nc);
        let yx = Word::new(vec![Variable::Y, Variable::X], nc);
        let z = Word::new(vec![Variable::Z], nc);
        assert!(z < xy);
        assert!(xy < yx);
        assert!(Word::empty() < z);
    }

    #[test]
    fn commutative_concat_merges_sorted() {
        let c = Mode::Commutative;
        let a = Word::new(vec![Variable::Z, Variable::X], c);
        let b = Word::new(vec![Variable::Y], c);
        assert_eq!(a.concat(&b, c).letters(), &[Variable::X, Variable::Y, Variable::Z]);
    }

    #[test]
    fn render_powers() {
        let w = Word::new(vec![Variable::X, Variable::X, Variable::Y, Variable::X], Mode::NonCommutative);
        assert_eq!(w.to_string(), "x^2*y*x");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn scalar_text() {
        assert_eq!(parse_scalar("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(format_ratio(&int(2)), "2/1");
        assert_eq!(format_scalar(&ratio(3, 4)), "3/4");
        assert_eq!(parse_scalar("1/0"), None);
    }
}
