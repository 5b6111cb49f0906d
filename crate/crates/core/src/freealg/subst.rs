use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;

use super::{int, parse_expr, AlgebraError, FreePoly, Mode, ParseError, Variable, Word};

/// An integer combination of variables with no constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearForm(BTreeMap<Variable, i64>);

impl LinearForm {
    pub fn var(v: Variable) -> Self {
        LinearForm::from_pairs([(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, i64)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (v, c) in pairs {
            *m.entry(v).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        LinearForm(m)
    }

    /// Validates that `p` is an integer-linear form.
    pub fn from_poly(var: Variable, p: &FreePoly) -> Result<Self, AlgebraError> {
        let mut pairs = Vec::new();
        for (w, c) in p.terms() {
            if w.len() != 1 {
                return Err(AlgebraError::NonLinear { var: var.name(), image: p.to_string() });
            }
            if !c.is_integer() {
                return Err(AlgebraError::NonInteger { var: var.name(), image: p.to_string() });
            }
            let k = c
                .to_integer()
                .to_i64()
                .ok_or_else(|| AlgebraError::NonInteger { var: var.name(), image: p.to_string() })?;
            pairs.push((w.letters()[0], k));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Variable, i64)> + '_ {
        self.0.iter().map(|(v, c)| (*v, *c))
    }

    pub fn to_poly(&self, mode: Mode) -> FreePoly {
        FreePoly::from_terms(mode, self.0.iter().map(|(v, c)| (Word::new(vec![*v], mode), int(*c))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(Mode::Commutative), f)
    }
}

/// A simultaneous substitution `v -> linear form`; unmapped variables are
/// left unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Substitution(BTreeMap<Variable, LinearForm>);

#[derive(Debug, thiserror::Error)]
pub enum SubstitutionError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn insert(&mut self, v: Variable, image: LinearForm) {
        self.0.insert(v, image);
    }

    pub fn from_map(map: BTreeMap<Variable, LinearForm>) -> Self {
        Substitution(map)
    }

    /// Parses `[("a", "x + y"), ("y", "-y")]`-style pairs, rejecting images
    /// that are not integer-linear.
    pub fn parse<'a, I>(pairs: I) -> Result<Self, SubstitutionError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map = BTreeMap::new();
        for (name, image) in pairs {
            let v =
                Variable::from_name(name.trim()).ok_or_else(|| SubstitutionError::UnknownVariable(name.to_string()))?;
            let poly = parse_expr(image, Mode::Commutative)?;
            map.insert(v, LinearForm::from_poly(v, &poly)?);
        }
        Ok(Substitution(map))
    }

    pub fn image(&self, v: Variable) -> LinearForm {
        self.0.get(&v).cloned().unwrap_or_else(|| LinearForm::var(v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Variable, &LinearForm)> {
        self.0.iter().map(|(v, f)| (*v, f))
    }

    /// `{name: "image"}` map used by the certificate format.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.0.iter().map(|(v, f)| (v.name(), f.to_string())).collect()
    }

    /// Multiplies every coefficient of every image by `k`.
    pub fn scaled(&self, k: i64) -> Substitution {
        Substitution(
            self.0.iter().map(|(v, f)| (*v, LinearForm::from_pairs(f.terms().map(|(u, c)| (u, c * k))))).collect(),
        )
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, img)| format!("{v} -> {img}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
