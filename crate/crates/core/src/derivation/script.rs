use std::collections::BTreeSet;

use super::DerivationError;
use crate::freealg::{Mode, Scalar, Substitution};
use crate::identities::HIdentity;

/// Index of an earlier step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StepRef(pub usize);

#[derive(Clone, Debug)]
pub enum Step {
    Seed {
        n: u32,
        mode: Mode,
    },
    Substitute {
        from: StepRef,
        subst: Substitution,
    },
    Combine {
        terms: Vec<(Scalar, StepRef)>,
    },
    /// Compares the value of `step` with `expected`. `printed`, when given,
    /// is a second form that is reported but not required to match. The
    /// value of this step is the value of `step`.
    AssertEquals {
        step: StepRef,
        expected: HIdentity,
        label: String,
        printed: Option<HIdentity>,
        note: Option<String>,
    },
}

impl Step {
    pub(crate) fn inputs(&self) -> Vec<StepRef> {
        match self {
            Step::Seed { .. } => Vec::new(),
            Step::Substitute { from, .. } => vec![*from],
            Step::Combine { terms } => terms.iter().map(|(_, r)| *r).collect(),
            Step::AssertEquals { step, .. } => vec![*step],
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivationScript {
    pub name: String,
    pub steps: Vec<Step>,
}

impl DerivationScript {
    /// Backward references only, unique labels, at least one step.
    pub fn validate(&self) -> Result<(), DerivationError> {
        if self.steps.is_empty() {
            return Err(DerivationError::EmptyScript);
        }
        let mut labels = BTreeSet::new();
        for (i, step) in self.steps.iter().enumerate() {
            if let Some(r) = step.inputs().into_iter().find(|r| r.0 >= i) {
                return Err(DerivationError::ForwardReference { step: i, target: r.0 });
            }
            if let Step::AssertEquals { label, .. } = step {
                if !labels.insert(label.clone()) {
                    return Err(DerivationError::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Builds scripts with identities given in text form.
#[derive(Clone, Debug)]
pub struct ScriptBuilder {
    name: String,
    mode: Mode,
    steps: Vec<Step>,
}

impl ScriptBuilder {
    pub fn new(name: impl Into<String>, mode: Mode) -> Self {
        ScriptBuilder { name: name.into(), mode, steps: Vec::new() }
    }

    fn push(&mut self, step: Step) -> StepRef {
        self.steps.push(step);
        StepRef(self.steps.len() - 1)
    }

    pub fn seed(&mut self, n: u32) -> StepRef {
        let mode = self.mode;
        self.push(Step::Seed { n, mode })
    }

    /// `pairs` as in [`Substitution::parse`], e.g. `[("y", "-y")]`.
    pub fn substitute(&mut self, from: StepRef, pairs: &[(&str, &str)]) -> Result<StepRef, DerivationError> {
        let subst = Substitution::parse(pairs.iter().copied())?;
        Ok(self.push(Step::Substitute { from, subst }))
    }

    pub fn combine(&mut self, terms: &[(Scalar, StepRef)]) -> StepRef {
        self.push(Step::Combine { terms: terms.to_vec() })
    }

    pub fn assert_eq(&mut self, step: StepRef, label: &str, expected: &str) -> Result<StepRef, DerivationError> {
        self.assert_with(step, label, expected, None, None)
    }

    pub fn assert_with(
        &mut self,
        step: StepRef,
        label: &str,
        expected: &str,
        printed: Option<&str>,
        note: Option<&str>,
    ) -> Result<StepRef, DerivationError> {
        let expected = HIdentity::parse(expected, self.mode)?;
        let printed = printed.map(|p| HIdentity::parse(p, self.mode)).transpose()?;
        Ok(self.push(Step::AssertEquals {
            step,
            expected,
            label: label.to_string(),
            printed,
            note: note.map(str::to_string),
        }))
    }

    pub fn build(self) -> Result<DerivationScript, DerivationError> {
        let script = DerivationScript { name: self.name, steps: self.steps };
        script.validate()?;
        Ok(script)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::int;

    #[test]
    fn rejects_forward_references_and_duplicates() {
        let bad =
            DerivationScript { name: "bad".into(), steps: vec![Step::Combine { terms: vec![(int(1), StepRef(0))] }] };
        assert!(matches!(bad.validate(), Err(DerivationError::ForwardReference { step: 0, target: 0 })));

        let mut b = ScriptBuilder::new("dup", Mode::Commutative);
        let s = b.seed(2);
        b.assert_eq(s, "(1)", "h(a^2) = H(a)^2").unwrap();
        b.assert_eq(s, "(1)", "h(a^2) = H(a)^2").unwrap();
        assert!(matches!(b.build(), Err(DerivationError::DuplicateLabel(_))));

        let empty = ScriptBuilder::new("empty", Mode::Commutative);
        assert!(matches!(empty.build(), Err(DerivationError::EmptyScript)));
    }
}
