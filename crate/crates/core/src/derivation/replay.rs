use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::script::{DerivationScript, Step};
use super::DerivationError;
use crate::freealg::format_scalar;
use crate::identities::HIdentity;

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub op: String,
    pub identity: String,
    pub denominators: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionRecord {
    pub label: String,
    pub step: usize,
    pub passed: bool,
    pub expected: String,
    pub got: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
    /// A printed form was supplied and the derived value differs from it.
    pub printed_mismatch: bool,
    /// Whether the stated form (printed if given, else expected) is what
    /// the step's operation produces from the stated forms of its inputs.
    pub follows_from_stated_inputs: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_difference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub script: String,
    pub passed: bool,
    pub final_identity: String,
    pub denominators: Vec<u64>,
    pub steps: Vec<StepRecord>,
    pub assertions: Vec<AssertionRecord>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Trace {
    pub fn assertion(&self, label: &str) -> Option<&AssertionRecord> {
        self.assertions.iter().find(|a| a.label == label)
    }

    pub fn failed(&self) -> impl Iterator<Item = &AssertionRecord> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn printed_mismatches(&self) -> impl Iterator<Item = &AssertionRecord> {
        self.assertions.iter().filter(|a| a.printed_mismatch)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

fn apply(step: &Step, values: &[HIdentity]) -> Result<HIdentity, DerivationError> {
    Ok(match step {
        Step::Seed { n, mode } => HIdentity::seed(*n, *mode)?,
        Step::Substitute { from, subst } => values[from.0].substitute(subst),
        Step::Combine { terms } => {
            let pairs: Vec<_> = terms.iter().map(|(c, r)| (c.clone(), &values[r.0])).collect();
            HIdentity::combine(&pairs)?
        }
        Step::AssertEquals { step, .. } => values[step.0].clone(),
    })
}

fn describe(step: &Step) -> String {
    match step {
        Step::Seed { n, mode } => format!("seed n={n} mode={}", mode.tag()),
        Step::Substitute { from, subst } => format!("substitute #{} {subst}", from.0),
        Step::Combine { terms } => {
            let parts: Vec<String> = terms.iter().map(|(c, r)| format!("({})*#{}", format_scalar(c), r.0)).collect();
            format!("combine {}", parts.join(" + "))
        }
        Step::AssertEquals { step, label, .. } => format!("assert {label} on #{}", step.0),
    }
}

/// Executes every step. Failed assertions do not stop the replay; they are
/// recorded and mark the trace failed.
pub fn replay(script: &DerivationScript) -> Result<Trace, DerivationError> {
    let start = Instant::now();
    script.validate()?;
    let mut values: Vec<HIdentity> = Vec::with_capacity(script.steps.len());
    // the chain as the source states it: asserted steps take their stated
    // form, other steps are recomputed from stated inputs
    let mut stated: Vec<HIdentity> = Vec::with_capacity(script.steps.len());
    let mut records = Vec::new();
    let mut assertions = Vec::new();
    let mut denominators = BTreeSet::new();

    let mut stated_override: Vec<Option<HIdentity>> = vec![None; script.steps.len()];
    for step in &script.steps {
        if let Step::AssertEquals { step: r, expected, printed, .. } = step {
            if stated_override[r.0].is_none() {
                stated_override[r.0] = Some(printed.clone().unwrap_or_else(|| expected.clone()));
            }
        }
    }
    let mut recomputed: Vec<HIdentity> = Vec::with_capacity(script.steps.len());

    for (i, step) in script.steps.iter().enumerate() {
        let value = apply(step, &values)?;
        let from_stated = apply(step, &stated)?;
        denominators.extend(value.denominators().iter().copied());
        records.push(StepRecord {
            index: i,
            op: describe(step),
            identity: value.to_string(),
            denominators: value.denominators().iter().copied().collect(),
        });
        if let Step::AssertEquals { step: r, expected, label, printed, note } = step {
            let got = &values[r.0];
            let stated_form = printed.as_ref().unwrap_or(expected);
            let chain = recomputed[r.0].first_difference(stated_form);
            assertions.push(AssertionRecord {
                label: label.clone(),
                step: r.0,
                passed: got.same_statement(expected),
                expected: expected.to_string(),
                got: got.to_string(),
                first_difference: got.first_difference(expected),
                printed: printed.as_ref().map(ToString::to_string),
                printed_mismatch: printed.as_ref().is_some_and(|p| !got.same_statement(p)),
                follows_from_stated_inputs: chain.is_none(),
                chain_difference: chain,
                note: note.clone(),
            });
        }
        stated.push(stated_override[i].clone().unwrap_or_else(|| from_stated.clone()));
        recomputed.push(from_stated);
        values.push(value);
    }

    let last = values.last().expect("validated non-empty");
    Ok(Trace {
        script: script.name.clone(),
        passed: assertions.iter().all(|a| a.passed),
        final_identity: last.to_string(),
        denominators: denominators.into_iter().collect(),
        steps: records,
        assertions,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::ScriptBuilder;
    use crate::freealg::{ratio, Mode};

    #[test]
    fn failures_are_recorded_not_fatal() {
        let mut b = ScriptBuilder::new("t", Mode::Commutative);
        let s = b.seed(2);
        let sxy = b.substitute(s, &[("a", "x+y")]).unwrap();
        let sx = b.substitute(s, &[("a", "x")]).unwrap();
        let sy = b.substitute(s, &[("a", "y")]).unwrap();
        let pol = b.combine(&[(ratio(1, 2), sxy), (ratio(-1, 2), sx), (ratio(-1, 2), sy)]);
        b.assert_eq(pol, "wrong", "h(2*x*y) = H(x)*H(y)").unwrap();
        b.assert_with(pol, "right", "h(x*y) = H(x)*H(y)", Some("h(x*y) = 2*H(x)*H(y)"), None).unwrap();
        let t = replay(&b.build().unwrap()).unwrap();
        assert!(!t.passed);
        let wrong = t.assertion("wrong").unwrap();
        assert!(!wrong.passed);
        assert_eq!(wrong.first_difference.as_deref(), Some("lhs term x*y: expected 2, got 1"));
        let right = t.assertion("right").unwrap();
        assert!(right.passed && right.printed_mismatch);
        assert_eq!(t.denominators, vec![2]);
    }
}
