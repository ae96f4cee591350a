//! Mechanical verification of the disjointness criterion, the main isomorphism
//! and the bundle decomposition on concrete instances, plus a random instance generator.

mod campaign;
mod decomp;
mod disjoint;
mod fuzz;
mod main_thm;

pub use campaign::{run_campaign, verify_regular_part_reduction, CampaignReport, InstanceOutcome, Tally};
pub use decomp::{decompose, verify_decomposition, Block, BlockDecomposition, DecompOptions};
pub use disjoint::verify_disjointness_criterion;
pub use fuzz::{fuzz_groupoids, fuzz_instances, random_groupoid, random_instance, FuzzInstance, SizeCaps};
pub use main_thm::verify_main_theorem;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The supplied concrete model does not support a construction the statement needs.
    Inapplicable,
}

/// One assertion, evaluated over `cases` instances of its quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub assertion: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observables: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: &str, instance: &str) -> Self {
        TheoremReport {
            theorem: theorem.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            observables: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, assertion: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.assertion == assertion)
    }

    /// Records an assertion from a stream of `Err(witness)` failures and `Ok` successes.
    pub fn tally(&mut self, assertion: &str, outcomes: impl IntoIterator<Item = Result<(), Vec<String>>>) -> bool {
        let mut c = CheckResult {
            assertion: assertion.into(),
            pass: true,
            cases: 0,
            failures: 0,
            witness: None,
            detail: None,
        };
        for o in outcomes {
            c.cases += 1;
            if let Err(w) = o {
                c.failures += 1;
                c.witness.get_or_insert(w);
            }
        }
        c.pass = c.failures == 0;
        self.push(c)
    }

    pub fn assert(&mut self, assertion: &str, ok: bool, detail: impl FnOnce() -> String) -> bool {
        let detail = (!ok).then(detail);
        self.push(CheckResult {
            assertion: assertion.into(),
            pass: ok,
            cases: 1,
            failures: usize::from(!ok),
            witness: None,
            detail,
        })
    }

    /// Records a validation report as one assertion; each violation counts as a failure.
    pub fn absorb(&mut self, assertion: &str, r: &ValidationReport) -> bool {
        let first = r.violations.first();
        self.push(CheckResult {
            assertion: assertion.into(),
            pass: r.is_valid(),
            cases: 1,
            failures: r.violations.len(),
            witness: first.map(|v| v.witness.clone()),
            detail: first.map(|v| format!("{}: {}", v.rule, v.detail)),
        })
    }

    fn push(&mut self, c: CheckResult) -> bool {
        let ok = c.pass;
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(c);
        ok
    }

    pub fn inapplicable(&mut self, note: impl Into<String>) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inapplicable;
        }
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn observe(&mut self, key: &str, value: usize) {
        self.observables.insert(key.into(), value);
    }
}

impl std::fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inapplicable => "INAPPLICABLE",
        };
        writeln!(f, "{} [{}]: {v}", self.theorem, self.instance)?;
        for c in &self.checks {
            write!(f, "  {} {} ({} case(s)", if c.pass { "ok  " } else { "FAIL" }, c.assertion, c.cases)?;
            if c.failures > 0 {
                write!(f, ", {} failure(s)", c.failures)?;
            }
            write!(f, ")")?;
            if let Some(w) = &c.witness {
                write!(f, " at ({})", w.join(", "))?;
            }
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.observables {
            writeln!(f, "  {k} = {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
