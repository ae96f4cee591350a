//! Structured validation reports.
//!
//! Validators never fail fast: every violated condition becomes a
//! [`Violation`] carrying the witnessing tuple.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The condition a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    // categories
    IdentityEndpoints,
    Composability,
    SrcCoherence,
    TgtCoherence,
    Associativity,
    UnitLaw,
    // groupoids
    InverseLaw,
    InverseInvolution,
    // actions
    GroupoidInvalid,
    CategoryInvalid,
    PhiSurjective,
    AlphaDomain,
    AlphaExtraneous,
    AlphaIdentity,
    #[serde(rename = "axiom-i")]
    AxiomI,
    #[serde(rename = "axiom-ii")]
    AxiomII,
    #[serde(rename = "axiom-iii")]
    AxiomIII,
    #[serde(rename = "axiom-iv")]
    AxiomIV,
    #[serde(rename = "axiom-v")]
    AxiomV,
    #[serde(rename = "axiom-vi")]
    AxiomVI,
    // representations
    Dimension,
    PartialIsometry,
    Multiplicativity,
    ProjectionsCommute,
    DisjointRanges,
    Domination,
    OffComposable,
    // quasi actions
    DomainSubalgebra,
    BetaInjective,
    BetaMultiplicative,
    BetaStar,
    RangeIsDomain,
    DomainOfComposite,
    CompositionLaw,
    OffComposableZero,
    DomainAtSource,
    UnitIdentity,
    // covariant representations
    PiStar,
    PiMultiplicative,
    UPartialIsometry,
    UHomomorphism,
    UOffComposable,
    UAdjointInverse,
    CovarianceConjugation,
    CovarianceIntertwining,
    // crossed product realization
    PiFaithful,
    SigmaInjective,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("rule serializes");
        write!(f, "{}", s.as_str().expect("rule is a string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            violations: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push<W: ToString>(&mut self, rule: Rule, witness: impl IntoIterator<Item = W>, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            witness: witness.into_iter().map(|w| w.to_string()).collect(),
            detail: detail.into(),
        });
    }

    /// Records a violation when `ok` is false.
    pub fn check<W: ToString>(&mut self, ok: bool, rule: Rule, witness: impl IntoIterator<Item = W>, detail: impl FnOnce() -> String) {
        if !ok {
            self.push(rule, witness, detail());
        }
    }

    pub fn cites(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn cites_at(&self, rule: Rule, witness: &[&str]) -> bool {
        self.violations
            .iter()
            .any(|v| v.rule == rule && v.witness.iter().map(String::as_str).eq(witness.iter().copied()))
    }

    /// Distinct rules cited, in enum order.
    pub fn rules(&self) -> Vec<Rule> {
        let mut r: Vec<Rule> = self.violations.iter().map(|v| v.rule).collect();
        r.sort();
        r.dedup();
        r
    }

    /// Appends another report's violations, wrapping each under `rule` with the original rule in the detail.
    pub fn absorb_as(&mut self, rule: Rule, other: &ValidationReport) {
        for v in &other.violations {
            self.push(rule, v.witness.iter(), format!("{}: {}", v.rule, v.detail));
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "{}: valid", self.subject);
        }
        writeln!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  [{}] ({}) {}", v.rule, v.witness.join(", "), v.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_names_are_kebab() {
        assert_eq!(Rule::TgtCoherence.to_string(), "tgt-coherence");
        assert_eq!(Rule::AxiomVI.to_string(), "axiom-vi");
    }

    #[test]
    fn cites_with_witness() {
        let mut r = ValidationReport::new("x");
        r.push(Rule::UnitLaw, ["f", "g"], "bad");
        assert!(r.cites(Rule::UnitLaw));
        assert!(r.cites_at(Rule::UnitLaw, &["f", "g"]));
        assert!(!r.cites_at(Rule::UnitLaw, &["g", "f"]));
        assert!(!r.is_valid());
    }
}
