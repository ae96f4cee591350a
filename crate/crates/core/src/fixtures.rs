//! The built-in instance corpus, embedded at compile time.
//!
//! - `F1`: pair groupoid on `{a, b}`; `F1-flip`: `Z/2` swapping `a ↔ b`.
//! - `F2`: a single arrow `a → b` anchored over two units (not regular).
//! - `F3`: bundle groupoid with classes `{x, y}` (group `Z/2`) and `{z}`, acting on two F1 copies and a point.
//! - `F4`: two arrows into `x` that share no common multiple.
//! - `N3`: the monoid `{1, a, z}` with `aa = az = z`; not left cancellative.

use crate::action::ActionSpec;
use crate::catcore::{FiniteCategory, FiniteGroupoid, GroupBundle};
use crate::io::{self, Document, Resolver};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../fixtures/", $name)))),*];
    };
}

corpus!(
    "F1.groupoid.json",
    "Z2.groupoid.json",
    "F1-flip.action.json",
    "U2.groupoid.json",
    "F2.category.json",
    "F2.action.json",
    "F3.bundle.json",
    "F3.groupoid.json",
    "F3H.category.json",
    "F3.action.json",
    "F4.category.json",
    "N3.category.json",
    "mutants/cat-tgt-coherence.json",
    "mutants/cat-missing-composite.json",
    "mutants/cat-extra-composite.json",
    "mutants/cat-associativity.json",
    "mutants/cat-unit-law.json",
    "mutants/cat-identity-endpoints.json",
    "mutants/grp-inverse-law.json",
    "mutants/grp-inverse-involution.json",
    "mutants/act-axiom-i.json",
    "mutants/act-axiom-iii.json",
    "mutants/act-axiom-iv.json",
    "mutants/act-axiom-v.json",
    "mutants/act-axiom-vi.json",
    "mutants/act-alpha-domain.json",
    "mutants/act-phi-surjective.json",
);

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// `(name, text)` of every mutated fixture.
pub fn mutants() -> impl Iterator<Item = (&'static str, &'static str)> {
    FILES.iter().copied().filter(|(n, _)| n.starts_with("mutants/"))
}

pub fn document(name: &str) -> Document {
    let t = text(name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    io::parse_document(t, name, &Resolver::builtin()).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn category(name: &str) -> FiniteCategory {
    match document(&format!("{name}.category.json")) {
        Document::Category(c) => c,
        other => panic!("{name} is a {}", other.kind()),
    }
}

pub fn groupoid(name: &str) -> FiniteGroupoid {
    match document(&format!("{name}.groupoid.json")) {
        Document::Groupoid(g) => g,
        other => panic!("{name} is a {}", other.kind()),
    }
}

pub fn action(name: &str) -> ActionSpec {
    match document(&format!("{name}.action.json")) {
        Document::Action(a) => a,
        other => panic!("{name} is a {}", other.kind()),
    }
}

pub fn bundle(name: &str) -> GroupBundle {
    match document(&format!("{name}.bundle.json")) {
        Document::Bundle(b) => b,
        other => panic!("{name} is a {}", other.kind()),
    }
}
