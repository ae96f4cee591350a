//! Groupoid actions on finite categories, regular parts and semidirect products.

mod semidirect;

pub use semidirect::{semidirect, semidirect_equals_regular, SemidirectCategory};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::catcore::{validate_groupoid, CatError, FiniteCategory, FiniteGroupoid};
use crate::report::{Rule, ValidationReport};

#[derive(Debug, Clone, Error)]
pub enum ActionError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("phi is not defined on object `{0}`")]
    PhiMissing(String),
    #[error("alpha lists ({0}, {1}) twice")]
    DuplicateAlpha(String, String),
    #[error("action is not regular: `{0}` crosses anchor fibres")]
    NotRegular(String),
    #[error("`{0}` is not an orbit class of the acting groupoid")]
    UnknownClass(String),
    #[error("action failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("construction failed validation:\n{0}")]
    Construction(ValidationReport),
}

/// A left action `(φ, α)` of a finite groupoid `G` on a finite category `H`.
///
/// `alpha_mor[(g, h)]` is `α_g(h)`; `alpha_obj[(g, u)]` is `α_g(u)` on objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub g: FiniteGroupoid,
    pub h: FiniteCategory,
    pub phi: Vec<usize>,
    pub alpha_mor: BTreeMap<(usize, usize), usize>,
    pub alpha_obj: BTreeMap<(usize, usize), usize>,
}

/// Name-level description of an action, as read from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionTables {
    pub phi: Vec<(String, String)>,
    pub alpha: Vec<(String, String, String)>,
    pub alpha_obj: Vec<(String, String, String)>,
}

impl ActionSpec {
    pub fn from_tables(g: FiniteGroupoid, h: FiniteCategory, t: &ActionTables) -> Result<Self, ActionError> {
        let mut phi = vec![usize::MAX; h.object_count()];
        for (u, x) in &t.phi {
            phi[h.obj(u)?] = g.obj(x)?;
        }
        if let Some(u) = phi.iter().position(|&x| x == usize::MAX) {
            return Err(ActionError::PhiMissing(h.object_name(u).to_string()));
        }
        let mut alpha_mor = BTreeMap::new();
        for (gm, hm, out) in &t.alpha {
            if alpha_mor.insert((g.mor(gm)?, h.mor(hm)?), h.mor(out)?).is_some() {
                return Err(ActionError::DuplicateAlpha(gm.clone(), hm.clone()));
            }
        }
        let mut alpha_obj = BTreeMap::new();
        for (gm, u, out) in &t.alpha_obj {
            if alpha_obj.insert((g.mor(gm)?, h.obj(u)?), h.obj(out)?).is_some() {
                return Err(ActionError::DuplicateAlpha(gm.clone(), u.clone()));
            }
        }
        Ok(ActionSpec {
            g,
            h,
            phi,
            alpha_mor,
            alpha_obj,
        })
    }

    /// The one-unit groupoid `{e}` acting trivially on `h`.
    pub fn trivial(h: FiniteCategory) -> Self {
        let g = FiniteGroupoid::from_category(
            crate::catcore::CategoryBuilder::new().object("e").morphism("e", "e", "e").identity("e", "e").compose("e", "e", "e").build().expect("one-unit category"),
        )
        .expect("one-unit groupoid");
        ActionSpec {
            phi: vec![0; h.object_count()],
            alpha_mor: h.morphisms().map(|m| ((0, m), m)).collect(),
            alpha_obj: h.objects().map(|u| ((0, u), u)).collect(),
            g,
            h,
        }
    }

    pub fn tables(&self) -> ActionTables {
        let (g, h) = (&self.g, &self.h);
        ActionTables {
            phi: h.objects().map(|u| (h.object_name(u).to_string(), g.object_name(self.phi[u]).to_string())).collect(),
            alpha: self
                .alpha_mor
                .iter()
                .map(|(&(a, m), &out)| (g.morphism_name(a).into(), h.morphism_name(m).into(), h.morphism_name(out).into()))
                .collect(),
            alpha_obj: self
                .alpha_obj
                .iter()
                .map(|(&(a, u), &out)| (g.morphism_name(a).into(), h.object_name(u).into(), h.object_name(out).into()))
                .collect(),
        }
    }

    /// Rebuilds the spec over a category carrying (a subset of) the same names.
    pub fn with_parts(&self, g: FiniteGroupoid, h: FiniteCategory) -> Result<Self, ActionError> {
        let mut t = self.tables();
        t.phi.retain(|(u, _)| h.obj(u).is_ok());
        t.alpha.retain(|(a, m, out)| g.mor(a).is_ok() && h.mor(m).is_ok() && h.mor(out).is_ok());
        t.alpha_obj.retain(|(a, u, out)| g.mor(a).is_ok() && h.obj(u).is_ok() && h.obj(out).is_ok());
        ActionSpec::from_tables(g, h, &t)
    }

    pub fn alpha(&self, g: usize, h: usize) -> Option<usize> {
        self.alpha_mor.get(&(g, h)).copied()
    }

    pub fn alpha_on_object(&self, g: usize, u: usize) -> Option<usize> {
        self.alpha_obj.get(&(g, u)).copied()
    }

    /// Whether `(g, h)` lies in `G ×^φ H`.
    pub fn in_domain(&self, g: usize, h: usize) -> bool {
        let x = self.g.src(g);
        self.phi[self.h.src(h)] == x && self.phi[self.h.tgt(h)] == x
    }

    pub fn is_regular_morphism(&self, h: usize) -> bool {
        self.phi[self.h.src(h)] == self.phi[self.h.tgt(h)]
    }

    pub fn is_regular(&self) -> bool {
        self.h.morphisms().all(|h| self.is_regular_morphism(h))
    }

    /// `H^g`, the morphisms `α_g` acts on; equals the fibre of the unit at `𝐬(g)`.
    pub fn fiber(&self, g: usize) -> Vec<usize> {
        self.h.morphisms().filter(|&h| self.in_domain(g, h)).collect()
    }

    /// Objects over `x ∈ G⁽⁰⁾`.
    pub fn fiber_objects(&self, x: usize) -> Vec<usize> {
        self.h.objects().filter(|&u| self.phi[u] == x).collect()
    }

    /// The unit of `G` at `φ(u)`, as a morphism.
    pub fn anchor_unit(&self, u: usize) -> usize {
        self.g.identity(self.phi[u])
    }

    /// `H_r`, the morphisms whose endpoints share an anchor; all objects are kept.
    pub fn regular_part(&self) -> FiniteCategory {
        let keep: Vec<usize> = self.h.morphisms().filter(|&h| self.is_regular_morphism(h)).collect();
        let all: Vec<usize> = self.h.objects().collect();
        self.h.restrict(&keep, &all).expect("regular part is a subcategory")
    }

    /// The same action restricted to `H_r`.
    pub fn regular_spec(&self) -> ActionSpec {
        self.with_parts(self.g.clone(), self.regular_part()).expect("restriction keeps all referenced names")
    }

    /// Morphism and object names of `G` and `H` for a witness tuple.
    pub fn gname(&self, g: usize) -> &str {
        self.g.morphism_name(g)
    }

    pub fn hname(&self, h: usize) -> &str {
        self.h.morphism_name(h)
    }

    /// Restriction to one orbit class `ξ` of `G`: the transitive subgroupoid `G|ξ`
    /// acting on `H_ξ = {h : φ(𝐬(h)) ∈ ξ}`. Requires a regular action.
    pub fn restrict_to_class(&self, class: &[usize]) -> Result<ActionSpec, ActionError> {
        if let Some(h) = self.h.morphisms().find(|&h| !self.is_regular_morphism(h)) {
            return Err(ActionError::NotRegular(self.hname(h).to_string()));
        }
        let orbits = self.g.orbit_relation();
        let mut sorted = class.to_vec();
        sorted.sort_unstable();
        if !orbits.classes.contains(&sorted) {
            let names: Vec<&str> = class.iter().map(|&x| self.g.object_name(x)).collect();
            return Err(ActionError::UnknownClass(names.join(",")));
        }
        let in_class = |x: usize| sorted.binary_search(&x).is_ok();
        let gk: Vec<usize> = self.g.morphisms().filter(|&m| in_class(self.g.src(m))).collect();
        let gcat = self.g.restrict(&gk, &sorted)?;
        let inverses: Vec<(String, String)> =
            gk.iter().map(|&m| (self.gname(m).to_string(), self.gname(self.g.inv(m)).to_string())).collect();
        let g = FiniteGroupoid::with_inverses(gcat, inverses.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
        let hk: Vec<usize> = self.h.morphisms().filter(|&h| in_class(self.phi[self.h.src(h)])).collect();
        let ho: Vec<usize> = self.h.objects().filter(|&u| in_class(self.phi[u])).collect();
        let h = self.h.restrict(&hk, &ho)?;
        let sub = self.with_parts(g, h)?;
        let r = validate_action(&sub);
        if !r.is_valid() {
            return Err(ActionError::Invalid(r));
        }
        Ok(sub)
    }

    /// `α_{g⁻¹}∘α_g = id` on `H^g` (and on objects over `𝐬(g)`), for every `g`.
    pub fn alpha_inverse_laws(&self) -> bool {
        self.g.morphisms().all(|g| {
            let gi = self.g.inv(g);
            self.fiber(g).into_iter().all(|h| self.alpha(g, h).and_then(|k| self.alpha(gi, k)) == Some(h))
                && self
                    .fiber_objects(self.g.src(g))
                    .into_iter()
                    .all(|u| self.alpha_on_object(g, u).and_then(|v| self.alpha_on_object(gi, v)) == Some(u))
        })
    }
}

/// Exhaustive check of the action axioms, the domain of `α`, and surjectivity of `φ`.
pub fn validate_action(spec: &ActionSpec) -> ValidationReport {
    let mut r = ValidationReport::new("action");
    let (g, h) = (&spec.g, &spec.h);
    let gr = validate_groupoid(g);
    let hr = h.validate();
    r.absorb_as(Rule::GroupoidInvalid, &gr);
    r.absorb_as(Rule::CategoryInvalid, &hr);
    if !r.is_valid() {
        return r;
    }

    for x in g.objects() {
        r.check(spec.phi.contains(&x), Rule::PhiSurjective, [g.object_name(x)], || {
            format!("no object of H is anchored at {}", g.object_name(x))
        });
    }

    // domain of α, on morphisms and objects
    for a in g.morphisms() {
        for m in h.morphisms() {
            let defined = spec.alpha(a, m).is_some();
            match (spec.in_domain(a, m), defined) {
                (true, false) => r.push(Rule::AlphaDomain, [spec.gname(a), spec.hname(m)], "alpha undefined on G x^phi H"),
                (false, true) => r.push(Rule::AlphaExtraneous, [spec.gname(a), spec.hname(m)], "alpha defined outside G x^phi H"),
                _ => {}
            }
        }
        for u in h.objects() {
            let defined = spec.alpha_on_object(a, u).is_some();
            match (g.src(a) == spec.phi[u], defined) {
                (true, false) => r.push(Rule::AlphaDomain, [spec.gname(a), h.object_name(u)], "alpha undefined on an object over s(g)"),
                (false, true) => r.push(Rule::AlphaExtraneous, [spec.gname(a), h.object_name(u)], "alpha defined on an object outside s(g)"),
                _ => {}
            }
        }
    }

    let oname = |u: Option<usize>| u.map_or("undefined".to_string(), |u| h.object_name(u).to_string());
    let mname = |m: Option<usize>| m.map_or("undefined".to_string(), |m| h.morphism_name(m).to_string());

    for (&(a, u), &v) in &spec.alpha_obj {
        // (III)
        r.check(spec.phi[v] == g.tgt(a), Rule::AxiomIII, [spec.gname(a), h.object_name(u)], || {
            format!("phi(alpha(u)) = {} but t(g) = {}", g.object_name(spec.phi[v]), g.object_name(g.tgt(a)))
        });
        // identities go to identities
        if let Some(img) = spec.alpha(a, h.identity(u)) {
            r.check(img == h.identity(v), Rule::AlphaIdentity, [spec.gname(a), h.morphism_name(h.identity(u))], || {
                format!("image {} is not the identity of {}", h.morphism_name(img), h.object_name(v))
            });
        }
        // (IV) on objects
        if g.is_identity(a) {
            r.check(u == v, Rule::AxiomIV, [spec.gname(a), h.object_name(u)], || {
                format!("unit moves {} to {}", h.object_name(u), h.object_name(v))
            });
        }
        // (V) on objects
        for b in g.morphisms().filter(|&b| g.composable(b, a)) {
            let ba = g.compose(b, a).expect("groupoid composable");
            let lhs = spec.alpha_on_object(b, v);
            let rhs = spec.alpha_on_object(ba, u);
            r.check(lhs == rhs, Rule::AxiomV, [spec.gname(b), spec.gname(a), h.object_name(u)], || {
                format!("alpha_g'(alpha_g(u)) = {} but alpha_g'g(u) = {}", oname(lhs), oname(rhs))
            });
        }
    }

    for (&(a, m), &img) in &spec.alpha_mor {
        let w = [spec.gname(a), spec.hname(m)];
        // (I), (II)
        let s_img = spec.alpha_on_object(a, h.src(m));
        r.check(s_img == Some(h.src(img)), Rule::AxiomI, w, || {
            format!("alpha(s(h)) = {} but s(alpha(h)) = {}", oname(s_img), h.object_name(h.src(img)))
        });
        let t_img = spec.alpha_on_object(a, h.tgt(m));
        r.check(t_img == Some(h.tgt(img)), Rule::AxiomII, w, || {
            format!("alpha(t(h)) = {} but t(alpha(h)) = {}", oname(t_img), h.object_name(h.tgt(img)))
        });
        // (IV)
        if g.identity(spec.phi[h.tgt(m)]) == a {
            r.check(img == m, Rule::AxiomIV, w, || format!("unit sends {} to {}", spec.hname(m), spec.hname(img)));
        }
        // (V)
        for b in g.morphisms().filter(|&b| g.composable(b, a)) {
            let ba = g.compose(b, a).expect("groupoid composable");
            let lhs = spec.alpha(b, img);
            let rhs = spec.alpha(ba, m);
            r.check(lhs == rhs, Rule::AxiomV, [spec.gname(b), spec.gname(a), spec.hname(m)], || {
                format!("alpha_g'(alpha_g(h)) = {} but alpha_g'g(h) = {}", mname(lhs), mname(rhs))
            });
        }
        // (VI)
        for m2 in h.morphisms() {
            let Some(prod) = h.compose(m2, m) else { continue };
            let (Some(i2), Some(ip)) = (spec.alpha(a, m2), spec.alpha(a, prod)) else { continue };
            let rhs = h.compose(i2, img);
            r.check(rhs == Some(ip), Rule::AxiomVI, [spec.gname(a), spec.hname(m2), spec.hname(m)], || {
                format!("alpha(h'h) = {} but alpha(h')alpha(h) = {}", spec.hname(ip), mname(rhs))
            });
        }
    }
    r
}

#[cfg(test)]
mod tests;
