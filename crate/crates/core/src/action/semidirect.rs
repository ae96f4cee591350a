use std::collections::HashMap;

use crate::catcore::{validate_groupoid, CategoryBuilder, FiniteCategory, FiniteGroupoid};

use super::{validate_action, ActionError, ActionSpec};

/// `H ×_α G` with provenance: pair `i` is `(pairs[i].0, pairs[i].1) = (h, g)`.
#[derive(Clone, Debug)]
pub struct SemidirectCategory {
    pub cat: FiniteCategory,
    pub pairs: Vec<(usize, usize)>,
    /// Present when `H` is a groupoid.
    pub groupoid: Option<FiniteGroupoid>,
    index: HashMap<(usize, usize), usize>,
}

impl SemidirectCategory {
    pub fn pair(&self, h: usize, g: usize) -> Option<usize> {
        self.index.get(&(h, g)).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn pair_name(h: &str, g: &str) -> String {
    format!("({h}|{g})")
}

/// Builds the semidirect product category; the spec must pass `validate_action`.
pub fn semidirect(spec: &ActionSpec) -> Result<SemidirectCategory, ActionError> {
    let report = validate_action(spec);
    if !report.is_valid() {
        return Err(ActionError::Invalid(report));
    }
    let (g, h) = (&spec.g, &spec.h);
    let mut pairs = Vec::new();
    for m in h.morphisms() {
        let x = spec.phi[h.src(m)];
        if spec.phi[h.tgt(m)] != x {
            continue;
        }
        for a in g.morphisms().filter(|&a| g.tgt(a) == x) {
            pairs.push((m, a));
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let name = |i: usize| pair_name(h.morphism_name(pairs[i].0), g.morphism_name(pairs[i].1));
    let src = |i: usize| {
        let (m, a) = pairs[i];
        spec.alpha_on_object(g.inv(a), h.src(m)).expect("validated action")
    };

    let mut b = CategoryBuilder::new();
    for u in h.objects() {
        b.add_object(h.object_name(u));
    }
    for i in 0..pairs.len() {
        b.add_morphism(name(i), h.object_name(src(i)), h.object_name(h.tgt(pairs[i].0)));
    }
    for u in h.objects() {
        let id = index[&(h.identity(u), g.identity(spec.phi[u]))];
        b.add_identity(h.object_name(u), name(id));
    }
    for i in 0..pairs.len() {
        let (m, a) = pairs[i];
        for j in 0..pairs.len() {
            let (m2, a2) = pairs[j];
            if src(i) != h.tgt(m2) {
                continue;
            }
            let moved = spec.alpha(a, m2).expect("validated action");
            let hm = h.compose(m, moved).expect("endpoints match after transport");
            let ga = g.compose(a, a2).expect("anchors match");
            let k = index[&(hm, ga)];
            b.add_composite(name(i), name(j), name(k));
        }
    }
    let cat = b.build()?;
    let r = cat.validate();
    if !r.is_valid() {
        return Err(ActionError::Construction(r));
    }

    let groupoid = match FiniteGroupoid::from_category(h.clone()) {
        Err(_) => None,
        Ok(hg) => {
            let inverses: Vec<(String, String)> = (0..pairs.len())
                .map(|i| {
                    let (m, a) = pairs[i];
                    let ai = g.inv(a);
                    let mi = spec.alpha(ai, hg.inv(m)).expect("validated action");
                    (name(i), name(index[&(mi, ai)]))
                })
                .collect();
            let grp = FiniteGroupoid::with_inverses(cat.clone(), inverses.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
            let r = validate_groupoid(&grp);
            if !r.is_valid() {
                return Err(ActionError::Construction(r));
            }
            Some(grp)
        }
    };

    Ok(SemidirectCategory {
        cat,
        pairs,
        groupoid,
        index,
    })
}

/// Compares `H ×_α G` with `H_r ×_α G` as literal tables; on mismatch returns a witness.
pub fn semidirect_equals_regular(spec: &ActionSpec) -> Result<(bool, Option<String>), ActionError> {
    let full = semidirect(spec)?;
    let reg = semidirect(&spec.regular_spec())?;
    if full.cat == reg.cat {
        return Ok((true, None));
    }
    let (a, b) = (full.cat.morphism_names(), reg.cat.morphism_names());
    let witness = a
        .iter()
        .find(|m| !b.contains(m))
        .or_else(|| b.iter().find(|m| !a.contains(m)))
        .cloned()
        .or_else(|| {
            full.cat
                .composition_triples()
                .into_iter()
                .find(|t| !reg.cat.composition_triples().contains(t))
                .map(|(f, g, fg)| format!("{f}∘{g}={fg}"))
        })
        .or_else(|| Some("object or identity data differ".to_string()));
    Ok((false, witness))
}
