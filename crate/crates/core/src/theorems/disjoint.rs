use crate::action::{semidirect, validate_action, ActionSpec};
use crate::catcore::Divisibility;

use super::TheoremReport;

/// `(h|g) ⊥ (h'|g')` in the semidirect product iff `h ⊥ h'` in `H` or `g ⊥ g'` in `G`, for every pair.
pub fn verify_disjointness_criterion(spec: &ActionSpec, instance: &str) -> TheoremReport {
    let mut rep = TheoremReport::new("disjointness", instance);
    if !rep.absorb("action is valid", &validate_action(spec)) {
        return rep;
    }
    let sd = semidirect(spec).expect("validated action");
    let (dl, dh, dg) = (Divisibility::new(&sd.cat), Divisibility::new(&spec.h), Divisibility::new(&spec.g));
    let outcomes = sd.cat.morphisms().flat_map(|p| {
        let (sd, dl, dh, dg) = (&sd, &dl, &dh, &dg);
        sd.cat.morphisms().map(move |q| {
            let ((h, g), (h2, g2)) = (sd.pairs[p], sd.pairs[q]);
            let lhs = dl.disjoint(p, q);
            let rhs = dh.disjoint(h, h2) || dg.disjoint(g, g2);
            if lhs == rhs {
                Ok(())
            } else {
                Err(vec![sd.cat.morphism_name(p).to_string(), sd.cat.morphism_name(q).to_string()])
            }
        })
    });
    rep.tally("pair disjointness agrees with componentwise disjointness", outcomes);
    rep.observe("pairs", sd.len());
    rep
}
