use crate::action::{semidirect, validate_action, ActionSpec};
use crate::linalg::rank;
use crate::matrix::ExactMatrix;
use crate::quasidyn::{
    check_covariant, check_quasi, induce_quasi_action, integrate, regular_covariant, ConvElement, CovariantRep, QuasiError, QuasiSystem,
};
use crate::staralg::{check_representation, left_regular, sum_of_disjoint_partial_isometries, MatrixRep, WordAlgebra};

use super::TheoremReport;

fn induce_or_note(rep: &mut TheoremReport, side: &str, spec: &ActionSpec, r: &MatrixRep) -> Option<QuasiSystem> {
    match induce_quasi_action(spec, r) {
        Ok(sys) => Some(sys),
        Err(e @ QuasiError::WellDefinedness(..)) => {
            rep.inapplicable(format!("{side}: the representation does not support the induced quasi action ({e})"));
            None
        }
        Err(e) => {
            rep.assert(&format!("{side}: quasi action can be induced"), false, || e.to_string());
            None
        }
    }
}

/// Runs both directions of the correspondence between representations of the semidirect
/// product and covariant representations of the induced quasi action.
///
/// `rep_lambda` defaults to the left regular representation of the semidirect product.
/// The backward direction starts from the left regular representation of `H_r`.
pub fn verify_main_theorem(spec: &ActionSpec, rep_lambda: Option<&MatrixRep>, instance: &str) -> TheoremReport {
    let mut rep = TheoremReport::new("main", instance);
    if !rep.absorb("action is valid", &validate_action(spec)) {
        return rep;
    }
    let regular = spec.regular_spec();
    let (nh, nr) = (spec.h.morphism_count(), regular.h.morphism_count());
    if nr < nh {
        rep.note(format!("H_r is a proper subcategory of H ({nr} of {nh} morphisms)"));
    }
    let lam = semidirect(&regular).expect("regular part of a valid action");
    let full = semidirect(spec).expect("validated action");
    rep.assert("semidirect product over H equals the one over H_r", full.cat == lam.cat, || {
        "composition tables differ".into()
    });
    rep.observe("semidirect_morphisms", lam.len());

    let w = rep_lambda.cloned().unwrap_or_else(|| left_regular(&lam.cat));
    if w.cat.morphism_names() != lam.cat.morphism_names() {
        rep.assert("representation is over the semidirect product", false, || "morphism names differ".into());
        return rep;
    }
    if !rep.absorb("representation of the semidirect product", &check_representation(&w)) {
        return rep;
    }
    let wpair = |h: usize, g: usize| w.s(lam.pair(h, g).expect("pair in the semidirect product"));
    let (g, h) = (&regular.g, &regular.h);

    // forward: pi(S_h) = W(h, phi(s h)), u(g) = sum over objects e over t(g) of W(1_e, g)
    let rho = MatrixRep::new(h.clone(), w.dim(), h.morphisms().map(|m| wpair(m, regular.anchor_unit(h.src(m))).clone()).collect())
        .expect("square matrices of the same size");
    rep.absorb("forward: h -> W(h, phi(s(h))) is a representation of H_r", &check_representation(&rho));
    if let Some(sys) = induce_or_note(&mut rep, "forward", &regular, &rho) {
        rep.absorb("forward: induced quasi action", &check_quasi(&sys));
        let mut u = Vec::new();
        let mut sums_ok = Vec::new();
        for a in g.morphisms() {
            let terms: Vec<ExactMatrix> =
                h.objects().filter(|&e| regular.phi[e] == g.tgt(a)).map(|e| wpair(h.identity(e), a).clone()).collect();
            match sum_of_disjoint_partial_isometries(&terms) {
                Ok(m) => {
                    sums_ok.push(Ok(()));
                    u.push(m);
                }
                Err(e) => {
                    sums_ok.push(Err(vec![g.morphism_name(a).into(), e.to_string()]));
                    u.push(ExactMatrix::zeros(w.dim(), w.dim()));
                }
            }
        }
        rep.tally("forward: u(g) is a sum of disjoint partial isometries", sums_ok);
        let cr = CovariantRep::inclusion(&sys, u);
        rep.absorb("forward: (pi, u) is covariant", &check_covariant(&sys, &cr));
        let mut conj = Vec::new();
        for a in g.morphisms() {
            for m in regular.fiber(a) {
                let img = regular.alpha(a, m).expect("fiber is in the domain");
                let ok = cr.u(a).mul(rho.s(m)).mul(&cr.u(a).adjoint()) == *rho.s(img);
                conj.push(if ok { Ok(()) } else { Err(vec![g.morphism_name(a).into(), h.morphism_name(m).into()]) });
            }
        }
        rep.tally("forward: u(g) pi(S_h) u(g)* = pi(S_alpha_g(h))", conj);
        let gens: Vec<_> = lam.pairs.iter().map(|&(m, a)| {
            let t = ConvElement::monomial(&sys, rho.s(m).clone(), a);
            match t.map(|t| integrate(&sys, &cr, &t)) {
                Ok(x) if x == *wpair(m, a) && x == rho.s(m).mul(cr.u(a)) => Ok(()),
                _ => Err(vec![h.morphism_name(m).into(), g.morphism_name(a).into()]),
            }
        }).collect();
        rep.tally("round trip: sigma(S_h g) = W(h, g)", gens);
    }

    // backward: Phi(h, g) = pi~(S_h) u_g from the regular covariant representation
    let base = left_regular(h);
    let base_report = check_representation(&base);
    if !base_report.is_valid() {
        rep.inapplicable("backward: the left regular representation of H_r is not a representation");
        return rep;
    }
    let Some(sys) = induce_or_note(&mut rep, "backward", &regular, &base) else {
        return rep;
    };
    rep.absorb("backward: induced quasi action", &check_quasi(&sys));
    let cr = regular_covariant(&sys, sys.basis(), sys.size());
    rep.absorb("backward: regular covariant representation", &check_covariant(&sys, &cr));
    let phi: Vec<ExactMatrix> = lam
        .pairs
        .iter()
        .map(|&(m, a)| {
            let t = ConvElement::monomial(&sys, base.s(m).clone(), a).expect("S_h lies in the domain of beta at g^-1");
            integrate(&sys, &cr, &t)
        })
        .collect();
    let phi_rep = MatrixRep::new(lam.cat.clone(), cr.dim, phi.clone()).expect("square matrices");
    rep.absorb("backward: (h, g) -> pi~(S_h) u_g is a representation", &check_representation(&phi_rep));

    let alg_w = WordAlgebra::new(w.dim(), w.matrices());
    let alg_phi = WordAlgebra::new(cr.dim, &phi);
    let there = alg_w.extend_letter_map(&phi);
    let back = alg_phi.extend_letter_map(w.matrices());
    rep.assert("round trip: W(h, g) -> T(h, g) extends to a *-homomorphism", there.is_ok(), || there.unwrap_err().to_string());
    rep.assert("round trip: T(h, g) -> W(h, g) extends to a *-homomorphism", back.is_ok(), || back.unwrap_err().to_string());
    let sigma: Vec<ExactMatrix> = ConvElement::basis(&sys).iter().map(|f| integrate(&sys, &cr, f)).collect();
    let sigma_rank = rank(&sigma);
    rep.observe("span_dim_semidirect", alg_w.dim());
    rep.observe("span_dim_crossed", alg_phi.dim());
    rep.observe("crossed_realization_dim", sigma_rank);
    rep.observe("convolution_algebra_dim", sigma.len());
    rep.assert("generated algebras have equal dimension", alg_w.dim() == alg_phi.dim(), || {
        format!("{} vs {}", alg_w.dim(), alg_phi.dim())
    });
    rep.assert("T(h, g) generate the realization of A[G]", alg_phi.dim() == sigma_rank, || {
        format!("{} vs {}", alg_phi.dim(), sigma_rank)
    });
    rep
}
