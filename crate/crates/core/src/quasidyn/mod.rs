//! Quasi actions on matrix algebras, the convolution algebra `A[G]`,
//! covariant representations and their integrated forms.

mod conv;
mod covariant;

pub use conv::{conv_mul, conv_star, ConvElement, ConvError, ConvJson, ConvTermJson};
pub use covariant::{check_covariant, embedding_check, integrate, regular_covariant, CovariantRep, Embedding};

use thiserror::Error;

use crate::action::{validate_action, ActionSpec};
use crate::catcore::FiniteGroupoid;
use crate::linalg::{linear_combination, MatrixSpace};
use crate::matrix::ExactMatrix;
use crate::report::{Rule, ValidationReport};
use crate::staralg::{algebra_span, check_representation, MatrixRep, WellDefinednessFailure, WordAlgebra};

#[derive(Debug, Clone, Error)]
pub enum QuasiError {
    #[error("the action is not regular at `{0}`")]
    NotRegular(String),
    #[error("invalid action: {0}")]
    InvalidAction(ValidationReport),
    #[error("invalid representation: {0}")]
    InvalidRep(ValidationReport),
    #[error("representation is over a different category than the action")]
    CategoryMismatch,
    #[error("beta at `{0}`: {1}")]
    WellDefinedness(String, WellDefinednessFailure),
    #[error("expected {0} entries, got {1}")]
    Arity(usize, usize),
}

/// A quasi action `β` of a finite groupoid on a matrix algebra `A`.
///
/// Every `β_g` is stored as a linear map on all of `A` (images of a basis),
/// together with an explicit basis of its domain `D(β_g)`.
#[derive(Clone, Debug)]
pub struct QuasiSystem {
    pub g: FiniteGroupoid,
    algebra: WordAlgebra,
    gen_names: Vec<String>,
    domains: Vec<MatrixSpace>,
    images: Vec<Vec<ExactMatrix>>,
}

impl QuasiSystem {
    /// Builds `β` from its values on generators: `letter_images[g][i] = β_g(gens[i])`,
    /// and `D(β_g)` is the *-algebra generated by `domain_gens[g]`.
    pub fn from_generators(
        g: FiniteGroupoid,
        size: usize,
        gens: Vec<(String, ExactMatrix)>,
        domain_gens: Vec<Vec<ExactMatrix>>,
        letter_images: Vec<Vec<ExactMatrix>>,
    ) -> Result<Self, QuasiError> {
        let n = g.morphism_count();
        if domain_gens.len() != n || letter_images.len() != n {
            return Err(QuasiError::Arity(n, domain_gens.len().min(letter_images.len())));
        }
        let (gen_names, mats): (Vec<String>, Vec<ExactMatrix>) = gens.into_iter().unzip();
        let algebra = WordAlgebra::new(size, &mats);
        let domains = domain_gens.iter().map(|d| MatrixSpace::spanned_by(size, &algebra_span(size, d))).collect();
        let mut images = Vec::with_capacity(n);
        for (a, imgs) in letter_images.iter().enumerate() {
            if imgs.len() != mats.len() {
                return Err(QuasiError::Arity(mats.len(), imgs.len()));
            }
            let img = algebra.extend_letter_map(imgs).map_err(|e| QuasiError::WellDefinedness(g.morphism_name(a).into(), e))?;
            images.push(img);
        }
        Ok(QuasiSystem {
            g,
            algebra,
            gen_names,
            domains,
            images,
        })
    }

    pub fn size(&self) -> usize {
        self.algebra.space().size()
    }

    pub fn algebra(&self) -> &MatrixSpace {
        self.algebra.space()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        self.algebra.basis()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// The generator called `name`.
    pub fn generator(&self, name: &str) -> Option<&ExactMatrix> {
        let i = self.gen_names.iter().position(|n| n == name)?;
        Some(&self.algebra.letters()[2 * i])
    }

    /// Generators and their adjoints, interleaved.
    pub fn letters(&self) -> &[ExactMatrix] {
        self.algebra.letters()
    }

    /// Extends a map on generators to the basis of `A` as a *-homomorphism.
    pub fn extend_generators(&self, images: &[ExactMatrix]) -> Result<Vec<ExactMatrix>, WellDefinednessFailure> {
        self.algebra.extend_letter_map(images)
    }

    pub fn domain(&self, g: usize) -> &MatrixSpace {
        &self.domains[g]
    }

    /// Replaces a domain (for building deliberately broken systems).
    pub fn with_domain(&self, g: usize, d: MatrixSpace) -> Self {
        let mut s = self.clone();
        s.domains[g] = d;
        s
    }

    /// `β_g(a)`, or `None` when `a ∉ A`.
    pub fn try_beta(&self, g: usize, a: &ExactMatrix) -> Option<ExactMatrix> {
        let c = self.algebra.space().coords(a)?;
        Some(linear_combination(self.size(), self.images[g].iter().zip(c)))
    }

    pub fn beta(&self, g: usize, a: &ExactMatrix) -> ExactMatrix {
        self.try_beta(g, a).expect("element of the algebra")
    }

    /// `β_g` on the basis of `A`.
    pub fn basis_images(&self, g: usize) -> &[ExactMatrix] {
        &self.images[g]
    }

    /// `β_g(A)`.
    pub fn range(&self, g: usize) -> MatrixSpace {
        MatrixSpace::spanned_by(self.size(), &self.images[g])
    }
}

/// The induced quasi action `β_g(S_h) = S_{α_g(h)}` for `h ∈ H^g`, and `0` on the other generators,
/// with `D(β_g)` generated by `{S_h : h ∈ H^g}`.
pub fn induce_quasi_action(spec: &ActionSpec, rep: &MatrixRep) -> Result<QuasiSystem, QuasiError> {
    if let Some(h) = spec.h.morphisms().find(|&h| !spec.is_regular_morphism(h)) {
        return Err(QuasiError::NotRegular(spec.hname(h).into()));
    }
    let r = validate_action(spec);
    if !r.is_valid() {
        return Err(QuasiError::InvalidAction(r));
    }
    if rep.cat.morphism_names() != spec.h.morphism_names() {
        return Err(QuasiError::CategoryMismatch);
    }
    let r = check_representation(rep);
    if !r.is_valid() {
        return Err(QuasiError::InvalidRep(r));
    }
    let d = rep.dim();
    let zero = ExactMatrix::zeros(d, d);
    let gens = spec.h.morphisms().map(|h| (spec.hname(h).to_string(), rep.s(h).clone())).collect();
    let mut domain_gens = Vec::new();
    let mut letter_images = Vec::new();
    for a in spec.g.morphisms() {
        let fiber = spec.fiber(a);
        domain_gens.push(fiber.iter().map(|&h| rep.s(h).clone()).collect());
        letter_images.push(
            spec.h
                .morphisms()
                .map(|h| match spec.alpha(a, h) {
                    Some(k) => rep.s(k).clone(),
                    None => zero.clone(),
                })
                .collect(),
        );
    }
    QuasiSystem::from_generators(spec.g.clone(), d, gens, domain_gens, letter_images)
}

/// Exhaustive check of the quasi action axioms and their unit consequences.
pub fn check_quasi(sys: &QuasiSystem) -> ValidationReport {
    let mut r = ValidationReport::new("quasi action");
    let g = &sys.g;
    let name = |a: usize| g.morphism_name(a);
    let a_space = sys.algebra();
    let letters = sys.letters();
    let ranges: Vec<MatrixSpace> = g.morphisms().map(|a| sys.range(a)).collect();

    for a in g.morphisms() {
        let d = sys.domain(a);
        let closed = d.is_subspace_of(a_space)
            && d.basis().iter().all(|x| d.contains(&x.adjoint()) && d.basis().iter().all(|y| d.contains(&x.mul(y))));
        r.check(closed, Rule::DomainSubalgebra, [name(a)], || "domain is not a *-subalgebra of A".into());

        let imgs = sys.basis_images(a);
        let mult = sys.basis().iter().zip(imgs).all(|(b, bi)| {
            letters.iter().all(|l| sys.beta(a, &b.mul(l)) == bi.mul(&sys.beta(a, l)))
        });
        r.check(mult, Rule::BetaMultiplicative, [name(a)], || "beta(xy) != beta(x)beta(y)".into());
        let star = sys.basis().iter().zip(imgs).all(|(b, bi)| sys.beta(a, &b.adjoint()) == bi.adjoint());
        r.check(star, Rule::BetaStar, [name(a)], || "beta(x*) != beta(x)*".into());

        if closed {
            let on_d: Vec<ExactMatrix> = d.basis().iter().map(|x| sys.beta(a, x)).collect();
            let image = MatrixSpace::spanned_by(sys.size(), &on_d);
            r.check(image.dim() == d.dim(), Rule::BetaInjective, [name(a)], || "beta is not injective on its domain".into());
            r.check(image.same_space(&ranges[a]), Rule::BetaInjective, [name(a)], || {
                "beta(D) is a proper part of beta(A)".into()
            });
        }

        let src = g.identity(g.src(a));
        r.check(d.same_space(sys.domain(src)), Rule::DomainAtSource, [name(a)], || "D(beta_g) != D(beta_s(g))".into());
        if g.is_identity(a) {
            let id = d.basis().iter().all(|x| sys.try_beta(a, x).as_ref() == Some(x));
            r.check(id, Rule::UnitIdentity, [name(a)], || "a unit does not act as the identity on its domain".into());
        }
    }

    for s in g.morphisms() {
        for t in g.morphisms() {
            let w = [name(s), name(t)];
            match g.compose(s, t) {
                Some(st) => {
                    r.check(ranges[t].same_space(sys.domain(s)), Rule::RangeIsDomain, w, || "beta_t(A) != D(beta_s)".into());
                    r.check(sys.domain(st).same_space(sys.domain(t)), Rule::DomainOfComposite, w, || "D(beta_st) != D(beta_t)".into());
                    let law = sys.basis_images(t).iter().zip(sys.basis_images(st)).all(|(bt, bst)| sys.try_beta(s, bt).as_ref() == Some(bst));
                    r.check(law, Rule::CompositionLaw, w, || "beta_st != beta_s beta_t".into());
                }
                None => {
                    let zero = sys.basis_images(t).iter().all(|bt| sys.try_beta(s, bt).is_some_and(|m| m.is_zero()));
                    r.check(zero, Rule::OffComposableZero, w, || "beta_s beta_t != 0 off composable pairs".into());
                }
            }
        }
    }
    r
}

/// Morphisms `g` for which `β_{g⁻¹}∘β_g` is not the identity on `D(β_g)`.
pub fn inverse_law_failures(sys: &QuasiSystem) -> Vec<String> {
    sys.g
        .morphisms()
        .filter(|&a| {
            let ai = sys.g.inv(a);
            !sys.domain(a).basis().iter().all(|x| sys.try_beta(ai, &sys.beta(a, x)).as_ref() == Some(x))
        })
        .map(|a| sys.g.morphism_name(a).to_string())
        .collect()
}

#[cfg(test)]
mod tests;
