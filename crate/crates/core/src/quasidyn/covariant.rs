use crate::linalg::{linear_combination, rank};
use crate::matrix::ExactMatrix;
use crate::report::{Rule, ValidationReport};
use crate::staralg::{is_partial_isometry, WellDefinednessFailure};

use super::{ConvElement, QuasiSystem};

/// A pair `(π, u)`: a linear map `π` on `A` (given on the basis of `A`)
/// and partial isometries `u_g`, all on a carrier of dimension `dim`.
#[derive(Clone, Debug)]
pub struct CovariantRep {
    pub dim: usize,
    pi: Vec<ExactMatrix>,
    u: Vec<ExactMatrix>,
}

impl CovariantRep {
    pub fn new(dim: usize, pi_on_basis: Vec<ExactMatrix>, u: Vec<ExactMatrix>) -> Self {
        CovariantRep { dim, pi: pi_on_basis, u }
    }

    /// `π` determined by its values on the generators of `A`.
    pub fn from_generators(sys: &QuasiSystem, dim: usize, pi_gens: &[ExactMatrix], u: Vec<ExactMatrix>) -> Result<Self, WellDefinednessFailure> {
        Ok(Self::new(dim, sys.extend_generators(pi_gens)?, u))
    }

    /// `π` the inclusion of `A` into its ambient matrix algebra.
    pub fn inclusion(sys: &QuasiSystem, u: Vec<ExactMatrix>) -> Self {
        Self::new(sys.size(), sys.basis().to_vec(), u)
    }

    pub fn pi_on_basis(&self) -> &[ExactMatrix] {
        &self.pi
    }

    pub fn pi(&self, sys: &QuasiSystem, a: &ExactMatrix) -> ExactMatrix {
        apply(sys, &self.pi, self.dim, a)
    }

    pub fn u(&self, g: usize) -> &ExactMatrix {
        &self.u[g]
    }

    pub fn with_u(&self, g: usize, m: ExactMatrix) -> Self {
        let mut c = self.clone();
        c.u[g] = m;
        c
    }
}

fn apply(sys: &QuasiSystem, on_basis: &[ExactMatrix], dim: usize, a: &ExactMatrix) -> ExactMatrix {
    let c = sys.algebra().coords(a).expect("element of the algebra");
    linear_combination(dim, on_basis.iter().zip(c))
}

/// Checks that `π` is a *-homomorphism, `u` a homomorphism into partial isometries
/// vanishing off composable pairs, and both covariance identities on every domain.
pub fn check_covariant(sys: &QuasiSystem, cr: &CovariantRep) -> ValidationReport {
    let mut r = ValidationReport::new("covariant representation");
    let g = &sys.g;
    let name = |a: usize| g.morphism_name(a);

    for (i, b) in sys.basis().iter().enumerate() {
        r.check(cr.pi(sys, &b.adjoint()) == cr.pi[i].adjoint(), Rule::PiStar, [format!("basis {i}")], || "pi(x*) != pi(x)*".into());
        let mult = sys.letters().iter().all(|l| cr.pi(sys, &b.mul(l)) == cr.pi[i].mul(&cr.pi(sys, l)));
        r.check(mult, Rule::PiMultiplicative, [format!("basis {i}")], || "pi(xy) != pi(x)pi(y)".into());
    }

    for a in g.morphisms() {
        let u = cr.u(a);
        r.check(is_partial_isometry(u).unwrap_or(false), Rule::UPartialIsometry, [name(a)], || "u(g) is not a partial isometry".into());
        r.check(u.adjoint() == *cr.u(g.inv(a)), Rule::UAdjointInverse, [name(a)], || "u(g)* != u(g^-1)".into());
        for b in g.morphisms() {
            let prod = u.mul(cr.u(b));
            match g.compose(a, b) {
                Some(ab) => r.check(prod == *cr.u(ab), Rule::UHomomorphism, [name(a), name(b)], || "u(s)u(t) != u(st)".into()),
                None => r.check(prod.is_zero(), Rule::UOffComposable, [name(a), name(b)], || "u(s)u(t) != 0 off composable pairs".into()),
            }
        }
        for (i, x) in sys.domain(a).basis().iter().enumerate() {
            let (px, pbx) = (cr.pi(sys, x), cr.pi(sys, &sys.beta(a, x)));
            let w = [name(a).to_string(), format!("domain {i}")];
            r.check(u.mul(&px).mul(&u.adjoint()) == pbx, Rule::CovarianceConjugation, w.clone(), || {
                "u(g)pi(a)u(g)* != pi(beta_g(a))".into()
            });
            r.check(u.mul(&px) == pbx.mul(u), Rule::CovarianceIntertwining, w, || "u(g)pi(a) != pi(beta_g(a))u(g)".into());
        }
    }
    r
}

/// The regular covariant representation on `ℓ²(G, ℂ^d)`: block `s` of `π̃(a)` is
/// `π(β_{s⁻¹}(a))`, and `u_t` moves block `t⁻¹s` to block `s` when `t⁻¹` and `s` compose.
pub fn regular_covariant(sys: &QuasiSystem, pi_on_basis: &[ExactMatrix], d: usize) -> CovariantRep {
    let g = &sys.g;
    let n = g.morphism_count() * d;
    let pi = sys
        .basis()
        .iter()
        .map(|b| {
            g.morphisms().fold(ExactMatrix::zeros(n, n), |acc, s| {
                let block = apply(sys, pi_on_basis, d, &sys.beta(g.inv(s), b));
                acc.add(&block.embed(n, n, s * d, s * d))
            })
        })
        .collect();
    let id = ExactMatrix::identity(d);
    let u = g
        .morphisms()
        .map(|t| {
            g.morphisms()
                .filter_map(|s| g.compose(g.inv(t), s).map(|ts| (s, ts)))
                .fold(ExactMatrix::zeros(n, n), |acc, (s, ts)| acc.add(&id.embed(n, n, s * d, ts * d)))
        })
        .collect();
    CovariantRep::new(n, pi, u)
}

/// `σ(f) = Σ_t π(a_t) u_t`.
pub fn integrate(sys: &QuasiSystem, cr: &CovariantRep, f: &ConvElement) -> ExactMatrix {
    f.terms()
        .iter()
        .fold(ExactMatrix::zeros(cr.dim, cr.dim), |acc, (&t, a)| acc.add(&cr.pi(sys, a).mul(cr.u(t))))
}

/// Outcome of the injectivity check of `σ` on `A[G]`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub report: ValidationReport,
    /// `dim A[G]`.
    pub dim: usize,
    /// Rank of `σ` on a basis of `A[G]`.
    pub rank: usize,
}

/// Whether the regular realization built from `π` (given on the basis of `A`, dimension `d`)
/// is injective on `A[G]`, after checking that `π` itself is faithful.
pub fn embedding_check(sys: &QuasiSystem, pi_on_basis: &[ExactMatrix], d: usize) -> Embedding {
    let mut report = ValidationReport::new("embedding");
    let pi_rank = rank(pi_on_basis);
    report.check(pi_rank == sys.algebra().dim(), Rule::PiFaithful, ["pi"], || {
        format!("pi has a kernel of dimension {}", sys.algebra().dim() - pi_rank)
    });
    let cr = regular_covariant(sys, pi_on_basis, d);
    let basis = ConvElement::basis(sys);
    let images: Vec<ExactMatrix> = basis.iter().map(|f| integrate(sys, &cr, f)).collect();
    let rank = rank(&images);
    report.check(rank == basis.len(), Rule::SigmaInjective, ["sigma"], || {
        format!("sigma has a kernel of dimension {} on A[G]", basis.len() - rank)
    });
    Embedding {
        report,
        dim: basis.len(),
        rank,
    }
}
