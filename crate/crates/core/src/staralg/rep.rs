use std::collections::BTreeMap;

use thiserror::Error;

use crate::catcore::{Divisibility, FiniteCategory};
use crate::matrix::ExactMatrix;
use crate::report::{Rule, ValidationReport};
use crate::scalar::Gq;

use super::is_partial_isometry;

#[derive(Debug, Clone, Error)]
pub enum RepError {
    #[error("matrix for `{0}` is {1:?}, expected {2}x{2}")]
    Dimension(String, (usize, usize), usize),
    #[error("no matrix assigned to `{0}`")]
    Missing(String),
    #[error("`{0}` is not a morphism of the category")]
    Unknown(String),
}

/// An assignment `f ↦ S_f` of square matrices to the morphisms of a category,
/// with initial projections `Q_f = S_f*S_f` and final projections `P_f = S_fS_f*`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub cat: FiniteCategory,
    dim: usize,
    s: Vec<ExactMatrix>,
    q: Vec<ExactMatrix>,
    p: Vec<ExactMatrix>,
}

impl MatrixRep {
    pub fn new(cat: FiniteCategory, dim: usize, s: Vec<ExactMatrix>) -> Result<Self, RepError> {
        if s.len() != cat.morphism_count() {
            let m = cat.morphism_names().get(s.len()).cloned().unwrap_or_default();
            return Err(RepError::Missing(m));
        }
        for (f, m) in s.iter().enumerate() {
            if m.dims() != (dim, dim) {
                return Err(RepError::Dimension(cat.morphism_name(f).into(), m.dims(), dim));
            }
        }
        let q = s.iter().map(|m| m.adjoint().mul(m)).collect();
        let p = s.iter().map(|m| m.mul(&m.adjoint())).collect();
        Ok(MatrixRep { cat, dim, s, q, p })
    }

    pub fn from_named(cat: FiniteCategory, dim: usize, assign: &BTreeMap<String, ExactMatrix>) -> Result<Self, RepError> {
        if let Some(k) = assign.keys().find(|k| cat.mor(k).is_err()) {
            return Err(RepError::Unknown(k.clone()));
        }
        let s = cat
            .morphism_names()
            .iter()
            .map(|n| assign.get(n).cloned().ok_or_else(|| RepError::Missing(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(cat, dim, s)
    }

    pub fn named(&self) -> BTreeMap<String, ExactMatrix> {
        self.cat.morphisms().map(|f| (self.cat.morphism_name(f).to_string(), self.s[f].clone())).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn s(&self, f: usize) -> &ExactMatrix {
        &self.s[f]
    }

    pub fn q(&self, f: usize) -> &ExactMatrix {
        &self.q[f]
    }

    pub fn p(&self, f: usize) -> &ExactMatrix {
        &self.p[f]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.s
    }

    /// Replaces one generator, recomputing its projections.
    pub fn with_matrix(&self, f: usize, m: ExactMatrix) -> Self {
        let mut s = self.s.clone();
        s[f] = m;
        Self::new(self.cat.clone(), self.dim, s).expect("same shape")
    }

    /// Compression of every generator to the coordinates `indices`, on the subcategory `sub`
    /// (whose morphisms must carry names of this category).
    pub fn compress_to(&self, sub: FiniteCategory, indices: &[usize]) -> Self {
        let s = sub
            .morphism_names()
            .iter()
            .map(|n| self.s[self.cat.mor(n).expect("subcategory name")].compress(indices))
            .collect();
        Self::new(sub, indices.len(), s).expect("compressed shape")
    }

    /// Generators renamed onto another category with the same names (e.g. a restriction).
    pub fn restrict_to(&self, sub: FiniteCategory) -> Self {
        let all: Vec<usize> = (0..self.dim).collect();
        self.compress_to(sub, &all)
    }
}

/// The candidate representation by left translation on `ℓ²(morphisms)`:
/// `S_f δ_g = δ_{fg}` when `(f, g)` is composable, else `0`.
pub fn left_regular(cat: &FiniteCategory) -> MatrixRep {
    let n = cat.morphism_count();
    let s = cat
        .morphisms()
        .map(|f| ExactMatrix::from_triplets(n, n, cat.morphisms().filter_map(|g| cat.compose(f, g).map(|fg| (fg, g, Gq::from(1))))))
        .collect();
    MatrixRep::new(cat.clone(), n, s).expect("square by construction")
}

/// Checks partial isometries, multiplicativity, commuting projections,
/// disjoint final projections for disjoint morphisms, and domination.
///
/// Projection conditions are only evaluated among morphisms whose matrix is a
/// partial isometry, so a failure of the first condition is not echoed by the others.
/// The off-composable identity `Q_f P_g = 0` is checked last, and only when everything else holds.
pub fn check_representation(rep: &MatrixRep) -> ValidationReport {
    let mut r = ValidationReport::new("representation");
    let cat = &rep.cat;
    let name = |f: usize| cat.morphism_name(f);
    let n = cat.morphism_count();

    let mut pi = vec![false; n];
    for f in cat.morphisms() {
        pi[f] = is_partial_isometry(rep.s(f)).unwrap_or(false);
        r.check(pi[f], Rule::PartialIsometry, [name(f)], || "S S* S != S".into());
    }

    for f in cat.morphisms() {
        for g in cat.morphisms() {
            let prod = rep.s(f).mul(rep.s(g));
            match cat.compose(f, g) {
                Some(fg) => r.check(prod == *rep.s(fg), Rule::Multiplicativity, [name(f), name(g)], || {
                    format!("S_f S_g != S_{}", name(fg))
                }),
                None => r.check(prod.is_zero(), Rule::Multiplicativity, [name(f), name(g)], || {
                    "S_f S_g != 0 for a non-composable pair".into()
                }),
            }
        }
    }

    let good: Vec<usize> = cat.morphisms().filter(|&f| pi[f]).collect();
    for (i, &f) in good.iter().enumerate() {
        for &g in &good[i..] {
            let pairs = [("Q", rep.q(f), "Q", rep.q(g)), ("P", rep.p(f), "P", rep.p(g)), ("Q", rep.q(f), "P", rep.p(g)), ("P", rep.p(f), "Q", rep.q(g))];
            for (a, x, b, y) in pairs {
                r.check(x.mul(y) == y.mul(x), Rule::ProjectionsCommute, [name(f), name(g)], || format!("{a}_f and {b}_g do not commute"));
            }
        }
    }

    let div = Divisibility::new(cat);
    for &f in &good {
        for &g in &good {
            if div.disjoint(f, g) {
                r.check(rep.p(f).mul(rep.p(g)).is_zero(), Rule::DisjointRanges, [name(f), name(g)], || {
                    "P_f P_g != 0 although f and g are disjoint".into()
                });
            }
            if cat.composable(f, g) {
                r.check(rep.q(f).mul(rep.p(g)) == *rep.p(g), Rule::Domination, [name(f), name(g)], || {
                    "Q_f P_g != P_g on a composable pair".into()
                });
            }
        }
    }

    if r.is_valid() {
        for f in cat.morphisms() {
            for g in cat.morphisms().filter(|&g| !cat.composable(f, g)) {
                r.check(rep.q(f).mul(rep.p(g)).is_zero(), Rule::OffComposable, [name(f), name(g)], || {
                    "Q_f P_g != 0 off the composable pairs".into()
                });
            }
        }
    }
    r
}
