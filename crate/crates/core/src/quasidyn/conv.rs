use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::linear_combination;
use crate::matrix::ExactMatrix;
use crate::scalar::Gq;

use super::QuasiSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvError {
    #[error("coefficient at `{0}` is not in the domain of beta at its inverse")]
    NotInDomain(String),
    #[error("`{0}` is not a morphism of the groupoid")]
    UnknownMorphism(String),
}

/// A finite sum `Σ a_t t` with `a_t ∈ D(β_{t⁻¹})`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConvElement {
    terms: BTreeMap<usize, ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvTermJson {
    pub g: String,
    pub matrix: ExactMatrix,
}

/// `{"terms": [{"g": ..., "matrix": ...}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvJson {
    pub terms: Vec<ConvTermJson>,
}

impl ConvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sums repeated morphisms and verifies domain membership of every coefficient.
    pub fn new(sys: &QuasiSystem, terms: impl IntoIterator<Item = (usize, ExactMatrix)>) -> Result<Self, ConvError> {
        let mut acc: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
        for (t, a) in terms {
            match acc.get_mut(&t) {
                Some(m) => *m = m.add(&a),
                None => {
                    acc.insert(t, a);
                }
            }
        }
        acc.retain(|_, m| !m.is_zero());
        for (&t, a) in &acc {
            if !sys.domain(sys.g.inv(t)).contains(a) {
                return Err(ConvError::NotInDomain(sys.g.morphism_name(t).into()));
            }
        }
        Ok(ConvElement { terms: acc })
    }

    pub fn monomial(sys: &QuasiSystem, a: ExactMatrix, t: usize) -> Result<Self, ConvError> {
        Self::new(sys, [(t, a)])
    }

    pub fn terms(&self) -> &BTreeMap<usize, ExactMatrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (t, b) in &other.terms {
            let sum = terms.get(t).map_or_else(|| b.clone(), |a| a.add(b));
            terms.insert(*t, sum);
        }
        terms.retain(|_, m| !m.is_zero());
        ConvElement { terms }
    }

    pub fn scale(&self, c: Gq) -> Self {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(t, a)| (*t, a.scale(c))).collect();
        terms.retain(|_, m: &mut ExactMatrix| !m.is_zero());
        ConvElement { terms }
    }

    /// A random element whose coefficients are small Gaussian-integer combinations of domain bases.
    pub fn random(sys: &QuasiSystem, rng: &mut impl Rng, density: f64) -> Self {
        let size = sys.size();
        let terms = sys.g.morphisms().filter_map(|t| {
            if !rng.gen_bool(density) {
                return None;
            }
            let basis = sys.domain(sys.g.inv(t)).basis();
            let coeffs: Vec<Gq> = basis
                .iter()
                .map(|_| Gq::int(rng.gen_range(-2..=2)) + Gq::int(rng.gen_range(-1..=1)) * Gq::i())
                .collect();
            Some((t, linear_combination(size, basis.iter().zip(coeffs))))
        });
        Self::new(sys, terms).expect("combinations of domain vectors")
    }

    /// `a·t` for `a` running over a basis of `D(β_{t⁻¹})`, for every `t`.
    pub fn basis(sys: &QuasiSystem) -> Vec<ConvElement> {
        sys.g
            .morphisms()
            .flat_map(|t| {
                sys.domain(sys.g.inv(t)).basis().iter().map(move |a| ConvElement {
                    terms: BTreeMap::from([(t, a.clone())]),
                })
            })
            .collect()
    }

    pub fn to_json(&self, sys: &QuasiSystem) -> ConvJson {
        ConvJson {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| ConvTermJson {
                    g: sys.g.morphism_name(*t).into(),
                    matrix: a.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(sys: &QuasiSystem, j: &ConvJson) -> Result<Self, ConvError> {
        let terms = j
            .terms
            .iter()
            .map(|term| {
                let t = sys.g.mor(&term.g).map_err(|_| ConvError::UnknownMorphism(term.g.clone()))?;
                Ok((t, term.matrix.clone()))
            })
            .collect::<Result<Vec<_>, ConvError>>()?;
        Self::new(sys, terms)
    }
}

/// `fg = Σ_s (Σ_{(t⁻¹, s) composable} a_t β_t(b_{t⁻¹s})) s`.
pub fn conv_mul(sys: &QuasiSystem, f: &ConvElement, g: &ConvElement) -> Result<ConvElement, ConvError> {
    let mut out = Vec::new();
    for (&t, a) in &f.terms {
        for (&v, b) in &g.terms {
            if let Some(s) = sys.g.compose(t, v) {
                out.push((s, a.mul(&sys.beta(t, b))));
            }
        }
    }
    ConvElement::new(sys, out)
}

/// `f* = Σ_t β_t(a*_{t⁻¹}) t`.
pub fn conv_star(sys: &QuasiSystem, f: &ConvElement) -> Result<ConvElement, ConvError> {
    let out = f.terms.iter().map(|(&k, a)| {
        let t = sys.g.inv(k);
        (t, sys.beta(t, &a.adjoint()))
    });
    ConvElement::new(sys, out.collect::<Vec<_>>())
}
