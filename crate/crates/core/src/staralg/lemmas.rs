use thiserror::Error;

use crate::matrix::ExactMatrix;

use super::is_partial_isometry;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("not a partial isometry: {0}")]
    NotPartialIsometry(String),
    #[error("not a projection: {0}")]
    NotProjection(String),
    #[error("initial projections of terms {0} and {1} overlap")]
    InitialOverlap(usize, usize),
    #[error("final projections of terms {0} and {1} overlap")]
    FinalOverlap(usize, usize),
    #[error("terms have different shapes")]
    Shape,
}

/// If `S = PS = SQ` then `SS* ≤ P` and `S*S ≤ Q`. Returns whether the implication holds
/// (vacuously true when the hypothesis fails).
pub fn minimality_check(s: &ExactMatrix, p: &ExactMatrix, q: &ExactMatrix) -> Result<bool, LemmaError> {
    if !is_partial_isometry(s).unwrap_or(false) {
        return Err(LemmaError::NotPartialIsometry("S".into()));
    }
    for (n, m) in [("P", p), ("Q", q)] {
        if m.dims() != s.dims() || !m.is_projection() {
            return Err(LemmaError::NotProjection(n.into()));
        }
    }
    if p.mul(s) != *s || s.mul(q) != *s {
        return Ok(true);
    }
    let (p0, q0) = (s.mul(&s.adjoint()), s.adjoint().mul(s));
    Ok(p0.projection_le(p) && q0.projection_le(q))
}

/// If `TS = Q₀`, `ST = P₀`, `TT* = Q₀` and `T*T = P₀` (with `Q₀ = S*S`, `P₀ = SS*`) then `T = S*`.
/// Returns whether the implication holds for this `T`.
pub fn adjoint_characterization(s: &ExactMatrix, t: &ExactMatrix) -> Result<bool, LemmaError> {
    if !is_partial_isometry(s).unwrap_or(false) {
        return Err(LemmaError::NotPartialIsometry("S".into()));
    }
    if t.dims() != s.dims() {
        return Err(LemmaError::Shape);
    }
    let (p0, q0) = (s.mul(&s.adjoint()), s.adjoint().mul(s));
    let hyp = t.mul(s) == q0 && s.mul(t) == p0 && t.mul(&t.adjoint()) == q0 && t.adjoint().mul(t) == p0;
    Ok(!hyp || *t == s.adjoint())
}

/// Sum of partial isometries with pairwise orthogonal initial and final projections.
pub fn sum_of_disjoint_partial_isometries(terms: &[ExactMatrix]) -> Result<ExactMatrix, LemmaError> {
    let Some(first) = terms.first() else {
        return Err(LemmaError::Shape);
    };
    if terms.iter().any(|t| t.dims() != first.dims()) {
        return Err(LemmaError::Shape);
    }
    for (i, t) in terms.iter().enumerate() {
        if !is_partial_isometry(t).unwrap_or(false) {
            return Err(LemmaError::NotPartialIsometry(format!("term {i}")));
        }
    }
    let q: Vec<_> = terms.iter().map(|t| t.adjoint().mul(t)).collect();
    let p: Vec<_> = terms.iter().map(|t| t.mul(&t.adjoint())).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if !q[i].mul(&q[j]).is_zero() {
                return Err(LemmaError::InitialOverlap(i, j));
            }
            if !p[i].mul(&p[j]).is_zero() {
                return Err(LemmaError::FinalOverlap(i, j));
            }
        }
    }
    let sum = terms[1..].iter().fold(first.clone(), |acc, t| acc.add(t));
    debug_assert!(is_partial_isometry(&sum).unwrap_or(false));
    Ok(sum)
}
