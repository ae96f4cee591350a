//! Finite-dimensional *-algebra layer: partial isometries, representations of
//! finite categories, and closures of generator sets.

mod lemmas;
mod norm;
mod rep;
mod words;

pub use lemmas::{adjoint_characterization, minimality_check, sum_of_disjoint_partial_isometries, LemmaError};
pub use norm::operator_norm_upper;
pub use rep::{check_representation, left_regular, MatrixRep, RepError};
pub use words::{algebra_span, WellDefinednessFailure, Word, WordAlgebra};

use crate::matrix::{ExactMatrix, ShapeError};

/// `S S* S = S`, exactly.
pub fn is_partial_isometry(s: &ExactMatrix) -> Result<bool, ShapeError> {
    if !s.is_square() {
        return Err(ShapeError::NotSquare(s.dims()));
    }
    Ok(s.mul(&s.adjoint()).mul(s) == *s)
}

#[cfg(test)]
mod tests;
