//! Exact finite-instance workbench for groupoid actions on small categories,
//! partial-isometry representations and groupoid crossed products.
//!
//! Every scalar is a Gaussian rational, so every identity is checked with
//! literal equality.

pub mod action;
pub mod catcore;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod quasidyn;
pub mod report;
pub mod scalar;
pub mod staralg;
pub mod theorems;

pub use matrix::ExactMatrix;
pub use report::{Rule, ValidationReport, Violation};
pub use scalar::Gq;
