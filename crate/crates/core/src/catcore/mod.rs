//! Finite categories, groupoids, divisibility and group bundles.

mod bundle;
mod category;
mod group;
mod groupoid;
mod iso;

pub use bundle::{from_group_bundle, round_trip, to_group_bundle, BundleClass, GroupBundle, RoundTrip};
pub use category::{CategoryBuilder, Divisibility, FiniteCategory};
pub use group::FiniteGroup;
pub use groupoid::{validate_groupoid, FiniteGroupoid, Partition};
pub use iso::{find_isomorphism, is_isomorphism, relabel, CategoryIso};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("object `{0}` has two identities")]
    ConflictingIdentity(String),
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("composite of `{0}` and `{1}` listed twice with different values")]
    ConflictingComposition(String, String),
    #[error("morphism `{0}` has no inverse")]
    MissingInverse(String),
    #[error("invalid group bundle: {0}")]
    InvalidBundle(String),
    #[error("not a valid groupoid: {0}")]
    InvalidGroupoid(String),
}
