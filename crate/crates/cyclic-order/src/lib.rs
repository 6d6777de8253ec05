//! The countable dense cyclic order on Q/Z.
//!
//! Exact rational angles, the orientation of triples and the separation
//! relation, classification of finite maps as preserving/reversing,
//! piecewise-affine transitivity witnesses, canonical back-and-forth
//! extension, and finite `Split(X, A)` configurations.

mod angle;
mod enumerate;
mod order;
mod pl;
mod split;

pub use angle::{frac, Angle};
pub use enumerate::{
    angle_index_where, angles_by_height, cantor_pair, cantor_unpair, first_angle_avoiding, nth_angle_where,
};
pub use order::{
    classify, cyclic_successor, orient, separates, strictly_between, Classification, FinitePartialMap, Orientation,
};
pub use pl::{canonical_extension, extend_point, two_transitive_witness, PiecewiseAffineMap};
pub use split::{split, split_orient, split_successor, Side, SplitPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("orientation needs three distinct points")]
    DegenerateTriple,
    #[error("separation needs four distinct points")]
    DegenerateQuadruple,
    #[error("classification needs at least three pairs")]
    TooFewPoints,
    #[error("transitivity witness needs distinct points")]
    DegeneratePair,
    #[error("map neither preserves nor reverses the cyclic order")]
    NotMonotone,
    #[error("map is not injective")]
    NotInjective,
    #[error("point already in the domain")]
    AlreadyDefined,
    #[error("split set is not a subset of the points")]
    NotSubset,
    #[error("repeated point")]
    DuplicatePoint,
    #[error("set has a single point")]
    Singleton,
    #[error("point not in the set")]
    NotMember,
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
}
