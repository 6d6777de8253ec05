//! Biregular trees with legal colorings and elements of their universal
//! groups.
//!
//! Trees are lazy: vertices are color words, so any vertex can be named
//! without materializing the tree. Group elements are finite data (a root
//! image plus local actions on a finite rooted subtree) that evaluate
//! anywhere. Finite windows ([`TruncatedTree`]) support exhaustive checks.

mod action;
mod coloring;
mod element;
mod patchwork;
mod qi;
mod shape;

pub use action::{reflection, DenseGroup, LocalAction, Perm, PermGroup};
pub use coloring::{canonical_coloring, verify_legal, LegalColoring, TruncatedTree, Violation, ViolationKind};
pub use element::{circle_color, SupportEntry, TreeElement};
pub use patchwork::{is_center_closed, patchwork, BranchRule, BranchSpec};
pub use qi::{check_distortion, QiMap, QiReport};
pub use shape::{Color, Degree, Parity, TreeShape, VertexAddress};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("degree {0} is below 2")]
    BadArity(u32),
    #[error("invalid address: {0}")]
    InvalidAddress(String),
    #[error("vertex is on the wrong side of the bipartition")]
    WrongSide,
    #[error("inconsistent element: {0}")]
    InconsistentElement(String),
    #[error("set is not center-closed")]
    NotCenterClosed,
    #[error("not a partial tree isomorphism: {0}")]
    NotPartialHomomorphism(String),
    #[error("branch rule disagrees with the boundary: {0}")]
    BoundaryMismatch(String),
    #[error("element is not in U(Cyc(n), Aut(O))")]
    NotOrientation,
    #[error("local actions at degree-n vertices disagree")]
    IllDefined,
    #[error("vertex beyond the materialized radius")]
    OutOfRadius,
    #[error("elements live on different trees")]
    ShapeMismatch,
}
