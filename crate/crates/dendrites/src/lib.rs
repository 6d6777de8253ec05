//! Ważewski dendrites `D_n` (`3 ≤ n`) and `D_∞` with kaleidoscopic
//! colorings, modeled generatively: branch points are addressed from a
//! root and materialized on demand, so independently built objects agree.
//!
//! Homeomorphisms are built by patchwork from finite partial maps and
//! canonical region maps, or lifted from automorphisms of `T_n` through the
//! color-preserving embedding `Φ: T_n → D_n`.

mod approx;
mod arc;
mod colors;
mod element;
mod embed;
mod point;

pub use approx::{ChartEntry, DendriteApprox};
pub use arc::{arc_parts, least_point, Endpoint, Part, Region, Segment, Spine, RECURSION_BUDGET};
pub use colors::{complete, ColorMap, Gamma};
pub use element::{
    kaleidoscopic_membership, lift, patchwork_dendrite, BranchRule, BranchSpec, DendriteElement, PartialDendriteMap,
};
pub use embed::{embed_tree, Embedding, EmbeddingRecord, Location};
pub use point::{
    between, center, close_up, code, dir, is_ancestor, is_center_closed, level, meet, Entry, Palette, Point,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DendriteError {
    #[error("D_n needs at least three colors, got {0}")]
    BadArity(u32),
    #[error("invalid branch point: {0}")]
    InvalidPoint(String),
    #[error("color {0} is not in the palette")]
    InvalidColor(String),
    #[error("the two branch points coincide")]
    SamePoint,
    #[error("the two colors coincide")]
    SameColor,
    #[error("branch point {0} is not materialized")]
    NotMaterialized(String),
    #[error("set is not center-closed")]
    NotCenterClosed,
    #[error("not a partial dendrite homomorphism: {0}")]
    NotPartialHomomorphism(String),
    #[error("branch rule disagrees with the boundary: {0}")]
    BoundaryMismatch(String),
    #[error("support reaches depth {support}, beyond the embedded depth {depth}")]
    SupportExceedsDepth { support: usize, depth: usize },
    #[error("palettes do not match")]
    PaletteMismatch,
    #[error("{0} is outside the region")]
    OutsideRegion(String),
    #[error("canonical recursion exceeded its budget")]
    Budget,
}
