//! Quadratic laminations of the rabbits and the airplane.
//!
//! A lamination is kept as a finite truncation: the forward orbit of a
//! seed polygon or leaf under angle doubling, pulled back generation by
//! generation. Classes are the polygons formed by leaves sharing endpoints.

mod lamination;
mod leaf;
mod svg;

pub use lamination::{airplane_seed, automorphism_check, rabbit_seed, Lamination, PolygonClass, Seed};
pub use leaf::{crosses, Leaf};
pub use svg::to_svg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaminationError {
    #[error("rabbit seeds need n ≥ 2, got {0}")]
    BadArity(usize),
    #[error("a leaf needs two distinct endpoints, got {0} twice")]
    DegenerateLeaf(String),
    #[error("no unlinked pairing of the preimages of {0}")]
    NoConsistentPairing(String),
    #[error("not a bijection of the endpoint set: {0}")]
    NotBijection(String),
    #[error("leaves {0} and {1} cross")]
    Crossing(String, String),
    #[error("unknown seed {0}; expected basilica, rabbit:N or airplane")]
    UnknownSeed(String),
    #[error("invalid lamination: {0}")]
    Invalid(String),
}
