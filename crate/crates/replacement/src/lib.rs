//! Edge replacement systems and their graph expansions.
//!
//! A replacement system rewrites each colored edge into a copy of that
//! color's replacement graph. Edges of an expansion are named by the words
//! recording their history, and vertices keep a stable identity across
//! further expansions, so the gluing relation, cut-point orders and the
//! circles of the limit space can be read off finite expansions.

mod axioms;
mod circles;
mod expansion;
pub mod fixtures;
mod graph;
mod system;
mod word;

pub use axioms::{check_axioms, AxiomReport, CheckResult, Condition, Which};
pub use circles::{
    arcs_between, circles, dendrite_of_circles, tree_of_circles, vertex_order, ArcReport, Circle, DendriteNode,
    DendriteOfCircles, Skeleton, TreeOfCircles,
};
pub use expansion::{expand_edge, full_expansion, ExpEdge, GraphExpansion};
pub use graph::Multigraph;
pub use system::{RepEdge, RepGraph, Replacement, ReplacementSystem};
pub use word::{are_glued, glued, EdgeWord, GluingVertex, InfiniteWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplacementError {
    #[error("invalid replacement system: {0}")]
    InvalidSystem(String),
    #[error("no edge {0} in the expansion")]
    NoSuchEdge(String),
    #[error("no vertex {0} in the expansion")]
    NoSuchVertex(String),
    #[error("invalid edge word: {0}")]
    InvalidWord(String),
    #[error("order of {vertex} still changing after the allowed depth: {counts:?}")]
    NotStabilized { vertex: String, counts: Vec<usize> },
    #[error("the vertices are not joined by any arc")]
    Disconnected,
    #[error("not an expansion of a rabbit system")]
    NotRabbitSystem,
    #[error("not an expansion of the airplane system")]
    NotAirplaneSystem,
    #[error("more than {0} cycles or paths; enumeration abandoned")]
    Budget(usize),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
}
