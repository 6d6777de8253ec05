//! Circles, arcs and cut-point orders read off graph expansions, and the
//! tree (rabbits) or dendrite (airplane) of circles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::expansion::GraphExpansion;
use crate::graph::Multigraph;
use crate::word::{EdgeWord, GluingVertex};
use crate::ReplacementError;

/// Cap on enumerated cycles or paths.
pub const ENUMERATION_CAP: usize = 100_000;

/// An undirected cycle of an expansion, in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Circle {
    pub edges: Vec<EdgeWord>,
    pub vertices: Vec<GluingVertex>,
}

impl Circle {
    pub fn contains(&self, v: &GluingVertex) -> bool {
        self.vertices.contains(v)
    }
}

fn circle_from(ix: &crate::expansion::Indexed, cycle: &[usize]) -> Circle {
    let (edges, mut verts) = ix.graph.cycle_order(cycle);
    verts.pop();
    Circle {
        edges: edges.into_iter().map(|k| ix.words[k].clone()).collect(),
        vertices: verts.into_iter().map(|v| ix.verts[v].clone()).collect(),
    }
}

/// All undirected cycles of `g`. Circles of the limit space correspond to
/// these only when the system stabilizes (see
/// [`crate::ReplacementSystem::stabilizes`]).
pub fn circles(g: &GraphExpansion) -> Result<Vec<Circle>, ReplacementError> {
    let ix = g.indexed();
    let cycles = ix
        .graph
        .simple_cycles(ENUMERATION_CAP)
        .ok_or(ReplacementError::Budget(ENUMERATION_CAP))?;
    Ok(cycles.iter().map(|c| circle_from(&ix, c)).collect())
}

/// One undirected path (or cycle) of the expansion carrying arcs, with the
/// edges whose color leaves a choice of route at deeper levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub edges: Vec<EdgeWord>,
    pub branching: Vec<EdgeWord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcReport {
    pub skeletons: Vec<Skeleton>,
    /// Whether every skeleton determines a single arc (or circle).
    pub stabilizes: bool,
    /// The number of arcs (circles when `p == q`), when finite.
    pub arc_count: Option<usize>,
}

fn lookup(ix: &crate::expansion::Indexed, v: &GluingVertex) -> Result<usize, ReplacementError> {
    ix.index
        .get(v)
        .copied()
        .ok_or_else(|| ReplacementError::NoSuchVertex(v.to_string()))
}

/// The arcs from `p` to `q` (circles through `p` when `p == q`): each
/// undirected path of `g` is refined through the replacement graphs. Paths
/// through a color whose ends disconnect within `depth` further rounds are
/// discarded; colors with several crossing routes are reported as
/// branching.
pub fn arcs_between(
    g: &GraphExpansion,
    p: &GluingVertex,
    q: &GluingVertex,
    depth: usize,
) -> Result<ArcReport, ReplacementError> {
    let ix = g.indexed();
    let (a, b) = (lookup(&ix, p)?, lookup(&ix, q)?);
    let raw: Vec<Vec<usize>> = if a == b {
        ix.graph
            .simple_cycles(ENUMERATION_CAP)
            .ok_or(ReplacementError::Budget(ENUMERATION_CAP))?
            .into_iter()
            .filter(|c| ix.graph.vertices_of(c).contains(&a))
            .map(|c| ix.graph.cycle_order(&c).0)
            .collect()
    } else {
        ix.graph
            .simple_paths(a, b, ENUMERATION_CAP)
            .ok_or(ReplacementError::Budget(ENUMERATION_CAP))?
    };
    let sys = g.system();
    let passable = sys.passable_colors(depth);
    let determined = sys.determined_colors();
    let skeletons: Vec<Skeleton> = raw
        .into_iter()
        .filter(|path| path.iter().all(|&k| passable.contains(&ix.colors[k])))
        .map(|path| Skeleton {
            branching: path
                .iter()
                .filter(|&&k| !determined.contains(&ix.colors[k]))
                .map(|&k| ix.words[k].clone())
                .collect(),
            edges: path.iter().map(|&k| ix.words[k].clone()).collect(),
        })
        .collect();
    if skeletons.is_empty() {
        return Err(ReplacementError::Disconnected);
    }
    let stabilizes = skeletons.iter().all(|s| s.branching.is_empty());
    Ok(ArcReport {
        arc_count: stabilizes.then_some(skeletons.len()),
        skeletons,
        stabilizes,
    })
}

/// The number of components of the expansion minus `v`, expanding fully
/// until two consecutive counts agree, at most `max_depth` times.
pub fn vertex_order(g: &GraphExpansion, v: &GluingVertex, max_depth: usize) -> Result<usize, ReplacementError> {
    let count = |h: &GraphExpansion| -> Result<usize, ReplacementError> {
        let ix = h.indexed();
        Ok(ix.graph.components_without(&[lookup(&ix, v)?]))
    };
    let mut counts = vec![count(g)?];
    let mut cur = g.clone();
    for _ in 0..max_depth {
        cur = cur.expand_all();
        counts.push(count(&cur)?);
        if counts[counts.len() - 1] == counts[counts.len() - 2] {
            return Ok(counts[counts.len() - 1]);
        }
    }
    Err(ReplacementError::NotStabilized {
        vertex: v.to_string(),
        counts,
    })
}

/// The bipartite incidence graph of circles and the vertices on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeOfCircles {
    pub circles: Vec<Circle>,
    pub points: Vec<GluingVertex>,
    /// `(circle index, point index)` whenever the point lies on the circle.
    pub incidences: Vec<(usize, usize)>,
}

impl TreeOfCircles {
    fn graph(&self) -> Multigraph {
        let c = self.circles.len();
        Multigraph::new(
            c + self.points.len(),
            self.incidences.iter().map(|&(i, p)| (i, c + p)).collect(),
        )
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let n = self.circles.len() + self.points.len();
        n > 0 && self.incidences.len() + 1 == n && self.graph().is_connected()
    }

    pub fn point_degree(&self, p: usize) -> usize {
        self.incidences.iter().filter(|x| x.1 == p).count()
    }

    pub fn circle_degree(&self, c: usize) -> usize {
        self.incidences.iter().filter(|x| x.0 == c).count()
    }
}

/// The tree of circles of a rabbit expansion.
pub fn tree_of_circles(g: &GraphExpansion) -> Result<TreeOfCircles, ReplacementError> {
    if g.system().rabbit_arity().is_none() {
        return Err(ReplacementError::NotRabbitSystem);
    }
    let circles = circles(g)?;
    let points: Vec<GluingVertex> = circles
        .iter()
        .flat_map(|c| c.vertices.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: std::collections::BTreeMap<&GluingVertex, usize> =
        points.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut incidences: Vec<(usize, usize)> = circles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.vertices.iter().map(move |v| (i, v)))
        .map(|(i, v)| (i, index[v]))
        .collect();
    incidences.sort_unstable();
    Ok(TreeOfCircles {
        circles,
        points,
        incidences,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DendriteNode {
    /// A cycle contracted to a point.
    Circle(Circle),
    /// A vertex on no cycle.
    Point(GluingVertex),
}

/// An airplane expansion with every cycle contracted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DendriteOfCircles {
    pub nodes: Vec<DendriteNode>,
    /// The edges on no cycle, between node indices.
    pub edges: Vec<(usize, usize, EdgeWord)>,
}

impl DendriteOfCircles {
    fn graph(&self) -> Multigraph {
        Multigraph::new(self.nodes.len(), self.edges.iter().map(|(a, b, _)| (*a, *b)).collect())
    }

    pub fn is_tree(&self) -> bool {
        !self.nodes.is_empty() && self.edges.len() + 1 == self.nodes.len() && self.graph().is_connected()
    }

    pub fn degree(&self, k: usize) -> usize {
        self.edges
            .iter()
            .map(|(a, b, _)| (*a == k) as usize + (*b == k) as usize)
            .sum()
    }

    /// Components left after removing node `k`.
    pub fn components_without(&self, k: usize) -> usize {
        self.graph().components_without(&[k])
    }
}

/// The dendrite of circles of an airplane expansion.
pub fn dendrite_of_circles(g: &GraphExpansion) -> Result<DendriteOfCircles, ReplacementError> {
    if !g.system().is_airplane() {
        return Err(ReplacementError::NotAirplaneSystem);
    }
    let circles = circles(g)?;
    let on_cycle: BTreeSet<&EdgeWord> = circles.iter().flat_map(|c| c.edges.iter()).collect();
    let mut nodes: Vec<DendriteNode> = circles.iter().cloned().map(DendriteNode::Circle).collect();
    let node_of = |v: &GluingVertex, nodes: &mut Vec<DendriteNode>| -> usize {
        if let Some(i) = circles.iter().position(|c| c.contains(v)) {
            return i;
        }
        if let Some(i) = nodes.iter().position(|n| matches!(n, DendriteNode::Point(p) if p == v)) {
            return i;
        }
        nodes.push(DendriteNode::Point(v.clone()));
        nodes.len() - 1
    };
    for v in g.vertices() {
        node_of(v, &mut nodes);
    }
    let mut edges = Vec::new();
    for (w, e) in g.edges() {
        if !on_cycle.contains(w) {
            let a = node_of(&e.from, &mut nodes);
            let b = node_of(&e.to, &mut nodes);
            edges.push((a, b, w.clone()));
        }
    }
    Ok(DendriteOfCircles { nodes, edges })
}
