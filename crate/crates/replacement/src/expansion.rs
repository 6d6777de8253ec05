//! Graph expansions: the base graph after finitely many edge expansions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::Multigraph;
use crate::system::ReplacementSystem;
use crate::word::{EdgeWord, GluingVertex};
use crate::ReplacementError;

/// An edge of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpEdge {
    pub from: GluingVertex,
    pub to: GluingVertex,
    pub color: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    word: EdgeWord,
    from: GluingVertex,
    to: GluingVertex,
    color: String,
}

#[derive(Serialize, Deserialize)]
struct ExpansionRepr {
    system: ReplacementSystem,
    history: Vec<EdgeWord>,
    vertices: Vec<GluingVertex>,
    edges: Vec<EdgeRepr>,
}

/// A graph expansion together with the system it expands and the edges
/// expanded so far, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ExpansionRepr", try_from = "ExpansionRepr")]
pub struct GraphExpansion {
    system: ReplacementSystem,
    vertices: BTreeSet<GluingVertex>,
    edges: BTreeMap<EdgeWord, ExpEdge>,
    history: Vec<EdgeWord>,
}

impl From<GraphExpansion> for ExpansionRepr {
    fn from(g: GraphExpansion) -> Self {
        ExpansionRepr {
            system: g.system,
            history: g.history,
            vertices: g.vertices.into_iter().collect(),
            edges: g
                .edges
                .into_iter()
                .map(|(word, e)| EdgeRepr {
                    word,
                    from: e.from,
                    to: e.to,
                    color: e.color,
                })
                .collect(),
        }
    }
}

impl TryFrom<ExpansionRepr> for GraphExpansion {
    type Error = ReplacementError;

    /// Replays the history and checks the listed vertices and edges.
    fn try_from(r: ExpansionRepr) -> Result<Self, Self::Error> {
        let mut g = GraphExpansion::base(r.system)?;
        for e in &r.history {
            g.expand(e)?;
        }
        let vertices: BTreeSet<GluingVertex> = r.vertices.into_iter().collect();
        let edges: BTreeMap<EdgeWord, ExpEdge> = r
            .edges
            .into_iter()
            .map(|e| {
                (
                    e.word,
                    ExpEdge {
                        from: e.from,
                        to: e.to,
                        color: e.color,
                    },
                )
            })
            .collect();
        if vertices != g.vertices || edges != g.edges {
            return Err(ReplacementError::InvalidExpansion(
                "vertices or edges disagree with the expansion history".into(),
            ));
        }
        Ok(g)
    }
}

/// An expansion with vertices and edges numbered, for graph algorithms.
pub(crate) struct Indexed {
    pub verts: Vec<GluingVertex>,
    pub index: BTreeMap<GluingVertex, usize>,
    pub words: Vec<EdgeWord>,
    pub colors: Vec<String>,
    pub graph: Multigraph,
}

impl GraphExpansion {
    /// The base graph, as an expansion with empty history.
    pub fn base(system: ReplacementSystem) -> Result<Self, ReplacementError> {
        system.validate()?;
        let vertices = (0..system.base.vertices).map(GluingVertex::base).collect();
        let edges = system
            .base
            .edges
            .iter()
            .map(|e| {
                (
                    EdgeWord::new([e.name.clone()]),
                    ExpEdge {
                        from: GluingVertex::base(e.from),
                        to: GluingVertex::base(e.to),
                        color: e.color.clone(),
                    },
                )
            })
            .collect();
        Ok(GraphExpansion {
            system,
            vertices,
            edges,
            history: Vec::new(),
        })
    }

    pub fn system(&self) -> &ReplacementSystem {
        &self.system
    }

    pub fn vertices(&self) -> impl Iterator<Item = &GluingVertex> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeWord, &ExpEdge)> {
        self.edges.iter()
    }

    pub fn edge(&self, w: &EdgeWord) -> Option<&ExpEdge> {
        self.edges.get(w)
    }

    pub fn contains_vertex(&self, v: &GluingVertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn history(&self) -> &[EdgeWord] {
        &self.history
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The edges lying in the cell of `w`: those whose word extends `w`.
    pub fn cell(&self, w: &EdgeWord) -> Vec<&EdgeWord> {
        self.edges.keys().filter(|x| w.is_prefix_of(x)).collect()
    }

    /// Replaces `e` by a copy of its color's replacement graph in place.
    pub(crate) fn expand(&mut self, e: &EdgeWord) -> Result<(), ReplacementError> {
        let edge = self
            .edges
            .remove(e)
            .ok_or_else(|| ReplacementError::NoSuchEdge(e.to_string()))?;
        let r = self.system.replacement(&edge.color)?.clone();
        let map = |v: usize| {
            if v == r.iota {
                edge.from.clone()
            } else if v == r.tau {
                edge.to.clone()
            } else {
                GluingVertex {
                    word: e.clone(),
                    local: v,
                }
            }
        };
        for v in 0..r.graph.vertices {
            self.vertices.insert(map(v));
        }
        for x in &r.graph.edges {
            self.edges.insert(
                e.child(&x.name),
                ExpEdge {
                    from: map(x.from),
                    to: map(x.to),
                    color: x.color.clone(),
                },
            );
        }
        self.history.push(e.clone());
        Ok(())
    }

    /// Expands every edge once.
    pub fn expand_all(&self) -> Self {
        let mut g = self.clone();
        for e in self.edges.keys() {
            g.expand(e).expect("edge present");
        }
        g
    }

    pub(crate) fn indexed(&self) -> Indexed {
        let verts: Vec<GluingVertex> = self.vertices.iter().cloned().collect();
        let index: BTreeMap<GluingVertex, usize> = verts.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut words = Vec::new();
        let mut colors = Vec::new();
        let mut pairs = Vec::new();
        for (w, e) in &self.edges {
            words.push(w.clone());
            colors.push(e.color.clone());
            pairs.push((index[&e.from], index[&e.to]));
        }
        Indexed {
            graph: Multigraph::new(verts.len(), pairs),
            verts,
            index,
            words,
            colors,
        }
    }

    /// DOT with edges labeled by their words and colored by their colors.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n  node [shape=point];\n", self.system.name);
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (w, e) in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{w}\", color=\"{}\"];",
                e.from, e.to, e.color
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, ReplacementError> {
        serde_json::from_str(s).map_err(|e| ReplacementError::InvalidExpansion(e.to_string()))
    }
}

/// Expands `e` in a copy of `g`.
pub fn expand_edge(g: &GraphExpansion, e: &EdgeWord) -> Result<GraphExpansion, ReplacementError> {
    let mut h = g.clone();
    h.expand(e)?;
    Ok(h)
}

/// The base graph with every edge expanded, `depth` times over.
pub fn full_expansion(sys: &ReplacementSystem, depth: usize) -> Result<GraphExpansion, ReplacementError> {
    let mut g = GraphExpansion::base(sys.clone())?;
    for _ in 0..depth {
        g = g.expand_all();
    }
    Ok(g)
}
