//! Replacement systems: a colored base graph and one replacement graph per
//! color, with distinguished initial and terminal vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::Multigraph;
use crate::word::{EdgeWord, GluingVertex};
use crate::ReplacementError;

/// A directed, colored edge between vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEdge {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub color: String,
}

/// A graph on vertices `0..vertices`; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepGraph {
    pub vertices: usize,
    pub edges: Vec<RepEdge>,
}

/// The replacement graph of one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    #[serde(flatten)]
    pub graph: RepGraph,
    pub iota: usize,
    pub tau: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplacementSystem {
    pub name: String,
    pub colors: Vec<String>,
    pub base: RepGraph,
    pub replacements: BTreeMap<String, Replacement>,
}

fn edge(name: impl Into<String>, from: usize, to: usize, color: &str) -> RepEdge {
    RepEdge {
        name: name.into(),
        from,
        to,
        color: color.to_string(),
    }
}

const BLACK: &str = "black";

impl RepGraph {
    pub fn multigraph(&self) -> Multigraph {
        Multigraph::new(self.vertices, self.edges.iter().map(|e| (e.from, e.to)).collect())
    }

    fn validate(&self, what: &str, colors: &[String]) -> Result<(), ReplacementError> {
        let bad = |m: String| Err(ReplacementError::InvalidSystem(format!("{what}: {m}")));
        let mut names = BTreeSet::new();
        for e in &self.edges {
            if e.name.is_empty() {
                return bad("edge with an empty name".into());
            }
            if !names.insert(&e.name) {
                return bad(format!("duplicate edge name {}", e.name));
            }
            if e.from >= self.vertices || e.to >= self.vertices {
                return bad(format!("edge {} leaves the vertex range", e.name));
            }
            if !colors.contains(&e.color) {
                return bad(format!("edge {} has undeclared color {}", e.name, e.color));
            }
        }
        Ok(())
    }
}

impl ReplacementSystem {
    /// Loops `L`, `R` at one vertex; each loop becomes `0`, a loop `1`, `2`.
    pub fn basilica() -> Self {
        ReplacementSystem {
            name: "basilica".into(),
            colors: vec![BLACK.into()],
            base: RepGraph {
                vertices: 1,
                edges: vec![edge("L", 0, 0, BLACK), edge("R", 0, 0, BLACK)],
            },
            replacements: [(
                BLACK.to_string(),
                Replacement {
                    graph: RepGraph {
                        vertices: 3,
                        edges: vec![edge("0", 0, 1, BLACK), edge("1", 1, 1, BLACK), edge("2", 1, 2, BLACK)],
                    },
                    iota: 0,
                    tau: 2,
                },
            )]
            .into(),
        }
    }

    /// A bouquet of loops `X1 … Xn`; each loop becomes a path `0`, `n` with
    /// loops `1 … n−1` at its middle vertex.
    pub fn rabbit(n: usize) -> Result<Self, ReplacementError> {
        if n < 2 {
            return Err(ReplacementError::InvalidSystem(format!("rabbits need n ≥ 2, got {n}")));
        }
        let mut rep = vec![edge("0", 0, 1, BLACK)];
        rep.extend((1..n).map(|k| edge(k.to_string(), 1, 1, BLACK)));
        rep.push(edge(n.to_string(), 1, 2, BLACK));
        Ok(ReplacementSystem {
            name: format!("rabbit{n}"),
            colors: vec![BLACK.into()],
            base: RepGraph {
                vertices: 1,
                edges: (1..=n).map(|k| edge(format!("X{k}"), 0, 0, BLACK)).collect(),
            },
            replacements: [(
                BLACK.to_string(),
                Replacement {
                    graph: RepGraph {
                        vertices: 3,
                        edges: rep,
                    },
                    iota: 0,
                    tau: 2,
                },
            )]
            .into(),
        })
    }

    /// A blue edge `s`. Blue becomes blue `b1`, the red cycle `b2`, `b3`
    /// and blue `b4`; red becomes red `r1`, `r2` with a blue `r3` hanging
    /// from the middle.
    pub fn airplane() -> Self {
        let (blue, red) = ("blue", "red");
        ReplacementSystem {
            name: "airplane".into(),
            colors: vec![blue.into(), red.into()],
            base: RepGraph {
                vertices: 2,
                edges: vec![edge("s", 0, 1, blue)],
            },
            replacements: [
                (
                    blue.to_string(),
                    Replacement {
                        graph: RepGraph {
                            vertices: 4,
                            edges: vec![
                                edge("b1", 1, 0, blue),
                                edge("b2", 2, 1, red),
                                edge("b3", 1, 2, red),
                                edge("b4", 2, 3, blue),
                            ],
                        },
                        iota: 0,
                        tau: 3,
                    },
                ),
                (
                    red.to_string(),
                    Replacement {
                        graph: RepGraph {
                            vertices: 4,
                            edges: vec![edge("r1", 0, 1, red), edge("r2", 1, 2, red), edge("r3", 1, 3, blue)],
                        },
                        iota: 0,
                        tau: 2,
                    },
                ),
            ]
            .into(),
        }
    }

    /// Three parallel edges `l`, `c`, `r`; each becomes `1`, the 2-cycle
    /// `2`, `3`, and `4`. Arcs through it never stabilize.
    pub fn bubble_bath() -> Self {
        ReplacementSystem {
            name: "bubble-bath".into(),
            colors: vec![BLACK.into()],
            base: RepGraph {
                vertices: 2,
                edges: vec![edge("l", 0, 1, BLACK), edge("c", 0, 1, BLACK), edge("r", 0, 1, BLACK)],
            },
            replacements: [(
                BLACK.to_string(),
                Replacement {
                    graph: RepGraph {
                        vertices: 4,
                        edges: vec![
                            edge("1", 1, 0, BLACK),
                            edge("2", 2, 1, BLACK),
                            edge("3", 1, 2, BLACK),
                            edge("4", 2, 3, BLACK),
                        ],
                    },
                    iota: 0,
                    tau: 3,
                },
            )]
            .into(),
        }
    }

    /// Looks up a builtin: `basilica`, `airplane`, `bubble-bath`, or
    /// `rabbitN` / `rabbit:N`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "basilica" => Some(Self::basilica()),
            "airplane" => Some(Self::airplane()),
            "bubble-bath" | "bubble_bath" => Some(Self::bubble_bath()),
            _ => {
                let n = name.strip_prefix("rabbit")?;
                let n = n.strip_prefix(':').unwrap_or(n);
                Self::rabbit(n.parse().ok()?).ok()
            }
        }
    }

    pub fn validate(&self) -> Result<(), ReplacementError> {
        let bad = |m: String| Err(ReplacementError::InvalidSystem(m));
        if self.colors.is_empty() {
            return bad("no colors".into());
        }
        if self.colors.iter().collect::<BTreeSet<_>>().len() != self.colors.len() {
            return bad("duplicate colors".into());
        }
        self.base.validate("base graph", &self.colors)?;
        for c in &self.colors {
            let Some(r) = self.replacements.get(c) else {
                return bad(format!("no replacement graph for color {c}"));
            };
            r.graph.validate(&format!("replacement graph {c}"), &self.colors)?;
            if r.iota >= r.graph.vertices || r.tau >= r.graph.vertices {
                return bad(format!("replacement graph {c}: iota/tau out of range"));
            }
            if r.iota == r.tau {
                return bad(format!("replacement graph {c}: iota equals tau"));
            }
        }
        if let Some(c) = self.replacements.keys().find(|c| !self.colors.contains(c)) {
            return bad(format!("replacement graph for undeclared color {c}"));
        }
        Ok(())
    }

    pub fn replacement(&self, color: &str) -> Result<&Replacement, ReplacementError> {
        self.replacements
            .get(color)
            .ok_or_else(|| ReplacementError::InvalidSystem(format!("no replacement graph for color {color}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, ReplacementError> {
        let sys: ReplacementSystem =
            serde_json::from_str(s).map_err(|e| ReplacementError::InvalidSystem(e.to_string()))?;
        sys.validate()?;
        Ok(sys)
    }

    /// The endpoints of `word` after expanding `e` one more step with
    /// `symbol`, given `e`'s endpoints and color.
    pub(crate) fn step_endpoints(
        &self,
        e: &EdgeWord,
        from: &GluingVertex,
        to: &GluingVertex,
        color: &str,
        symbol: &str,
    ) -> Result<(GluingVertex, GluingVertex, String), ReplacementError> {
        let r = self.replacement(color)?;
        let x = r.graph.edges.iter().find(|x| x.name == symbol).ok_or_else(|| {
            ReplacementError::InvalidWord(format!("{e}{symbol}: no edge {symbol} in replacement graph {color}"))
        })?;
        let map = |v: usize| {
            if v == r.iota {
                from.clone()
            } else if v == r.tau {
                to.clone()
            } else {
                GluingVertex {
                    word: e.clone(),
                    local: v,
                }
            }
        };
        Ok((map(x.from), map(x.to), x.color.clone()))
    }

    /// The endpoints and color of the edge named by `word`.
    pub fn endpoints(&self, word: &EdgeWord) -> Result<(GluingVertex, GluingVertex, String), ReplacementError> {
        let Some(first) = word.symbols().first() else {
            return Err(ReplacementError::InvalidWord("empty word".into()));
        };
        let e = self
            .base
            .edges
            .iter()
            .find(|e| e.name == *first)
            .ok_or_else(|| ReplacementError::InvalidWord(format!("{first} is not a base edge")))?;
        let mut cur = (GluingVertex::base(e.from), GluingVertex::base(e.to), e.color.clone());
        for k in 1..word.len() {
            cur = self.step_endpoints(&word.prefix(k), &cur.0, &cur.1, &cur.2, &word.symbols()[k])?;
        }
        Ok(cur)
    }

    /// Splits a concatenated word such as `sb2r1` into symbols, trying the
    /// edge names valid at each position.
    pub fn parse_word(&self, s: &str) -> Result<EdgeWord, ReplacementError> {
        fn go(sys: &ReplacementSystem, rest: &str, color: Option<&str>, acc: &mut Vec<String>) -> bool {
            if rest.is_empty() {
                return !acc.is_empty();
            }
            let edges = match color {
                None => &sys.base.edges,
                Some(c) => match sys.replacements.get(c) {
                    Some(r) => &r.graph.edges,
                    None => return false,
                },
            };
            for e in edges {
                if let Some(tail) = rest.strip_prefix(e.name.as_str()) {
                    acc.push(e.name.clone());
                    if go(sys, tail, Some(&e.color), acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        if go(self, s, None, &mut acc) {
            Ok(EdgeWord(acc))
        } else {
            Err(ReplacementError::InvalidWord(s.to_string()))
        }
    }

    /// The undirected `ι_c → τ_c` paths of a replacement graph, as edge
    /// indices.
    fn crossing_paths(&self, color: &str) -> Vec<Vec<usize>> {
        let r = &self.replacements[color];
        r.graph
            .multigraph()
            .simple_paths(r.iota, r.tau, 10_000)
            .unwrap_or_default()
    }

    /// Colors whose arcs are determined: exactly one `ι_c → τ_c` path, all
    /// of whose colors are determined too.
    pub fn determined_colors(&self) -> BTreeSet<String> {
        let mut det: BTreeSet<String> = self
            .colors
            .iter()
            .filter(|c| self.crossing_paths(c).len() == 1)
            .cloned()
            .collect();
        loop {
            let keep: BTreeSet<String> = det
                .iter()
                .filter(|c| {
                    let r = &self.replacements[*c];
                    self.crossing_paths(c)[0]
                        .iter()
                        .all(|&k| det.contains(&r.graph.edges[k].color))
                })
                .cloned()
                .collect();
            if keep == det {
                return det;
            }
            det = keep;
        }
    }

    /// Whether every arc between vertices of an expansion is determined by
    /// a path of that expansion (every color is determined).
    pub fn stabilizes(&self) -> bool {
        self.determined_colors().len() == self.colors.len()
    }

    /// Colors `c` whose `ι_c`, `τ_c` stay connected through `depth` further
    /// rounds of expansion.
    pub fn passable_colors(&self, depth: usize) -> BTreeSet<String> {
        let mut ok: BTreeSet<String> = self.colors.iter().cloned().collect();
        for _ in 0..depth {
            ok = self
                .colors
                .iter()
                .filter(|c| {
                    let r = &self.replacements[*c];
                    let edges: Vec<(usize, usize)> = r
                        .graph
                        .edges
                        .iter()
                        .filter(|e| ok.contains(&e.color))
                        .map(|e| (e.from, e.to))
                        .collect();
                    let g = Multigraph::new(r.graph.vertices, edges);
                    // With a cap of zero, `None` means some path exists.
                    g.simple_paths(r.iota, r.tau, 0).is_none()
                })
                .cloned()
                .collect();
        }
        ok
    }

    /// Colors whose cells always put a circle across every arc between
    /// their endpoints: each `ι_c → τ_c` path meets a cycle of `R_c` or an
    /// edge of such a color.
    pub fn separating_colors(&self) -> BTreeSet<String> {
        let mut sep: BTreeSet<String> = BTreeSet::new();
        loop {
            let next: BTreeSet<String> = self
                .colors
                .iter()
                .filter(|c| {
                    let r = &self.replacements[*c];
                    let g = r.graph.multigraph();
                    let on_cycle: BTreeSet<usize> = g
                        .blocks()
                        .into_iter()
                        .filter(|b| b.len() > 1 || g.is_simple_cycle(b))
                        .flatten()
                        .collect();
                    let paths = self.crossing_paths(c);
                    !paths.is_empty()
                        && paths.iter().all(|p| {
                            p.iter().any(|&k| {
                                let (a, b) = g.edges()[k];
                                on_cycle.contains(&k)
                                    || sep.contains(&r.graph.edges[k].color)
                                    || g.incident(a).iter().any(|(e, _)| on_cycle.contains(e))
                                    || g.incident(b).iter().any(|(e, _)| on_cycle.contains(e))
                            })
                        })
                })
                .cloned()
                .collect();
            if next == sep {
                return sep;
            }
            sep = next;
        }
    }

    /// `Some(n)` if this is structurally the `n`-rabbit system: one color,
    /// a bouquet of `n ≥ 2` loops, and a replacement path of length two with
    /// `n − 1` loops at its middle.
    pub fn rabbit_arity(&self) -> Option<usize> {
        if self.colors.len() != 1 || self.base.vertices != 1 {
            return None;
        }
        let n = self.base.edges.len();
        let r = self.replacements.get(&self.colors[0])?;
        if n < 2 || r.graph.vertices != 3 || r.graph.edges.len() != n + 1 {
            return None;
        }
        let mid = (0..3).find(|&v| v != r.iota && v != r.tau)?;
        let count = |a: usize, b: usize| r.graph.edges.iter().filter(|e| e.from == a && e.to == b).count();
        (count(r.iota, mid) == 1 && count(mid, r.tau) == 1 && count(mid, mid) == n - 1).then_some(n)
    }

    /// Whether this is structurally the airplane system, up to names.
    pub fn is_airplane(&self) -> bool {
        let [b, r] = &self.colors[..] else { return false };
        let check = |blue: &str, red: &str| -> Option<()> {
            let base = &self.base;
            (base.vertices == 2
                && base.edges.len() == 1
                && base.edges[0].color == blue
                && base.edges[0].from != base.edges[0].to)
                .then_some(())?;
            let rb = self.replacements.get(blue)?;
            let rr = self.replacements.get(red)?;
            let touches = |e: &RepEdge, v: usize| e.from == v || e.to == v;
            let shape = |g: &RepGraph, reds: usize, blues: usize| {
                g.edges.iter().filter(|e| e.color == red).count() == reds
                    && g.edges.iter().filter(|e| e.color == blue).count() == blues
            };
            (rb.graph.vertices == 4 && shape(&rb.graph, 2, 2)).then_some(())?;
            let reds: Vec<&RepEdge> = rb.graph.edges.iter().filter(|e| e.color == red).collect();
            let (x, y) = (reds[0].from, reds[0].to);
            let cycle_ok = x != y
                && [x, y].iter().all(|v| *v != rb.iota && *v != rb.tau)
                && touches(reds[1], x)
                && touches(reds[1], y);
            let blues_ok = rb
                .graph
                .edges
                .iter()
                .filter(|e| e.color == blue)
                .all(|e| (touches(e, rb.iota) || touches(e, rb.tau)) && (touches(e, x) || touches(e, y)));
            (cycle_ok && blues_ok).then_some(())?;
            (rr.graph.vertices == 4 && shape(&rr.graph, 2, 1)).then_some(())?;
            let mid = (0..4).find(|&v| {
                v != rr.iota && rr.graph.edges.iter().any(|e| e.color == blue && touches(e, v)) && v != rr.tau
            })?;
            let path_ok = rr
                .graph
                .edges
                .iter()
                .filter(|e| e.color == red)
                .all(|e| touches(e, mid) && (touches(e, rr.iota) || touches(e, rr.tau)));
            let pendant = rr.graph.edges.iter().find(|e| e.color == blue)?;
            let leaf = if pendant.from == mid { pendant.to } else { pendant.from };
            (path_ok && leaf != mid && leaf != rr.iota && leaf != rr.tau).then_some(())
        };
        check(b, r).is_some() || check(r, b).is_some()
    }
}
