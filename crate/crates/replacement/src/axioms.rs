//! Finite-depth checks of the rabbit and airplane axioms on expansions.
//!
//! Each axiom is replaced by a proxy visible in a finite expansion:
//! density by a suitable vertex inside every cell one or two levels down,
//! separation and disjointness through the block structure, and orders by
//! counting blocks at each vertex, required to agree one level deeper.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expansion::{full_expansion, GraphExpansion, Indexed};
use crate::system::ReplacementSystem;
use crate::ReplacementError;

/// The axiom family to check against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    /// An `n`-regular rabbit.
    Rabbit(usize),
    Airplane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Rabbit: points on several circles are dense. Airplane: cut points on
    /// circles are dense.
    Density,
    /// Rabbit: distinct circles are separated by a cut point. Airplane: by
    /// a third circle.
    Separation,
    /// Rabbit: arcs between points of circles lie in finitely many circles.
    Finiteness,
    /// Airplane: distinct circles are disjoint.
    Disjointness,
    /// Rabbit: every cut point has order `n`. Airplane: order 2.
    Order,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Density => "density",
            Condition::Separation => "separation",
            Condition::Finiteness => "finiteness",
            Condition::Disjointness => "disjointness",
            Condition::Order => "order",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub condition: Condition,
    pub description: String,
    pub passed: bool,
    pub failures: usize,
    pub example: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub system: String,
    pub which: Which,
    pub depth: usize,
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<Condition> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.condition).collect()
    }
}

/// Block structure of one expansion.
struct Blocks {
    ix: Indexed,
    blocks: Vec<Vec<usize>>,
    /// Whether each block contains a cycle, and whether it is one cycle.
    cyclic: Vec<bool>,
    simple: Vec<bool>,
    /// Block indices at each vertex.
    at: Vec<Vec<usize>>,
}

impl Blocks {
    fn new(g: &GraphExpansion) -> Self {
        let ix = g.indexed();
        let blocks = ix.graph.blocks();
        let simple: Vec<bool> = blocks.iter().map(|b| ix.graph.is_simple_cycle(b)).collect();
        let cyclic: Vec<bool> = blocks.iter().zip(&simple).map(|(b, s)| *s || b.len() > 1).collect();
        let mut at = vec![Vec::new(); ix.verts.len()];
        for (i, b) in blocks.iter().enumerate() {
            for v in ix.graph.vertices_of(b) {
                at[v].push(i);
            }
        }
        Blocks {
            ix,
            blocks,
            cyclic,
            simple,
            at,
        }
    }

    /// Components of the realization minus `v` (the graphs are connected).
    fn order(&self, v: usize) -> usize {
        self.at[v].len()
    }

    /// Cycles through `v`, counting a block with several cycles as two.
    fn cycles_through(&self, v: usize) -> usize {
        self.at[v]
            .iter()
            .filter(|&&b| self.cyclic[b])
            .map(|&b| if self.simple[b] { 1 } else { 2 })
            .sum()
    }

    fn on_cycle(&self, v: usize) -> bool {
        self.at[v].iter().any(|&b| self.cyclic[b])
    }
}

fn result(condition: Condition, description: String, bad: Vec<String>) -> CheckResult {
    CheckResult {
        condition,
        description,
        passed: bad.is_empty(),
        failures: bad.len(),
        example: bad.into_iter().next(),
    }
}

/// Checks the axioms of `which` on the depth-`depth` expansion of `sys`,
/// looking one level deeper (two for density when needed).
pub fn check_axioms(sys: &ReplacementSystem, which: Which, depth: usize) -> Result<AxiomReport, ReplacementError> {
    let g = full_expansion(sys, depth)?;
    let g1 = g.expand_all();
    let (b0, b1) = (Blocks::new(&g), Blocks::new(&g1));
    let mut b2: Option<Blocks> = None;

    // Density: the cell of every edge holds a suitable vertex.
    let good = |b: &Blocks, v: usize| match which {
        Which::Rabbit(_) => b.cycles_through(v) >= 2,
        Which::Airplane => b.on_cycle(v) && b.order(v) >= 2,
    };
    let mut bad = Vec::new();
    for w in &b0.ix.words {
        let found1 = b1
            .ix
            .verts
            .iter()
            .enumerate()
            .any(|(k, v)| v.word == *w && good(&b1, k));
        if found1 {
            continue;
        }
        let b2 = b2.get_or_insert_with(|| Blocks::new(&g1.expand_all()));
        let found2 = b2
            .ix
            .verts
            .iter()
            .enumerate()
            .any(|(k, v)| w.is_prefix_of(&v.word) && good(b2, k));
        if !found2 {
            bad.push(format!("cell {w}"));
        }
    }
    let mut checks = vec![result(
        Condition::Density,
        match which {
            Which::Rabbit(_) => "points on several circles are dense".into(),
            Which::Airplane => "cut points on circles are dense".into(),
        },
        bad,
    )];

    let first_edge = |b: usize| b0.ix.words[b0.blocks[b][0]].to_string();
    match which {
        Which::Rabbit(n) => {
            let bad = (0..b0.blocks.len())
                .filter(|&b| b0.cyclic[b] && !b0.simple[b])
                .map(|b| format!("circles through {} share more than a cut point", first_edge(b)))
                .collect();
            checks.push(result(
                Condition::Separation,
                "distinct circles are separated by a cut point".into(),
                bad,
            ));
            let bad = (0..b0.blocks.len())
                .filter(|&b| !b0.cyclic[b])
                .map(|b| format!("edge {} lies on no circle", first_edge(b)))
                .collect();
            checks.push(result(
                Condition::Finiteness,
                "arcs between points of circles lie in finitely many circles".into(),
                bad,
            ));
            checks.push(order_check(&b0, &b1, format!("every cut point has order {n}"), |o| {
                o == n
            }));
        }
        Which::Airplane => {
            let sep = sys.separating_colors();
            checks.push(result(
                Condition::Separation,
                "distinct circles are separated by a third circle".into(),
                unseparated(&b0, &sep),
            ));
            let mut bad: Vec<String> = (0..b0.blocks.len())
                .filter(|&b| b0.cyclic[b] && !b0.simple[b])
                .map(|b| format!("circles through {} share an edge", first_edge(b)))
                .collect();
            bad.extend(
                (0..b0.ix.verts.len())
                    .filter(|&v| b0.at[v].iter().filter(|&&b| b0.cyclic[b]).count() > 1)
                    .map(|v| format!("circles meet at {}", b0.ix.verts[v])),
            );
            checks.push(result(
                Condition::Disjointness,
                "distinct circles are disjoint".into(),
                bad,
            ));
            checks.push(order_check(&b0, &b1, "every cut point has order 2".into(), |o| o <= 2));
        }
    }
    Ok(AxiomReport {
        system: sys.name.clone(),
        which,
        depth,
        checks,
    })
}

/// Orders of the vertices of `b0` must agree one level deeper and, for
/// cut points, satisfy `ok`.
fn order_check(b0: &Blocks, b1: &Blocks, description: String, ok: impl Fn(usize) -> bool) -> CheckResult {
    let mut bad = Vec::new();
    for (k, v) in b0.ix.verts.iter().enumerate() {
        let (o0, o1) = (b0.order(k), b1.order(b1.ix.index[v]));
        if o0 != o1 {
            bad.push(format!("order of {v} not stabilized: {o0} then {o1}"));
        } else if o0 >= 2 && !ok(o0) {
            bad.push(format!("{v} has order {o0}"));
        }
    }
    result(Condition::Order, description, bad)
}

/// Pairs of cycle blocks joined in the block-cut tree by bridges none of
/// whose colors forces a circle in between.
fn unseparated(b: &Blocks, separating: &BTreeSet<String>) -> Vec<String> {
    let g = &b.ix.graph;
    let mut bad = Vec::new();
    for start in (0..b.blocks.len()).filter(|&x| b.cyclic[x]) {
        // (block, vertex entered through, a separating bridge crossed)
        let mut stack: Vec<(usize, usize, bool)> = Vec::new();
        for u in g.vertices_of(&b.blocks[start]) {
            stack.extend(b.at[u].iter().filter(|&&x| x != start).map(|&x| (x, u, false)));
        }
        while let Some((x, u, crossed)) = stack.pop() {
            if b.cyclic[x] {
                if !crossed && start < x {
                    bad.push(format!(
                        "circles through {} and {} have no circle between them",
                        b.ix.words[b.blocks[start][0]], b.ix.words[b.blocks[x][0]]
                    ));
                }
                continue;
            }
            let k = b.blocks[x][0];
            let crossed = crossed || separating.contains(&b.ix.colors[k]);
            let (p, q) = g.edges()[k];
            let w = if p == u { q } else { p };
            stack.extend(b.at[w].iter().filter(|&&y| y != x).map(|&y| (y, w, crossed)));
        }
    }
    bad
}
