//! Legal colorings and finite truncations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::element::TreeElement;
use crate::shape::{Color, Degree, TreeShape, VertexAddress};
use crate::TreeError;

/// A coloring of half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegalColoring {
    /// The address-based rule `k(x, y) = c(y)`.
    Canonical(TreeShape),
    /// An explicit table over the half-edges of a truncation.
    Table(BTreeMap<(VertexAddress, VertexAddress), Color>),
}

/// The canonical coloring of `T_{n,∞}`.
pub fn canonical_coloring(n: u32) -> Result<LegalColoring, TreeError> {
    Ok(LegalColoring::Canonical(TreeShape::tree_of_circles(n)?))
}

impl LegalColoring {
    /// Color of the half-edge from `x` to `y`.
    pub fn color(&self, x: &VertexAddress, y: &VertexAddress) -> Option<Color> {
        match self {
            LegalColoring::Canonical(s) => Some(s.half_edge_color(x, y)),
            LegalColoring::Table(t) => t.get(&(x.clone(), y.clone())).cloned(),
        }
    }

    /// The coloring tabulated over the half-edges of `t`.
    pub fn tabulate(&self, t: &TruncatedTree) -> LegalColoring {
        let mut m = BTreeMap::new();
        for (x, y) in t.half_edges() {
            if let Some(c) = self.color(&x, &y) {
                m.insert((x, y), c);
            }
        }
        LegalColoring::Table(m)
    }

    /// The pushforward `k ∘ g⁻¹` on the half-edges of `t`.
    pub fn pushforward(&self, t: &TruncatedTree, g: &TreeElement) -> LegalColoring {
        let pre: BTreeMap<&VertexAddress, VertexAddress> = t.vertices().iter().map(|v| (v, g.preimage(v))).collect();
        let mut m = BTreeMap::new();
        for (x, y) in t.half_edges() {
            if let Some(c) = self.color(&pre[&x], &pre[&y]) {
                m.insert((x, y), c);
            }
        }
        LegalColoring::Table(m)
    }

    /// Overrides one half-edge color (tables only).
    pub fn with_color(mut self, x: VertexAddress, y: VertexAddress, c: Color) -> LegalColoring {
        if let LegalColoring::Table(t) = &mut self {
            t.insert((x, y), c);
        }
        self
    }
}

/// The ball of radius `radius` about the root, keeping `cap` half-edges
/// at each infinite-degree vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedTree {
    shape: TreeShape,
    radius: usize,
    cap: usize,
    vertices: Vec<VertexAddress>,
}

impl TruncatedTree {
    pub fn new(shape: TreeShape, radius: usize, cap: usize) -> Result<Self, TreeError> {
        if cap < 2 {
            return Err(TreeError::BadArity(cap as u32));
        }
        let mut vertices = vec![VertexAddress::root()];
        let mut frontier = 0;
        for _ in 0..radius {
            let end = vertices.len();
            for i in frontier..end {
                let v = vertices[i].clone();
                let k = if v.is_root() { cap } else { cap - 1 };
                for c in shape.child_colors(&v, k) {
                    vertices.push(v.child(c));
                }
            }
            frontier = end;
        }
        Ok(TruncatedTree {
            shape,
            radius,
            cap,
            vertices,
        })
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Vertices in breadth-first order.
    pub fn vertices(&self) -> &[VertexAddress] {
        &self.vertices
    }

    /// Materialized neighbors of `v`: parent first, then children.
    pub fn neighbors(&self, v: &VertexAddress) -> Vec<VertexAddress> {
        let mut out: Vec<VertexAddress> = v.parent().into_iter().collect();
        if v.depth() < self.radius {
            let k = if v.is_root() { self.cap } else { self.cap - 1 };
            out.extend(self.shape.child_colors(v, k).into_iter().map(|c| v.child(c)));
        }
        out
    }

    /// All materialized half-edges `(from, to)`.
    pub fn half_edges(&self) -> Vec<(VertexAddress, VertexAddress)> {
        let mut out = Vec::new();
        for v in &self.vertices[1..] {
            let p = v.parent().expect("non-root");
            out.push((p.clone(), v.clone()));
            out.push((v.clone(), p));
        }
        out
    }

    /// Graphviz rendering; each edge carries the colors of its two
    /// half-edges at the respective ends.
    pub fn to_dot(&self, k: &LegalColoring) -> String {
        let mut s = String::from("graph tree {\n  node [shape=circle, label=\"\"];\n");
        for v in &self.vertices {
            let shape = match self.shape.degree_at(v.depth()) {
                Degree::Infinite => "circle",
                Degree::Finite(_) => "point",
            };
            let _ = writeln!(s, "  \"{v}\" [shape={shape}, tooltip=\"{v}\"];");
        }
        for v in &self.vertices[1..] {
            let p = v.parent().expect("non-root");
            let down = k.color(&p, v).map(|c| c.to_string()).unwrap_or_default();
            let up = k.color(v, &p).map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(s, "  \"{p}\" -- \"{v}\" [taillabel=\"{down}\", headlabel=\"{up}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Which defining condition of a legal coloring failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Uncolored,
    /// A half-edge color from the wrong palette.
    WrongPalette,
    /// `out(v)` is not a bijection onto `1..n`.
    NotBijective,
    /// Two half-edges of `out(v)` share an angle.
    NotInjective,
    /// `k` is not constant on `in(v)`.
    InNotConstant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexAddress,
    pub kind: ViolationKind,
}

/// Checks the legal-coloring conditions at every materialized vertex,
/// returning the first violation in breadth-first order. Bijectivity onto
/// `1..n` is only checked at interior vertices, whose half-edges are all
/// materialized.
pub fn verify_legal(t: &TruncatedTree, k: &LegalColoring) -> Result<(), Violation> {
    let fail = |v: &VertexAddress, kind| {
        Err(Violation {
            vertex: v.clone(),
            kind,
        })
    };
    for v in t.vertices() {
        let nbs = t.neighbors(v);
        let d = t.shape().degree_at(v.depth());
        let mut outs = Vec::new();
        for w in &nbs {
            let Some(c) = k.color(v, w) else {
                return fail(v, ViolationKind::Uncolored);
            };
            if !TreeShape::color_fits(d, &c) {
                return fail(v, ViolationKind::WrongPalette);
            }
            outs.push(c);
        }
        let mut sorted = outs.clone();
        sorted.sort();
        sorted.dedup();
        let distinct = sorted.len() == outs.len();
        match d {
            Degree::Finite(n) if v.depth() < t.radius() => {
                if !distinct || sorted.len() != n as usize {
                    return fail(v, ViolationKind::NotBijective);
                }
            }
            Degree::Finite(_) if !distinct => return fail(v, ViolationKind::NotBijective),
            Degree::Infinite if !distinct => return fail(v, ViolationKind::NotInjective),
            _ => {}
        }
        let mut ins = Vec::new();
        for w in &nbs {
            let Some(c) = k.color(w, v) else {
                return fail(v, ViolationKind::Uncolored);
            };
            ins.push(c);
        }
        if ins.windows(2).any(|p| p[0] != p[1]) {
            return fail(v, ViolationKind::InNotConstant);
        }
    }
    Ok(())
}
