//! Tree shapes, colors and vertex addresses.
//!
//! A vertex is addressed by the word of half-edge colors read along the
//! geodesic from the root. Every vertex `v` has an *in-color* `c(v)`: the
//! common color of all half-edges pointing into `v`. For a non-root vertex
//! `c(u·ℓ) = ℓ`; the root's in-color is the reserved color of the depth-1
//! side. The canonical coloring then satisfies `k(x, y) = c(y)` for every
//! half-edge, and the children of a non-root vertex `a` are labelled by the
//! colors of its side other than `c(parent(a))`.

use std::fmt;
use std::str::FromStr;

use cyclic_order::{first_angle_avoiding, Angle};
use serde::{Deserialize, Serialize};

use crate::TreeError;

/// Degree of the vertices on one side of the bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DegreeRepr", into = "DegreeRepr")]
pub enum Degree {
    /// `n` neighbors, colored by `Ear(1..=n)`.
    Finite(u32),
    /// Countably many neighbors, colored by angles of Q/Z.
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DegreeRepr {
    Finite(u32),
    Named(String),
}

impl TryFrom<DegreeRepr> for Degree {
    type Error = String;
    fn try_from(r: DegreeRepr) -> Result<Self, String> {
        match r {
            DegreeRepr::Finite(n) if n >= 2 => Ok(Degree::Finite(n)),
            DegreeRepr::Finite(n) => Err(format!("degree {n} is below 2")),
            DegreeRepr::Named(s) if s == "infinite" => Ok(Degree::Infinite),
            DegreeRepr::Named(s) => Err(format!("unknown degree {s:?}")),
        }
    }
}

impl From<Degree> for DegreeRepr {
    fn from(d: Degree) -> Self {
        match d {
            Degree::Finite(n) => DegreeRepr::Finite(n),
            Degree::Infinite => DegreeRepr::Named("infinite".into()),
        }
    }
}

/// A half-edge color: an ear index on finite sides, an angle on infinite
/// sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Color {
    Ear(u32),
    Dense(Angle),
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Ear(i) => write!(f, "{i}"),
            Color::Dense(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for Color {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        if s.contains('/') {
            s.parse::<Angle>()
                .map(Color::Dense)
                .map_err(|e| TreeError::InvalidAddress(e.to_string()))
        } else {
            s.parse::<u32>()
                .map(Color::Ear)
                .map_err(|e| TreeError::InvalidAddress(format!("{s:?}: {e}")))
        }
    }
}

/// A vertex, as the color word along the geodesic from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexAddress(pub Vec<Color>);

impl VertexAddress {
    pub fn root() -> Self {
        VertexAddress(Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Color] {
        &self.0
    }

    pub fn child(&self, c: Color) -> Self {
        let mut w = self.0.clone();
        w.push(c);
        VertexAddress(w)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(VertexAddress(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn prefix(&self, len: usize) -> Self {
        VertexAddress(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &VertexAddress) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Length of the longest common prefix.
    pub fn lcp(&self, other: &VertexAddress) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    pub fn distance(&self, other: &VertexAddress) -> usize {
        self.depth() + other.depth() - 2 * self.lcp(other)
    }

    /// The vertex of `[self, other]` at distance `k` from `self`.
    pub fn toward(&self, other: &VertexAddress, k: usize) -> VertexAddress {
        let l = self.lcp(other);
        let up = self.depth() - l;
        if k <= up {
            self.prefix(self.depth() - k)
        } else {
            other.prefix(l + (k - up))
        }
    }

    /// The vertices of the geodesic from `self` to `other`, both included.
    pub fn path_to(&self, other: &VertexAddress) -> Vec<VertexAddress> {
        (0..=self.distance(other)).map(|k| self.toward(other, k)).collect()
    }

    /// Median (center) of three vertices.
    pub fn median(a: &VertexAddress, b: &VertexAddress, c: &VertexAddress) -> VertexAddress {
        let l = a.lcp(b).max(a.lcp(c)).max(b.lcp(c));
        let src = if a.lcp(b) == l || a.lcp(c) == l { a } else { b };
        src.prefix(l)
    }

    /// Whether `u` lies on the geodesic `[v, w]`.
    pub fn between(u: &VertexAddress, v: &VertexAddress, w: &VertexAddress) -> bool {
        u.distance(v) + u.distance(w) == v.distance(w)
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which side of the bipartition a vertex sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A biregular tree: degrees of the even-depth and odd-depth sides, with the
/// root on the even side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeShape {
    pub even: Degree,
    pub odd: Degree,
}

impl TreeShape {
    pub fn new(even: Degree, odd: Degree) -> Result<Self, TreeError> {
        for d in [even, odd] {
            if let Degree::Finite(n) = d {
                if n < 2 {
                    return Err(TreeError::BadArity(n));
                }
            }
        }
        Ok(TreeShape { even, odd })
    }

    /// `T_{n,∞}`: circles (infinite degree) at even depth, cut points of
    /// degree `n` at odd depth.
    pub fn tree_of_circles(n: u32) -> Result<Self, TreeError> {
        TreeShape::new(Degree::Infinite, Degree::Finite(n))
    }

    /// The regular tree `T_n`.
    pub fn regular(n: u32) -> Result<Self, TreeError> {
        TreeShape::new(Degree::Finite(n), Degree::Finite(n))
    }

    /// The regular tree `T_∞` of countably infinite degree.
    pub fn infinite() -> Self {
        TreeShape {
            even: Degree::Infinite,
            odd: Degree::Infinite,
        }
    }

    pub fn parity(depth: usize) -> Parity {
        if depth.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Degree of the side containing vertices at `depth`.
    pub fn degree_at(&self, depth: usize) -> Degree {
        match Self::parity(depth) {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    /// Reserved color of a side: ear 1 or angle 0.
    pub fn reserved(d: Degree) -> Color {
        match d {
            Degree::Finite(_) => Color::Ear(1),
            Degree::Infinite => Color::Dense(Angle::zero()),
        }
    }

    /// Whether `c` is a color of a side of degree `d`.
    pub fn color_fits(d: Degree, c: &Color) -> bool {
        match (d, c) {
            (Degree::Finite(n), Color::Ear(i)) => (1..=n).contains(i),
            (Degree::Infinite, Color::Dense(_)) => true,
            _ => false,
        }
    }

    /// In-color of `v`.
    pub fn in_color(&self, v: &VertexAddress) -> Color {
        match v.0.last() {
            Some(c) => c.clone(),
            None => Self::reserved(self.odd),
        }
    }

    /// In-color of the vertex given by the first `len` letters of `w`.
    pub fn in_color_of_prefix(&self, w: &[Color], len: usize) -> Color {
        if len == 0 {
            Self::reserved(self.odd)
        } else {
            w[len - 1].clone()
        }
    }

    /// The color that no child of `v` may carry (`c(parent(v))`), if any.
    pub fn excluded_child_color(&self, v: &VertexAddress) -> Option<Color> {
        v.parent().map(|p| self.in_color(&p))
    }

    pub fn validate(&self, v: &VertexAddress) -> Result<(), TreeError> {
        for (i, c) in v.0.iter().enumerate() {
            if !Self::color_fits(self.degree_at(i), c) {
                return Err(TreeError::InvalidAddress(format!(
                    "{v}: letter {c} does not fit the side at depth {i}"
                )));
            }
            if i >= 1 && *c == self.in_color_of_prefix(&v.0, i - 1) {
                return Err(TreeError::InvalidAddress(format!(
                    "{v}: letter {c} at position {i} points back to the parent"
                )));
            }
        }
        Ok(())
    }

    /// The neighbor of `a` across the half-edge of color `m`.
    pub fn neighbor(&self, a: &VertexAddress, m: &Color) -> VertexAddress {
        if let Some(p) = a.parent() {
            if self.in_color(&p) == *m {
                return p;
            }
        }
        a.child(m.clone())
    }

    /// Color of the half-edge from `x` to its neighbor `y`.
    pub fn half_edge_color(&self, _x: &VertexAddress, y: &VertexAddress) -> Color {
        self.in_color(y)
    }

    /// Whether `m` labels a child of `v`.
    pub fn is_child_color(&self, v: &VertexAddress, m: &Color) -> bool {
        Self::color_fits(self.degree_at(v.depth()), m) && self.excluded_child_color(v).as_ref() != Some(m)
    }

    /// The first `cap` child colors of `v` (all of them on a finite side),
    /// angles taken in height order.
    pub fn child_colors(&self, v: &VertexAddress, cap: usize) -> Vec<Color> {
        let ex = self.excluded_child_color(v);
        match self.degree_at(v.depth()) {
            Degree::Finite(n) => (1..=n).map(Color::Ear).filter(|c| Some(c) != ex.as_ref()).collect(),
            Degree::Infinite => cyclic_order::angles_by_height()
                .map(Color::Dense)
                .filter(|c| Some(c) != ex.as_ref())
                .take(cap)
                .collect(),
        }
    }

    /// A child color of `v` avoiding all of `taken`; `None` when a finite
    /// side is exhausted.
    pub fn free_child_color<'a>(&self, v: &VertexAddress, taken: impl Iterator<Item = &'a Color>) -> Option<Color> {
        let mut taken: Vec<&Color> = taken.collect();
        let ex = self.excluded_child_color(v);
        if let Some(e) = &ex {
            taken.push(e);
        }
        match self.degree_at(v.depth()) {
            Degree::Finite(n) => (1..=n).map(Color::Ear).find(|c| !taken.contains(&c)),
            Degree::Infinite => {
                let angles: Vec<Angle> = taken
                    .iter()
                    .filter_map(|c| match c {
                        Color::Dense(a) => Some(a.clone()),
                        Color::Ear(_) => None,
                    })
                    .collect();
                Some(Color::Dense(first_angle_avoiding(&angles)))
            }
        }
    }
}
