//! A quasi-isometry `T_∞ → T_{k,∞}`.
//!
//! The map is built sphere by sphere from the basepoint. The first sphere
//! maps bijectively. Below an odd-depth vertex `u`, the children of `u`
//! (all angles except the one `r` pointing back) are split into `k − 1`
//! arcs of equal length starting at `r`, and arc `i` goes to the `i`-th
//! child of `f(u)`. Below an even-depth vertex, all grandchildren of the
//! odd-depth vertex above that land on the same child of its image are
//! pooled and matched bijectively, via Cantor pairing of height-order
//! indices, with the children of that image. The map is 1-Lipschitz,
//! preserves the distance to the basepoint, and is injective on odd spheres.

use std::collections::HashMap;

use cyclic_order::{angle_index_where, cantor_pair, nth_angle_where, Angle};
use num_traits::ToPrimitive;

use crate::coloring::TruncatedTree;
use crate::shape::{Color, TreeShape, VertexAddress};
use crate::TreeError;

#[derive(Clone, Debug)]
pub struct QiMap {
    k: u32,
    radius: usize,
    source: TreeShape,
    target: TreeShape,
}

fn angle(c: &Color) -> Result<&Angle, TreeError> {
    match c {
        Color::Dense(a) => Ok(a),
        Color::Ear(_) => Err(TreeError::InvalidAddress(format!("{c} is not an angle"))),
    }
}

impl QiMap {
    pub fn new(k: u32, radius: usize) -> Result<Self, TreeError> {
        Ok(QiMap {
            k,
            radius,
            source: TreeShape::infinite(),
            target: TreeShape::tree_of_circles(k)?,
        })
    }

    pub fn source(&self) -> TreeShape {
        self.source
    }

    pub fn target(&self) -> TreeShape {
        self.target
    }

    /// Which of the `k − 1` arcs starting at `r` contains `a ≠ r`.
    fn slot(&self, a: &Angle, r: &Angle) -> u32 {
        let x = a.sub(r).value() * num_rational::BigRational::from_integer((self.k - 1).into());
        x.floor().to_integer().to_u32().expect("slot below k")
    }

    pub fn map(&self, v: &VertexAddress) -> Result<VertexAddress, TreeError> {
        if v.depth() > self.radius {
            return Err(TreeError::OutOfRadius);
        }
        self.source.validate(v)?;
        let w = v.letters();
        let mut images: Vec<VertexAddress> = vec![VertexAddress::root()];
        for n in 1..=w.len() {
            let a = angle(&w[n - 1])?;
            let fu = &images[n - 1];
            let next = if n == 1 {
                VertexAddress::root().child(w[0].clone())
            } else if n % 2 == 0 {
                // u = v[..n-1] has odd depth; its children avoid r = c(parent(u)).
                let r = self.source.in_color_of_prefix(w, n - 2);
                let i = self.slot(a, angle(&r)?);
                let colors = self.target.child_colors(fu, 0);
                fu.child(colors[i as usize].clone())
            } else {
                // u = u'·a' with u' of odd depth n − 2.
                let a1 = angle(&w[n - 2])?;
                let r1 = self.source.in_color_of_prefix(w, n - 3);
                let r1 = angle(&r1)?.clone();
                let slot = self.slot(a1, &r1);
                let alpha =
                    angle_index_where(a1, |x| *x != r1 && self.slot(x, &r1) == slot).expect("a' is a child of u'");
                let cu1 = angle(&w[n - 3])?.clone();
                let beta = angle_index_where(a, |x| *x != cu1).expect("a is a child of u");
                let back = self.target.in_color(&images[n - 2]);
                let back = angle(&back)?.clone();
                let m = cantor_pair(alpha, beta);
                fu.child(Color::Dense(nth_angle_where(m, |x| *x != back)))
            };
            images.push(next);
        }
        Ok(images.pop().expect("non-empty"))
    }
}

/// Outcome of the exhaustive distortion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QiReport {
    pub vertices: usize,
    pub pairs: usize,
    /// Pairs violating `d − 2 ≤ d(f·) ≤ d`.
    pub distortion_violations: usize,
    /// Vertices whose distance to the basepoint changed.
    pub basepoint_violations: usize,
    /// Collisions among images of odd-depth vertices.
    pub odd_collisions: usize,
    /// Edges not sent to edges.
    pub edge_violations: usize,
}

impl QiReport {
    pub fn passed(&self) -> bool {
        self.distortion_violations == 0
            && self.basepoint_violations == 0
            && self.odd_collisions == 0
            && self.edge_violations == 0
    }
}

/// Vertices interned as a rooted forest for fast distance queries.
struct Interned {
    parent: Vec<usize>,
    depth: Vec<usize>,
    ids: HashMap<VertexAddress, usize>,
}

impl Interned {
    fn new() -> Self {
        let mut ids = HashMap::new();
        ids.insert(VertexAddress::root(), 0);
        Interned {
            parent: vec![0],
            depth: vec![0],
            ids,
        }
    }

    fn intern(&mut self, v: &VertexAddress) -> usize {
        if let Some(&i) = self.ids.get(v) {
            return i;
        }
        let p = self.intern(&v.parent().expect("root is interned"));
        let i = self.parent.len();
        self.parent.push(p);
        self.depth.push(v.depth());
        self.ids.insert(v.clone(), i);
        i
    }

    fn distance(&self, mut a: usize, mut b: usize) -> usize {
        let mut d = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            d += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            d += 1;
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            d += 2;
        }
        d
    }
}

/// Checks the quasi-isometry inequalities over all pairs of `t`, a
/// truncation of `T_∞`.
pub fn check_distortion(t: &TruncatedTree, k: u32) -> Result<QiReport, TreeError> {
    let f = QiMap::new(k, t.radius())?;
    let mut src = Interned::new();
    let mut dst = Interned::new();
    let mut pairs_idx = Vec::with_capacity(t.vertices().len());
    for v in t.vertices() {
        let fv = f.map(v)?;
        pairs_idx.push((src.intern(v), dst.intern(&fv), v.depth()));
    }
    let mut report = QiReport {
        vertices: pairs_idx.len(),
        pairs: 0,
        distortion_violations: 0,
        basepoint_violations: 0,
        odd_collisions: 0,
        edge_violations: 0,
    };
    let mut odd_seen: HashMap<usize, usize> = HashMap::new();
    for &(s, i, depth) in &pairs_idx {
        if dst.depth[i] != depth {
            report.basepoint_violations += 1;
        }
        if depth % 2 == 1 && odd_seen.insert(i, s).is_some() {
            report.odd_collisions += 1;
        }
    }
    for (x, &(sa, ia, _)) in pairs_idx.iter().enumerate() {
        for &(sb, ib, _) in &pairs_idx[x + 1..] {
            let d = src.distance(sa, sb);
            let e = dst.distance(ia, ib);
            report.pairs += 1;
            if e > d || e + 2 < d {
                report.distortion_violations += 1;
            }
            if d == 1 && e != 1 {
                report.edge_violations += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: i64, q: i64) -> Color {
        Color::Dense(Angle::frac(p, q))
    }

    #[test]
    fn basepoint_and_first_sphere() {
        let f = QiMap::new(3, 4).unwrap();
        assert_eq!(f.map(&VertexAddress::root()).unwrap(), VertexAddress::root());
        let v = VertexAddress(vec![d(1, 3)]);
        assert_eq!(f.map(&v).unwrap(), v);
        let too_deep = VertexAddress(vec![d(1, 3), d(0, 1), d(1, 2), d(0, 1), d(1, 2)]);
        assert_eq!(f.map(&too_deep), Err(TreeError::OutOfRadius));
    }

    #[test]
    fn second_sphere_uses_arcs() {
        // Children of 1/3 avoid r = 0; for k = 3 the arcs are (0,1/2) and [1/2,1).
        let f = QiMap::new(3, 4).unwrap();
        let a = f.map(&VertexAddress(vec![d(1, 3), d(1, 4)])).unwrap();
        let b = f.map(&VertexAddress(vec![d(1, 3), d(3, 4)])).unwrap();
        assert_eq!(a, VertexAddress(vec![d(1, 3), Color::Ear(2)]));
        assert_eq!(b, VertexAddress(vec![d(1, 3), Color::Ear(3)]));
    }

    #[test]
    fn small_exhaustive_check() {
        let t = TruncatedTree::new(TreeShape::infinite(), 4, 3).unwrap();
        let r = check_distortion(&t, 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
