//! The color-preserving embedding `Φ: T_n → D_n`.
//!
//! Ear colors `ℓ ∈ {1..n}` are recoded as the angles `(ℓ − 1)/n`. `Φ`
//! sends the root to `o`. A child `v·ℓ` goes onto the ray leaving `Φ(v)` in
//! direction `ℓ`: the sub-ray of that color, or the onward part of `Φ(v)`'s
//! own ray when `ℓ` is its onward color. On that ray it takes the point
//! whose branch back toward `Φ(v)` has color `c(v)`, choosing the least
//! dyadic level and then the largest parameter. Half-trees therefore land
//! in branches of the same color, and the construction is canonical, so
//! `Φ` is available at any depth.

use std::collections::BTreeMap;

use colored_trees::{Color, TreeShape, VertexAddress};
use cyclic_order::Angle;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::approx::DendriteApprox;
use crate::arc::{least_level, Codes, Region};
use crate::point::{between, dir, Palette, Point};
use crate::DendriteError;

/// Where a branch point sits relative to `Φ(T_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// The image of a vertex.
    Vertex(VertexAddress),
    /// Inside the region between the images of an edge, given parent first.
    Edge(VertexAddress, VertexAddress),
}

/// The canonical embedding for a fixed `n ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    n: u32,
    shape: TreeShape,
    palette: Palette,
}

impl Embedding {
    pub fn new(n: u32) -> Result<Self, DendriteError> {
        let palette = Palette::finite(n)?;
        let shape = TreeShape::regular(n).map_err(|_| DendriteError::BadArity(n))?;
        Ok(Embedding { n, shape, palette })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn palette(&self) -> Palette {
        self.palette
    }

    pub fn recode(&self, c: &Color) -> Angle {
        match c {
            Color::Ear(l) => Angle::ratio(*l as u64 - 1, self.n as u64),
            Color::Dense(_) => panic!("T_n carries ear colors only"),
        }
    }

    pub fn decode(&self, a: &Angle) -> Color {
        let k = (a.value() * BigRational::from_integer(self.n.into()))
            .to_integer()
            .to_u32()
            .expect("palette color");
        Color::Ear(k + 1)
    }

    /// `Φ(v·ℓ)` from `x = Φ(v)`, the recoded `ℓ` and the recoded `c(v)`.
    fn place(&self, x: &Point, towards: &Angle, back: &Angle) -> Point {
        let (base, color, lo) = match x.label(&self.palette) {
            Some((_, j)) if j == *towards => {
                let e = x.last().expect("non-root");
                (x.base().expect("non-root"), e.color.clone(), e.t.clone())
            }
            _ => (x.clone(), towards.clone(), BigRational::zero()),
        };
        let codes = Codes::first(&self.palette, back);
        let (_, t) = least_level(&lo, &BigRational::one(), &codes, false, None).expect("labels are dense");
        base.ray(color, t)
    }

    /// `Φ` along the path from the root to `v`.
    pub fn images(&self, v: &VertexAddress) -> Result<Vec<Point>, DendriteError> {
        self.shape
            .validate(v)
            .map_err(|e| DendriteError::InvalidPoint(e.to_string()))?;
        let mut out = vec![Point::root()];
        for k in 0..v.depth() {
            let u = v.prefix(k);
            let next = self.place(
                &out[k],
                &self.recode(&v.letters()[k]),
                &self.recode(&self.shape.in_color(&u)),
            );
            out.push(next);
        }
        Ok(out)
    }

    pub fn phi(&self, v: &VertexAddress) -> Result<Point, DendriteError> {
        Ok(self.images(v)?.pop().expect("non-empty"))
    }

    /// Finds the vertex or edge region of `Φ(T_n)` containing `p`.
    pub fn locate(&self, p: &Point) -> Result<Location, DendriteError> {
        p.validate(&self.palette)?;
        let mut v = VertexAddress::root();
        let mut x = Point::root();
        loop {
            if *p == x {
                return Ok(Location::Vertex(v));
            }
            let d = dir(&self.palette, &x, p);
            let back = self.recode(&self.shape.in_color(&v));
            let w = v.child(self.decode(&d));
            let y = self.place(&x, &d, &back);
            if *p == y {
                return Ok(Location::Vertex(w));
            }
            if dir(&self.palette, &y, p) == dir(&self.palette, &y, &x) {
                return Ok(Location::Edge(v, w));
            }
            v = w;
            x = y;
        }
    }

    /// The region between the images of an edge, oriented even → odd.
    pub fn edge_region(&self, v: &VertexAddress, w: &VertexAddress) -> Result<Region, DendriteError> {
        let (e, o) = if v.depth().is_multiple_of(2) { (v, w) } else { (w, v) };
        Ok(Region::Between(self.phi(e)?, self.phi(o)?))
    }
}

/// `Φ` on the ball of radius `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingRecord {
    embedding: Embedding,
    depth: usize,
    map: BTreeMap<VertexAddress, Point>,
}

impl EmbeddingRecord {
    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn map(&self) -> &BTreeMap<VertexAddress, Point> {
        &self.map
    }

    pub fn get(&self, v: &VertexAddress) -> Option<&Point> {
        self.map.get(v)
    }

    /// Triples of the ball violating `u ∈ [v, w] ⇔ Φ(u) ∈ [Φ(v), Φ(w)]`.
    pub fn betweenness_violations(&self) -> usize {
        let pal = self.embedding.palette;
        let items: Vec<(&VertexAddress, &Point)> = self.map.iter().collect();
        let mut bad = 0;
        for (u, pu) in &items {
            for (v, pv) in &items {
                for (w, pw) in &items {
                    if VertexAddress::between(u, v, w) != between(&pal, pu, pv, pw) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Adjacent pairs violating `k_T(v, w) = k_D(Φ(v) → Φ(w))`.
    pub fn color_violations(&self) -> usize {
        let e = &self.embedding;
        let mut bad = 0;
        for (w, pw) in &self.map {
            let Some(v) = w.parent() else { continue };
            let pv = &self.map[&v];
            if dir(&e.palette, pv, pw) != e.recode(&e.shape.half_edge_color(&v, w)) {
                bad += 1;
            }
            if dir(&e.palette, pw, pv) != e.recode(&e.shape.half_edge_color(w, &v)) {
                bad += 1;
            }
        }
        bad
    }
}

/// Embeds the radius-`depth` ball of `T_n` into `d`, which must carry the
/// palette of `D_n`.
pub fn embed_tree(n: u32, depth: usize, d: &mut DendriteApprox) -> Result<EmbeddingRecord, DendriteError> {
    let embedding = Embedding::new(n)?;
    if *d.palette() != embedding.palette {
        return Err(DendriteError::PaletteMismatch);
    }
    let mut map = BTreeMap::new();
    map.insert(VertexAddress::root(), Point::root());
    let mut frontier = vec![VertexAddress::root()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            let x = map[v].clone();
            let back = embedding.recode(&embedding.shape.in_color(v));
            for c in embedding.shape.child_colors(v, 0) {
                let w = v.child(c.clone());
                let y = embedding.place(&x, &embedding.recode(&c), &back);
                map.insert(w.clone(), y);
                next.push(w);
            }
        }
        frontier = next;
    }
    for p in map.values() {
        d.insert(p.clone())?;
    }
    Ok(EmbeddingRecord { embedding, depth, map })
}
