//! Homeomorphisms of the dendrite: patchworks of partial maps and lifts of
//! tree automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use colored_trees::{DenseGroup, LocalAction, TreeElement};
use cyclic_order::{Angle, FinitePartialMap};
use serde::{Deserialize, Serialize};

use crate::approx::DendriteApprox;
use crate::arc::Region;
use crate::colors::{complete, ColorMap, Gamma};
use crate::embed::{Embedding, EmbeddingRecord, Location};
use crate::point::{between, dir, is_center_closed, Palette, Point};
use crate::DendriteError;

/// A bijection between finite sets of branch points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialDendriteMap {
    pairs: Vec<(Point, Point)>,
}

impl PartialDendriteMap {
    pub fn new(pairs: Vec<(Point, Point)>) -> Result<Self, DendriteError> {
        let src: BTreeSet<&Point> = pairs.iter().map(|(a, _)| a).collect();
        let dst: BTreeSet<&Point> = pairs.iter().map(|(_, b)| b).collect();
        if src.len() != pairs.len() || dst.len() != pairs.len() {
            return Err(DendriteError::NotPartialHomomorphism("not a bijection".into()));
        }
        Ok(PartialDendriteMap { pairs })
    }

    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    pub fn domain(&self) -> Vec<Point> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn image(&self) -> Vec<Point> {
        self.pairs.iter().map(|(_, b)| b.clone()).collect()
    }

    /// Whether the map preserves betweenness on its domain.
    pub fn preserves_betweenness(&self, palette: &Palette) -> bool {
        let p = &self.pairs;
        p.iter().all(|(u, fu)| {
            p.iter().all(|(a, fa)| {
                p.iter()
                    .all(|(b, fb)| between(palette, u, a, b) == between(palette, fu, fa, fb))
            })
        })
    }
}

/// Colors requested at a domain point beyond those forced by the map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    #[serde(default)]
    pub pairs: Vec<(Angle, Angle)>,
    #[serde(default)]
    pub reversing: Option<bool>,
}

pub type BranchRule = BTreeMap<Point, BranchSpec>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// Agrees with `pairs`; local action `sigma` at the domain points, and
    /// canonical region maps elsewhere.
    Patchwork {
        pairs: Vec<(Point, Point)>,
        sigma: BTreeMap<Point, ColorMap>,
    },
    /// The lift of a tree automorphism through `Φ`.
    Lift { g: TreeElement, embedding: Embedding },
}

/// A homeomorphism of the dendrite, evaluated lazily on branch points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendriteElement {
    palette: Palette,
    kind: Kind,
}

impl DendriteElement {
    pub fn identity(palette: Palette) -> Self {
        DendriteElement {
            palette,
            kind: Kind::Patchwork {
                pairs: Vec::new(),
                sigma: BTreeMap::new(),
            },
        }
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn evaluate(&self, p: &Point) -> Result<Point, DendriteError> {
        p.validate(&self.palette)?;
        let pal = &self.palette;
        match &self.kind {
            Kind::Patchwork { pairs, sigma } => {
                if pairs.is_empty() {
                    return Ok(p.clone());
                }
                if let Some((_, q)) = pairs.iter().find(|(a, _)| a == p) {
                    return Ok(q.clone());
                }
                let boundary: Vec<usize> = (0..pairs.len())
                    .filter(|&k| {
                        let x = &pairs[k].0;
                        !pairs.iter().any(|(y, _)| y != x && between(pal, y, x, p))
                    })
                    .collect();
                match boundary[..] {
                    [k] => {
                        let (x, fx) = &pairs[k];
                        let d = dir(pal, x, p);
                        let from = Region::Branch(x.clone(), d.clone());
                        let to = Region::Branch(fx.clone(), sigma[x].apply(&d));
                        from.map_to(pal, &to, p)
                    }
                    [k, l] => {
                        let from = Region::Between(pairs[k].0.clone(), pairs[l].0.clone());
                        let to = Region::Between(pairs[k].1.clone(), pairs[l].1.clone());
                        from.map_to(pal, &to, p)
                    }
                    _ => Err(DendriteError::NotCenterClosed),
                }
            }
            Kind::Lift { g, embedding } => match embedding.locate(p)? {
                Location::Vertex(v) => embedding.phi(&g.evaluate(&v)),
                Location::Edge(v, w) => {
                    let from = embedding.edge_region(&v, &w)?;
                    let to = embedding.edge_region(&g.evaluate(&v), &g.evaluate(&w))?;
                    from.map_to(pal, &to, p)
                }
            },
        }
    }

    /// The local action `σ_h(p)`.
    pub fn local_action(&self, p: &Point) -> Result<ColorMap, DendriteError> {
        p.validate(&self.palette)?;
        match &self.kind {
            Kind::Patchwork { sigma, .. } => Ok(sigma
                .get(p)
                .cloned()
                .unwrap_or_else(|| ColorMap::identity(&self.palette))),
            Kind::Lift { g, embedding } => match embedding.locate(p)? {
                Location::Vertex(v) => Ok(lift_action(&g.local_action(&v))),
                Location::Edge(..) => Ok(ColorMap::identity(&self.palette)),
            },
        }
    }

    pub fn inverse(&self) -> Self {
        let kind = match &self.kind {
            Kind::Patchwork { pairs, sigma } => Kind::Patchwork {
                pairs: pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
                sigma: pairs.iter().map(|(a, b)| (b.clone(), sigma[a].inverse())).collect(),
            },
            Kind::Lift { g, embedding } => Kind::Lift {
                g: g.inverse(),
                embedding: embedding.clone(),
            },
        };
        DendriteElement {
            palette: self.palette,
            kind,
        }
    }

    /// Whether every local action lies in `gamma`.
    pub fn kaleidoscopic_membership(&self, gamma: &Gamma) -> bool {
        match &self.kind {
            Kind::Patchwork { sigma, .. } => sigma.values().all(|m| gamma.contains(m)),
            Kind::Lift { g, embedding } => g.membership(&gamma.perm_group(embedding.n()), DenseGroup::Trivial),
        }
    }
}

pub fn kaleidoscopic_membership(h: &DendriteElement, gamma: &Gamma) -> bool {
    h.kaleidoscopic_membership(gamma)
}

fn lift_action(a: &LocalAction) -> ColorMap {
    ColorMap::from_perm(a.as_perm().expect("T_n has finite degree"))
}

/// Extends `f` to a homeomorphism: local actions at the domain points
/// combine the colors forced by `f` with `rule`, and the complementary
/// regions map canonically with trivial local action.
pub fn patchwork_dendrite(
    src: &DendriteApprox,
    dst: &DendriteApprox,
    f: &PartialDendriteMap,
    rule: &BranchRule,
) -> Result<DendriteElement, DendriteError> {
    let pal = *src.palette();
    if *dst.palette() != pal {
        return Err(DendriteError::NotPartialHomomorphism(
            "source and target charts have different arity".into(),
        ));
    }
    for (a, b) in f.pairs() {
        if !src.contains(a) {
            return Err(DendriteError::NotMaterialized(a.to_string()));
        }
        if !dst.contains(b) {
            return Err(DendriteError::NotMaterialized(b.to_string()));
        }
    }
    if !is_center_closed(&pal, &f.domain()) || !is_center_closed(&pal, &f.image()) {
        return Err(DendriteError::NotCenterClosed);
    }
    if !f.preserves_betweenness(&pal) {
        return Err(DendriteError::NotPartialHomomorphism(
            "betweenness is not preserved".into(),
        ));
    }
    if let Some(x) = rule.keys().find(|x| !f.pairs().iter().any(|(a, _)| a == *x)) {
        return Err(DendriteError::BoundaryMismatch(format!(
            "rule at {x} outside the domain"
        )));
    }
    let mut sigma = BTreeMap::new();
    for (x, fx) in f.pairs() {
        let mut forced: Vec<(Angle, Angle)> = f
            .pairs()
            .iter()
            .filter(|(y, _)| y != x)
            .map(|(y, fy)| (dir(&pal, x, y), dir(&pal, fx, fy)))
            .collect();
        forced.sort();
        forced.dedup();
        let forced = FinitePartialMap::new(forced)
            .map_err(|_| DendriteError::NotPartialHomomorphism(format!("branches at {x} do not map consistently")))?;
        let spec = rule.get(x).cloned().unwrap_or_default();
        let mut all = forced.clone();
        for (a, b) in &spec.pairs {
            if !pal.contains(a) || !pal.contains(b) {
                return Err(DendriteError::InvalidColor(format!("{a}↦{b}")));
            }
            all = all
                .with_pair(a.clone(), b.clone())
                .map_err(|_| DendriteError::BoundaryMismatch(format!("rule at {x} conflicts with f")))?;
        }
        sigma.insert(x.clone(), complete(&pal, &all, spec.reversing)?);
    }
    Ok(DendriteElement {
        palette: pal,
        kind: Kind::Patchwork {
            pairs: f.pairs().to_vec(),
            sigma,
        },
    })
}

/// The lift `φ(g)` of `g ∈ U(N)` through the embedding of `record`.
pub fn lift(g: &TreeElement, record: &EmbeddingRecord) -> Result<DendriteElement, DendriteError> {
    let e = record.embedding();
    if g.shape() != e.shape() {
        return Err(DendriteError::PaletteMismatch);
    }
    let depth = g.support_depth().max(g.root_image().depth());
    if depth > record.depth() {
        return Err(DendriteError::SupportExceedsDepth {
            support: depth,
            depth: record.depth(),
        });
    }
    Ok(DendriteElement {
        palette: e.palette(),
        kind: Kind::Lift {
            g: g.clone(),
            embedding: e.clone(),
        },
    })
}
