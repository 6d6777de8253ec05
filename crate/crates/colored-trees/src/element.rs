//! Elements of universal groups, represented by finite local data.
//!
//! An element `g` is stored as the image of the root together with a finite
//! rooted subtree `S` (the support) carrying, at each `x ∈ S`, the local
//! action `σ(x)` and a *default* `δ(x)` used for children of `x` outside
//! `S`. Beyond `S` the local actions repeat: a vertex at distance `d` below
//! its nearest support ancestor `y` has action `σ(y)` when `d` is even and
//! `δ(y)` when `d` is odd. Evaluation walks down from the root:
//! `g(x·ℓ)` is the neighbor of `g(x)` across color `σ(x)(ℓ)`.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{DenseGroup, LocalAction, Perm, PermGroup};
use crate::shape::{Color, Degree, TreeShape, VertexAddress};
use crate::TreeError;

impl Borrow<[Color]> for VertexAddress {
    fn borrow(&self) -> &[Color] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    sigma: LocalAction,
    delta: LocalAction,
}

/// One support vertex with its local action and default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub vertex: VertexAddress,
    pub sigma: LocalAction,
    pub delta: LocalAction,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    shape: TreeShape,
    root_image: VertexAddress,
    support: Vec<SupportEntry>,
}

/// A color-coherent automorphism of a biregular tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct TreeElement {
    shape: TreeShape,
    root_image: VertexAddress,
    support: BTreeMap<VertexAddress, Node>,
}

impl TryFrom<ElementRepr> for TreeElement {
    type Error = TreeError;
    fn try_from(r: ElementRepr) -> Result<Self, TreeError> {
        TreeElement::from_parts(r.shape, r.root_image, r.support)
    }
}

impl From<TreeElement> for ElementRepr {
    fn from(g: TreeElement) -> Self {
        ElementRepr {
            shape: g.shape,
            root_image: g.root_image,
            support: g
                .support
                .into_iter()
                .map(|(vertex, n)| SupportEntry {
                    vertex,
                    sigma: n.sigma,
                    delta: n.delta,
                })
                .collect(),
        }
    }
}

impl TreeElement {
    pub fn identity(shape: TreeShape) -> Self {
        let mut support = BTreeMap::new();
        support.insert(
            VertexAddress::root(),
            Node {
                sigma: LocalAction::identity(shape.even),
                delta: LocalAction::identity(shape.odd),
            },
        );
        TreeElement {
            shape,
            root_image: VertexAddress::root(),
            support,
        }
    }

    /// Builds and validates an element from raw support data.
    pub fn from_parts(
        shape: TreeShape,
        root_image: VertexAddress,
        entries: impl IntoIterator<Item = SupportEntry>,
    ) -> Result<Self, TreeError> {
        let mut support = BTreeMap::new();
        for e in entries {
            let prev = support.insert(
                e.vertex.clone(),
                Node {
                    sigma: e.sigma,
                    delta: e.delta,
                },
            );
            if prev.is_some() {
                return Err(TreeError::InconsistentElement(format!(
                    "vertex {} listed twice",
                    e.vertex
                )));
            }
        }
        let g = TreeElement {
            shape,
            root_image,
            support,
        };
        g.validate()?;
        Ok(g.normalized())
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn root_image(&self) -> &VertexAddress {
        &self.root_image
    }

    pub fn support(&self) -> impl Iterator<Item = SupportEntry> + '_ {
        self.support.iter().map(|(v, n)| SupportEntry {
            vertex: v.clone(),
            sigma: n.sigma.clone(),
            delta: n.delta.clone(),
        })
    }

    pub fn support_vertices(&self) -> impl Iterator<Item = &VertexAddress> {
        self.support.keys()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    /// Depth of the deepest support vertex.
    pub fn support_depth(&self) -> usize {
        self.support.keys().map(|v| v.depth()).max().unwrap_or(0)
    }

    /// Checks the stored data against the coherence conditions.
    pub fn validate(&self) -> Result<(), TreeError> {
        let bad = |m: String| Err(TreeError::InconsistentElement(m));
        self.shape.validate(&self.root_image)?;
        if !self.root_image.depth().is_multiple_of(2) {
            return bad("root image lies on the other side of the bipartition".into());
        }
        if !self.support.contains_key(&VertexAddress::root()) {
            return bad("support misses the root".into());
        }
        for (x, n) in &self.support {
            self.shape.validate(x)?;
            if let Some(p) = x.parent() {
                if !self.support.contains_key(&p) {
                    return bad(format!("support is not rooted at {x}"));
                }
            }
            if !n.sigma.fits(self.shape.degree_at(x.depth())) || !n.delta.fits(self.shape.degree_at(x.depth() + 1)) {
                return bad(format!("local action at {x} acts on the wrong side"));
            }
        }
        for (x, n) in &self.support {
            let gx = self.evaluate(x);
            if let Some(p) = x.parent() {
                let gp = self.evaluate(&p);
                if n.sigma.apply(&self.shape.in_color(&p)) != self.shape.in_color(&gp) {
                    return bad(format!("σ({x}) does not send the parent edge to the parent edge"));
                }
            }
            if n.delta.apply(&self.shape.in_color(x)) != self.shape.in_color(&gx) {
                return bad(format!("default at {x} does not fix the edge back to {x}"));
            }
        }
        Ok(())
    }

    /// Length of the longest prefix of `w` lying in the support.
    fn anchor(&self, w: &[Color]) -> usize {
        let mut k = 0;
        while k < w.len() && self.support.contains_key(&w[..k + 1]) {
            k += 1;
        }
        k
    }

    fn action_at(&self, w: &[Color]) -> &LocalAction {
        let k = self.anchor(w);
        let n = &self.support[&w[..k]];
        if (w.len() - k).is_multiple_of(2) {
            &n.sigma
        } else {
            &n.delta
        }
    }

    /// The local action `σ_g(v)`.
    pub fn local_action(&self, v: &VertexAddress) -> LocalAction {
        self.action_at(&v.0).clone()
    }

    pub fn evaluate(&self, v: &VertexAddress) -> VertexAddress {
        let mut y = self.root_image.clone();
        for i in 0..v.depth() {
            let m = self.action_at(&v.0[..i]).apply(&v.0[i]);
            y = self.shape.neighbor(&y, &m);
        }
        y
    }

    /// `g⁻¹(v)`, by pulling back the geodesic from `g(root)` to `v`.
    pub fn preimage(&self, v: &VertexAddress) -> VertexAddress {
        let path = self.root_image.path_to(v);
        let mut x = VertexAddress::root();
        for z in &path[1..] {
            let m = self.shape.in_color(z);
            let l = self.action_at(&x.0).apply_inverse(&m);
            x = self.shape.neighbor(&x, &l);
        }
        x
    }

    /// `self ∘ h`.
    pub fn compose(&self, h: &TreeElement) -> Result<TreeElement, TreeError> {
        if self.shape != h.shape {
            return Err(TreeError::ShapeMismatch);
        }
        let mut seeds: Vec<VertexAddress> = h.support.keys().cloned().collect();
        seeds.extend(self.support.keys().map(|y| h.preimage(y)));
        seeds.push(h.preimage(&VertexAddress::root()));
        let root_image = self.evaluate(&h.root_image);
        materialize(self.shape, root_image, seeds, |v| {
            self.local_action(&h.evaluate(v)).compose(&h.local_action(v))
        })
    }

    pub fn inverse(&self) -> TreeElement {
        let mut seeds: Vec<VertexAddress> = self.support.keys().map(|x| self.evaluate(x)).collect();
        seeds.push(self.root_image.clone());
        let root_image = self.preimage(&VertexAddress::root());
        materialize(self.shape, root_image, seeds, |v| {
            self.local_action(&self.preimage(v)).inverse()
        })
        .expect("the inverse of a valid element is valid")
    }

    /// Whether `self` and `other` agree, as automorphisms, on `vertices`
    /// and their local actions there.
    pub fn agrees_on<'a>(&self, other: &TreeElement, vertices: impl IntoIterator<Item = &'a VertexAddress>) -> bool {
        vertices
            .into_iter()
            .all(|v| self.evaluate(v) == other.evaluate(v) && self.local_action(v) == other.local_action(v))
    }

    /// Actions that can occur anywhere in the tree, each tagged with the
    /// side it acts on: `σ` on the support, plus every default that is
    /// realized by a child outside the support.
    fn realized_actions(&self) -> Vec<(Degree, &LocalAction)> {
        let mut out = Vec::new();
        for (x, n) in &self.support {
            out.push((self.shape.degree_at(x.depth()), &n.sigma));
            let inside = self.support_children(x).count();
            let realized = match self.shape.degree_at(x.depth()) {
                Degree::Infinite => true,
                Degree::Finite(k) => {
                    let slots = if x.is_root() { k } else { k - 1 };
                    inside < slots as usize
                }
            };
            if realized {
                out.push((self.shape.degree_at(x.depth() + 1), &n.delta));
            }
        }
        out
    }

    fn support_children<'a>(&'a self, x: &'a VertexAddress) -> impl Iterator<Item = &'a VertexAddress> {
        self.support
            .range(x.clone()..)
            .map(|(v, _)| v)
            .take_while(move |v| x.is_prefix_of(v))
            .filter(move |v| v.depth() == x.depth() + 1)
    }

    /// Whether every local action lies in `N` (finite sides) or `M`
    /// (infinite sides).
    pub fn membership(&self, n: &PermGroup, m: DenseGroup) -> bool {
        self.realized_actions().into_iter().all(|(_, a)| match a {
            LocalAction::Ear(p) => n.contains(p),
            LocalAction::Dense(d) => m.contains(d),
        })
    }

    /// The orientation homomorphism `U(Cyc(n), Aut(O)) → Cyc(n)`: the common
    /// local action at all vertices of finite degree.
    pub fn orientation_hom(&self) -> Result<Perm, TreeError> {
        if !self.membership(&PermGroup::Cyclic, DenseGroup::AutO) {
            return Err(TreeError::NotOrientation);
        }
        let mut common: Option<&Perm> = None;
        for (_, a) in self.realized_actions() {
            if let LocalAction::Ear(p) = a {
                match common {
                    None => common = Some(p),
                    Some(q) if q == p => {}
                    Some(_) => return Err(TreeError::IllDefined),
                }
            }
        }
        common.cloned().ok_or(TreeError::NotOrientation)
    }

    /// Drops support leaves whose data the repetition rule reproduces.
    fn normalized(mut self) -> TreeElement {
        loop {
            let removable: Vec<VertexAddress> = self
                .support
                .iter()
                .filter(|(x, n)| {
                    let Some(p) = x.parent() else { return false };
                    if self.support_children(x).next().is_some() {
                        return false;
                    }
                    let pn = &self.support[&p];
                    n.sigma == pn.delta && n.delta == pn.sigma
                })
                .map(|(x, _)| x.clone())
                .collect();
            if removable.is_empty() {
                return self;
            }
            for x in removable {
                self.support.remove(&x);
            }
        }
    }
}

/// The in-color of a vertex of `shape` on the circle side, as an ear index.
pub fn circle_color(shape: &TreeShape, v: &VertexAddress) -> Result<u32, TreeError> {
    match (shape.degree_at(v.depth()), shape.in_color(v)) {
        (Degree::Infinite, Color::Ear(i)) => Ok(i),
        _ => Err(TreeError::WrongSide),
    }
}

/// Builds an element from an oracle for its local actions: the support is
/// the rooted hull of `seeds`, and each default is read off at a child
/// outside the support (or fixed canonically when there is none).
pub(crate) fn materialize(
    shape: TreeShape,
    root_image: VertexAddress,
    seeds: impl IntoIterator<Item = VertexAddress>,
    sigma: impl Fn(&VertexAddress) -> LocalAction,
) -> Result<TreeElement, TreeError> {
    let mut s: BTreeSet<VertexAddress> = BTreeSet::new();
    s.insert(VertexAddress::root());
    for v in seeds {
        for k in 1..=v.depth() {
            s.insert(v.prefix(k));
        }
    }
    let mut children: BTreeMap<&VertexAddress, Vec<Color>> = BTreeMap::new();
    for v in &s {
        if let Some(l) = v.0.last() {
            let p = &v.0[..v.depth() - 1];
            let key = s.get(p).expect("rooted hull");
            children.entry(key).or_default().push(l.clone());
        }
    }
    let mut support: BTreeMap<VertexAddress, Node> = BTreeMap::new();
    // Ancestors first, so that a parent's σ is known when needed.
    let mut order: Vec<&VertexAddress> = s.iter().collect();
    order.sort_by_key(|v| v.depth());
    for y in order {
        let sig = sigma(y);
        let taken = children.get(y).map(|c| c.as_slice()).unwrap_or(&[]);
        let delta = match shape.free_child_color(y, taken.iter()) {
            Some(l) => sigma(&y.child(l)),
            None => match y.parent() {
                Some(p) => support[&p].sigma.clone(),
                None => LocalAction::shift_on(shape.odd, &shape.in_color(y), &shape.in_color(&root_image))?,
            },
        };
        support.insert(y.clone(), Node { sigma: sig, delta });
    }
    let g = TreeElement {
        shape,
        root_image,
        support,
    };
    g.validate()?;
    Ok(g.normalized())
}
