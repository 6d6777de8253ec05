//! Building elements from a partial isomorphism and branch rules.
//!
//! Given a finite partial isomorphism `f: F → F2` between center-closed
//! sets, the element agrees with `f` on the hull `H = [F]`. At each hull
//! vertex the local action is forced on the colors pointing into `H`; the
//! remaining colors follow the vertex's [`BranchSpec`] and are then
//! completed canonically. Beyond `H` local actions repeat those of `H`.

use std::collections::{BTreeMap, BTreeSet};

use cyclic_order::{canonical_extension, classify, Classification, FinitePartialMap};
use serde::{Deserialize, Serialize};

use crate::action::{LocalAction, Perm};
use crate::element::{SupportEntry, TreeElement};
use crate::shape::{Color, Degree, TreeShape, VertexAddress};
use crate::TreeError;

/// Where the branches at one hull vertex go: explicit color pairs
/// (source color ↦ target color) and, for infinite sides, the orientation
/// of the completion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    #[serde(default)]
    pub pairs: Vec<(Color, Color)>,
    #[serde(default)]
    pub reversing: Option<bool>,
}

/// Branch specs keyed by hull vertex.
pub type BranchRule = BTreeMap<VertexAddress, BranchSpec>;

/// Whether `set` contains the median of each of its triples.
pub fn is_center_closed(set: &[VertexAddress]) -> bool {
    let s: BTreeSet<&VertexAddress> = set.iter().collect();
    for a in set {
        for b in set {
            for c in set {
                if !s.contains(&VertexAddress::median(a, b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The hull `[F]` with the induced extension of `f`.
fn hull_map(f: &BTreeMap<VertexAddress, VertexAddress>) -> Result<BTreeMap<VertexAddress, VertexAddress>, TreeError> {
    let mut h: BTreeMap<VertexAddress, VertexAddress> = f.clone();
    for (a, fa) in f {
        for (b, fb) in f {
            for (k, w) in a.path_to(b).into_iter().enumerate() {
                let fw = fa.toward(fb, k);
                match h.get(&w) {
                    Some(prev) if *prev != fw => {
                        return Err(TreeError::NotPartialHomomorphism(format!(
                            "hull vertex {w} has two images"
                        )))
                    }
                    _ => {
                        h.insert(w, fw);
                    }
                }
            }
        }
    }
    Ok(h)
}

fn complete_ear(n: u32, pairs: &BTreeMap<Color, Color>) -> Result<Perm, TreeError> {
    let ear = |c: &Color| match c {
        Color::Ear(i) => Ok(*i),
        Color::Dense(_) => Err(TreeError::BoundaryMismatch(format!("{c} is not an ear color"))),
    };
    let p: Vec<(u32, u32)> = pairs
        .iter()
        .map(|(a, b)| Ok((ear(a)?, ear(b)?)))
        .collect::<Result<_, TreeError>>()?;
    for k in 0..n as i64 {
        let r = Perm::rotation(n, k);
        if p.iter().all(|&(a, b)| r.apply(a) == b) {
            return Ok(r);
        }
    }
    let used_src: BTreeSet<u32> = p.iter().map(|x| x.0).collect();
    let used_dst: BTreeSet<u32> = p.iter().map(|x| x.1).collect();
    let free_src = (1..=n).filter(|i| !used_src.contains(i));
    let mut free_dst = (1..=n).filter(|i| !used_dst.contains(i));
    let mut img = vec![0; n as usize];
    for &(a, b) in &p {
        img[a as usize - 1] = b;
    }
    for a in free_src {
        img[a as usize - 1] = free_dst.next().expect("pairs are injective");
    }
    Perm::new(img)
}

fn complete_dense(pairs: &BTreeMap<Color, Color>, reversing: Option<bool>) -> Result<LocalAction, TreeError> {
    let mismatch = |m: String| TreeError::BoundaryMismatch(m);
    let angles = pairs
        .iter()
        .map(|(a, b)| match (a, b) {
            (Color::Dense(x), Color::Dense(y)) => Ok((x.clone(), y.clone())),
            _ => Err(mismatch(format!("{a}↦{b} is not a pair of angles"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = FinitePartialMap::new(angles).map_err(|e| mismatch(e.to_string()))?;
    let rev = if m.len() >= 3 {
        let c = classify(&m).map_err(|e| mismatch(e.to_string()))?;
        let rev = match c {
            Classification::Preserving => false,
            Classification::Reversing => true,
            Classification::Neither => return Err(mismatch("branch pairs are not cyclically monotone".into())),
        };
        if reversing.is_some_and(|r| r != rev) {
            return Err(mismatch("orientation flag contradicts the branch pairs".into()));
        }
        rev
    } else {
        reversing.unwrap_or(false)
    };
    let pl = canonical_extension(&m, rev).map_err(|e| mismatch(e.to_string()))?;
    Ok(LocalAction::Dense(pl))
}

/// The element agreeing with the partial isomorphism `f` on its domain,
/// following `rule` on the branches at hull vertices.
pub fn patchwork(
    shape: TreeShape,
    f: &[(VertexAddress, VertexAddress)],
    rule: &BranchRule,
) -> Result<TreeElement, TreeError> {
    if f.is_empty() {
        return Err(TreeError::NotPartialHomomorphism("empty domain".into()));
    }
    let mut fmap: BTreeMap<VertexAddress, VertexAddress> = BTreeMap::new();
    for (a, b) in f {
        shape.validate(a)?;
        shape.validate(b)?;
        if fmap.insert(a.clone(), b.clone()).is_some_and(|prev| prev != *b) {
            return Err(TreeError::NotPartialHomomorphism(format!("{a} has two images")));
        }
    }
    let dom: Vec<VertexAddress> = fmap.keys().cloned().collect();
    let img: Vec<VertexAddress> = fmap.values().cloned().collect();
    if !is_center_closed(&dom) || !is_center_closed(&img) {
        return Err(TreeError::NotCenterClosed);
    }
    for (a, fa) in &fmap {
        if a.depth() % 2 != fa.depth() % 2 {
            return Err(TreeError::NotPartialHomomorphism(format!(
                "{a} ↦ {fa} exchanges the bipartition"
            )));
        }
        for (b, fb) in &fmap {
            if a.distance(b) != fa.distance(fb) {
                return Err(TreeError::NotPartialHomomorphism(format!(
                    "distance between {a} and {b} is not preserved"
                )));
            }
        }
    }
    let hull = hull_map(&fmap)?;
    for v in rule.keys() {
        if !hull.contains_key(v) {
            return Err(TreeError::BoundaryMismatch(format!(
                "branch rule given at {v}, outside the hull"
            )));
        }
    }

    let mut sigma: BTreeMap<VertexAddress, LocalAction> = BTreeMap::new();
    for h in hull.keys() {
        let d = shape.degree_at(h.depth());
        let mut pairs: BTreeMap<Color, Color> = BTreeMap::new();
        let add = |a: Color, b: Color, pairs: &mut BTreeMap<Color, Color>| {
            if !TreeShape::color_fits(d, &a) || !TreeShape::color_fits(d, &b) {
                return Err(TreeError::BoundaryMismatch(format!("{a}↦{b} at {h} does not fit")));
            }
            if let Some(prev) = pairs.get(&a) {
                if *prev != b {
                    return Err(TreeError::BoundaryMismatch(format!(
                        "color {a} at {h} sent to both {prev} and {b}"
                    )));
                }
            } else if pairs.values().any(|x| *x == b) {
                return Err(TreeError::BoundaryMismatch(format!("two colors at {h} sent to {b}")));
            }
            pairs.insert(a, b);
            Ok(())
        };
        for (w, fw) in hull_neighbors(&hull, h) {
            add(shape.in_color(w), shape.in_color(fw), &mut pairs)?;
        }
        let spec = rule.get(h).cloned().unwrap_or_default();
        for (a, b) in spec.pairs {
            add(a, b, &mut pairs)?;
        }
        let act = match d {
            Degree::Finite(n) => LocalAction::Ear(complete_ear(n, &pairs)?),
            Degree::Infinite => complete_dense(&pairs, spec.reversing)?,
        };
        sigma.insert(h.clone(), act);
    }

    // Default beyond each hull vertex: the action of a hull neighbor.
    let delta_of = |h: &VertexAddress| -> Result<LocalAction, TreeError> {
        let nb = hull_neighbors(&hull, h);
        let parent = h.parent().filter(|p| hull.contains_key(p));
        match parent.or_else(|| nb.first().map(|(w, _)| (*w).clone())) {
            Some(w) => Ok(sigma[&w].clone()),
            None => LocalAction::shift_on(
                shape.degree_at(h.depth() + 1),
                &shape.in_color(h),
                &shape.in_color(&hull[h]),
            ),
        }
    };

    let top = hull.keys().min_by_key(|v| v.depth()).expect("non-empty hull").clone();
    let top_delta = delta_of(&top)?;
    let mut entries: Vec<SupportEntry> = Vec::new();
    for h in hull.keys() {
        entries.push(SupportEntry {
            vertex: h.clone(),
            sigma: sigma[h].clone(),
            delta: delta_of(h)?,
        });
    }
    // The path from the root down to the top of the hull alternates the
    // actions found just below it.
    let m = top.depth();
    let path_sigma = |j: usize| -> LocalAction {
        if (m - j) % 2 == 1 {
            top_delta.clone()
        } else {
            sigma[&top].clone()
        }
    };
    let mut image = hull[&top].clone();
    for j in (0..m).rev() {
        let pj = top.prefix(j);
        let below = path_sigma(j + 1);
        let below = if j + 1 == m { sigma[&top].clone() } else { below };
        image = shape.neighbor(&image, &below.apply(&shape.in_color(&pj)));
        entries.push(SupportEntry {
            vertex: pj,
            sigma: path_sigma(j),
            delta: below,
        });
    }
    let g = TreeElement::from_parts(shape, image, entries)?;
    for (a, fa) in &fmap {
        if g.evaluate(a) != *fa {
            return Err(TreeError::InconsistentElement(format!(
                "patchwork sends {a} to {} instead of {fa}",
                g.evaluate(a)
            )));
        }
    }
    Ok(g)
}

fn hull_neighbors<'a>(
    hull: &'a BTreeMap<VertexAddress, VertexAddress>,
    h: &VertexAddress,
) -> Vec<(&'a VertexAddress, &'a VertexAddress)> {
    hull.iter().filter(|(w, _)| h.distance(w) == 1).collect()
}
