//! Piecewise-affine bijections of Q/Z.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::order::{classify_pairs, Classification, FinitePartialMap};
use crate::{Angle, CyclicError};

/// A piecewise-affine bijection of Q/Z that preserves or reverses the cyclic
/// order.
///
/// The map is the affine interpolation of its nodes `(x_i, y_i)`: on the arc
/// `[x_i, x_{i+1})` it runs affinely onto the arc from `y_i` to `y_{i+1}`
/// (positively when preserving, negatively when reversing). In normal form
/// the nodes are exactly the breakpoints; a map without breakpoints (a
/// rotation or reflection) keeps the single anchor node `(0, f(0))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlRepr", into = "PlRepr")]
pub struct PiecewiseAffineMap {
    reversing: bool,
    nodes: Vec<(Angle, Angle)>,
}

#[derive(Serialize, Deserialize)]
struct PlRepr {
    orientation: Classification,
    nodes: Vec<(Angle, Angle)>,
}

impl TryFrom<PlRepr> for PiecewiseAffineMap {
    type Error = CyclicError;
    fn try_from(r: PlRepr) -> Result<Self, CyclicError> {
        let reversing = match r.orientation {
            Classification::Preserving => false,
            Classification::Reversing => true,
            Classification::Neither => return Err(CyclicError::NotMonotone),
        };
        PiecewiseAffineMap::from_nodes(r.nodes, reversing)
    }
}

impl From<PiecewiseAffineMap> for PlRepr {
    fn from(m: PiecewiseAffineMap) -> PlRepr {
        PlRepr {
            orientation: m.classification(),
            nodes: m.nodes,
        }
    }
}

fn arc_len(from: &Angle, to: &Angle) -> BigRational {
    let l = from.arc_to(to);
    if l.is_zero() {
        BigRational::one()
    } else {
        l
    }
}

impl PiecewiseAffineMap {
    pub fn identity() -> Self {
        PiecewiseAffineMap {
            reversing: false,
            nodes: vec![(Angle::zero(), Angle::zero())],
        }
    }

    /// `x ↦ x + by`.
    pub fn rotation(by: &Angle) -> Self {
        PiecewiseAffineMap {
            reversing: false,
            nodes: vec![(Angle::zero(), by.clone())],
        }
    }

    /// `x ↦ c − x`.
    pub fn reflection(c: &Angle) -> Self {
        PiecewiseAffineMap {
            reversing: true,
            nodes: vec![(Angle::zero(), c.clone())],
        }
    }

    /// Affine interpolation of the given nodes with the given orientation.
    /// With no nodes this is the identity (or `x ↦ −x`).
    pub fn from_nodes(nodes: impl IntoIterator<Item = (Angle, Angle)>, reversing: bool) -> Result<Self, CyclicError> {
        let m = FinitePartialMap::new(nodes)?;
        if m.is_empty() {
            return Ok(if reversing {
                Self::reflection(&Angle::zero())
            } else {
                Self::identity()
            });
        }
        if m.len() >= 3 {
            let want = if reversing {
                Classification::Reversing
            } else {
                Classification::Preserving
            };
            if classify_pairs(m.pairs()) != want {
                return Err(CyclicError::NotMonotone);
            }
        }
        Ok(PiecewiseAffineMap {
            reversing,
            nodes: m.pairs().to_vec(),
        }
        .normalized())
    }

    pub fn is_reversing(&self) -> bool {
        self.reversing
    }

    pub fn classification(&self) -> Classification {
        if self.reversing {
            Classification::Reversing
        } else {
            Classification::Preserving
        }
    }

    pub fn nodes(&self) -> &[(Angle, Angle)] {
        &self.nodes
    }

    /// True breakpoints (empty for rotations and reflections).
    pub fn breakpoints(&self) -> Vec<Angle> {
        if self.nodes.len() == 1 {
            Vec::new()
        } else {
            self.nodes.iter().map(|(x, _)| x.clone()).collect()
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn piece_index(&self, x: &Angle) -> usize {
        match self.nodes.binary_search_by(|(s, _)| s.cmp(x)) {
            Ok(i) => i,
            Err(0) => self.nodes.len() - 1,
            Err(i) => i - 1,
        }
    }

    fn slope(&self, i: usize) -> BigRational {
        let n = self.nodes.len();
        let (x0, y0) = &self.nodes[i];
        let (x1, y1) = &self.nodes[(i + 1) % n];
        let ly = if self.reversing {
            arc_len(y1, y0)
        } else {
            arc_len(y0, y1)
        };
        ly / arc_len(x0, x1)
    }

    pub fn apply(&self, x: &Angle) -> Angle {
        let i = self.piece_index(x);
        let (x0, y0) = &self.nodes[i];
        let d = x0.arc_to(x) * self.slope(i);
        if self.reversing {
            y0.shift(&-d)
        } else {
            y0.shift(&d)
        }
    }

    fn normalized(mut self) -> Self {
        let n = self.nodes.len();
        if n > 1 {
            let slopes: Vec<BigRational> = (0..n).map(|i| self.slope(i)).collect();
            let keep: Vec<(Angle, Angle)> = (0..n)
                .filter(|&i| slopes[(i + n - 1) % n] != slopes[i])
                .map(|i| self.nodes[i].clone())
                .collect();
            if keep.is_empty() {
                let y = self.apply(&Angle::zero());
                self.nodes = vec![(Angle::zero(), y)];
            } else {
                self.nodes = keep;
            }
        } else if !self.nodes[0].0.is_zero() {
            let y = self.apply(&Angle::zero());
            self.nodes = vec![(Angle::zero(), y)];
        }
        self
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PiecewiseAffineMap) -> PiecewiseAffineMap {
        let inv = other.inverse();
        let mut pts: Vec<Angle> = other.nodes.iter().map(|(x, _)| x.clone()).collect();
        pts.extend(self.nodes.iter().map(|(x, _)| inv.apply(x)));
        pts.sort();
        pts.dedup();
        let nodes = pts
            .into_iter()
            .map(|x| {
                let y = self.apply(&other.apply(&x));
                (x, y)
            })
            .collect();
        PiecewiseAffineMap {
            reversing: self.reversing ^ other.reversing,
            nodes,
        }
        .normalized()
    }

    pub fn inverse(&self) -> PiecewiseAffineMap {
        let mut nodes: Vec<(Angle, Angle)> = self.nodes.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        nodes.sort();
        PiecewiseAffineMap {
            reversing: self.reversing,
            nodes,
        }
        .normalized()
    }

    /// The restriction to finitely many points.
    pub fn restrict<'a>(&self, pts: impl IntoIterator<Item = &'a Angle>) -> FinitePartialMap {
        FinitePartialMap::new(pts.into_iter().map(|x| (x.clone(), self.apply(x))))
            .expect("a bijection restricts to an injective map")
    }
}

/// The order-preserving map of the transitivity proof: translate `a` to `0`,
/// then the two-piece rule `[0,b) ∋ x ↦ b'x/b`, `[b,1) ∋ x ↦ b' + (1−b')(x−b)/(1−b)`,
/// then translate `0` to `a2`. It sends `a ↦ a2` and `b ↦ b2`.
pub fn two_transitive_witness(a: &Angle, b: &Angle, a2: &Angle, b2: &Angle) -> Result<PiecewiseAffineMap, CyclicError> {
    if a == b || a2 == b2 {
        return Err(CyclicError::DegeneratePair);
    }
    PiecewiseAffineMap::from_nodes([(a.clone(), a2.clone()), (b.clone(), b2.clone())], false)
}

/// The canonical bijection extending `m`: affine interpolation between the
/// pairs of `m` with the requested orientation. With one pair it is the
/// translation (or the reflection through the pair), with none the identity
/// (or `x ↦ −x`).
pub fn canonical_extension(m: &FinitePartialMap, reversing: bool) -> Result<PiecewiseAffineMap, CyclicError> {
    PiecewiseAffineMap::from_nodes(m.pairs().iter().cloned(), reversing)
}

/// Orientation to use when extending `m`: maps with fewer than three pairs are
/// treated as preserving.
fn extension_orientation(m: &FinitePartialMap) -> Result<bool, CyclicError> {
    if m.len() < 3 {
        return Ok(false);
    }
    match classify_pairs(m.pairs()) {
        Classification::Preserving => Ok(false),
        Classification::Reversing => Ok(true),
        Classification::Neither => Err(CyclicError::NotMonotone),
    }
}

/// Back-and-forth step: extends `m` to `x` using the canonical extension,
/// so repeated extensions never depend on the enumeration order.
pub fn extend_point(m: &FinitePartialMap, x: &Angle) -> Result<FinitePartialMap, CyclicError> {
    if m.get(x).is_some() {
        return Err(CyclicError::AlreadyDefined);
    }
    let rev = extension_orientation(m)?;
    let y = canonical_extension(m, rev)?.apply(x);
    m.with_pair(x.clone(), y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: i64, q: i64) -> Angle {
        Angle::frac(p, q)
    }

    #[test]
    fn witness_examples() {
        let id = two_transitive_witness(&a(0, 1), &a(1, 2), &a(0, 1), &a(1, 2)).unwrap();
        assert!(id.is_identity());
        let w = two_transitive_witness(&a(0, 1), &a(1, 4), &a(0, 1), &a(1, 2)).unwrap();
        assert_eq!(w.apply(&a(1, 8)), a(1, 4));
        // second piece: 1/2 + (2/3)(x − 1/4)
        assert_eq!(
            w.apply(&a(5, 8)),
            a(1, 2).shift(&(a(3, 8).value() * BigRational::new(2.into(), 3.into())))
        );
        let t = two_transitive_witness(&a(1, 3), &a(2, 3), &a(0, 1), &a(1, 2)).unwrap();
        assert_eq!(t.apply(&a(1, 3)), a(0, 1));
        assert_eq!(t.apply(&a(2, 3)), a(1, 2));
        assert!(two_transitive_witness(&a(0, 1), &a(0, 1), &a(0, 1), &a(1, 2)).is_err());
    }

    #[test]
    fn extend_examples() {
        let id = FinitePartialMap::identity_on(&[a(0, 1), a(1, 2)]);
        assert_eq!(extend_point(&id, &a(1, 4)).unwrap().get(&a(1, 4)), Some(&a(1, 4)));
        let m = FinitePartialMap::new([(a(0, 1), a(0, 1)), (a(1, 2), a(1, 4))]).unwrap();
        assert_eq!(extend_point(&m, &a(1, 4)).unwrap().get(&a(1, 4)), Some(&a(1, 8)));
        let e = extend_point(&FinitePartialMap::default(), &a(0, 1)).unwrap();
        assert_eq!(e.get(&a(0, 1)), Some(&a(0, 1)));
    }

    #[test]
    fn reflection_is_reversing_involution() {
        let r = PiecewiseAffineMap::reflection(&Angle::zero());
        assert_eq!(r.apply(&a(1, 3)), a(2, 3));
        assert!(r.compose(&r).is_identity());
        let m = FinitePartialMap::new([(a(1, 3), a(2, 3)), (a(2, 3), a(1, 3))]).unwrap();
        let e = canonical_extension(&m, true).unwrap();
        assert_eq!(e, PiecewiseAffineMap::reflection(&Angle::zero()));
    }

    #[test]
    fn compose_and_inverse() {
        let f = PiecewiseAffineMap::from_nodes([(a(0, 1), a(1, 5)), (a(1, 3), a(1, 2)), (a(1, 2), a(3, 4))], false)
            .unwrap();
        let g = PiecewiseAffineMap::from_nodes([(a(1, 7), a(6, 7)), (a(5, 7), a(1, 7))], true).unwrap();
        let fg = f.compose(&g);
        for x in [a(0, 1), a(1, 9), a(2, 5), a(7, 8)] {
            assert_eq!(fg.apply(&x), f.apply(&g.apply(&x)));
            assert_eq!(f.inverse().apply(&f.apply(&x)), x);
        }
        assert!(fg.is_reversing());
        assert!(f.compose(&f.inverse()).is_identity());
    }
}
