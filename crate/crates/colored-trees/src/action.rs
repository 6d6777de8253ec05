//! Local actions and the groups they are tested against.

use std::collections::BTreeSet;
use std::fmt;

use cyclic_order::{Angle, Classification, PiecewiseAffineMap};
use serde::{Deserialize, Serialize};

use crate::shape::{Color, Degree};
use crate::TreeError;

/// A permutation of `{1..n}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm(Vec<u32>);

impl TryFrom<Vec<u32>> for Perm {
    type Error = TreeError;
    fn try_from(v: Vec<u32>) -> Result<Self, TreeError> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.0
    }
}

impl Perm {
    /// `images[i-1]` is the image of `i`.
    pub fn new(images: Vec<u32>) -> Result<Self, TreeError> {
        let n = images.len() as u32;
        let set: BTreeSet<u32> = images.iter().copied().collect();
        if set.len() != images.len() || images.iter().any(|&i| i == 0 || i > n) {
            return Err(TreeError::InconsistentElement(format!(
                "{images:?} is not a permutation"
            )));
        }
        Ok(Perm(images))
    }

    pub fn identity(n: u32) -> Self {
        Perm((1..=n).collect())
    }

    /// `i ↦ i + k` (mod n, on 1..n).
    pub fn rotation(n: u32, k: i64) -> Self {
        let n64 = n as i64;
        Perm((0..n64).map(|i| ((i + k).rem_euclid(n64) + 1) as u32).collect())
    }

    /// Permutation from disjoint cycles, e.g. `[[1,2,3]]`.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self, TreeError> {
        let mut v: Vec<u32> = (1..=n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a > n {
                    return Err(TreeError::InconsistentElement(format!("{a} not in 1..{n}")));
                }
                v[a as usize - 1] = b;
            }
        }
        Perm::new(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize - 1] = i as u32 + 1;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| j == i as u32 + 1)
    }

    /// `Some(k)` if this is the rotation `i ↦ i + k`.
    pub fn rotation_amount(&self) -> Option<u32> {
        let n = self.degree();
        let k = (self.apply(1) + n - 1) % n;
        (*self == Perm::rotation(n, k as i64)).then_some(k)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "]")
    }
}

/// The permutation `σ_g(v)` of the colors at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalAction {
    Ear(Perm),
    Dense(PiecewiseAffineMap),
}

impl LocalAction {
    pub fn identity(d: Degree) -> Self {
        match d {
            Degree::Finite(n) => LocalAction::Ear(Perm::identity(n)),
            Degree::Infinite => LocalAction::Dense(PiecewiseAffineMap::identity()),
        }
    }

    /// The cyclic shift sending `from` to `to` on a side of degree `d`.
    pub fn shift_on(d: Degree, from: &Color, to: &Color) -> Result<Self, TreeError> {
        match (d, from, to) {
            (Degree::Finite(n), Color::Ear(a), Color::Ear(b)) => {
                Ok(LocalAction::Ear(Perm::rotation(n, *b as i64 - *a as i64)))
            }
            (Degree::Infinite, Color::Dense(a), Color::Dense(b)) => {
                Ok(LocalAction::Dense(PiecewiseAffineMap::rotation(&b.sub(a))))
            }
            _ => Err(TreeError::InconsistentElement(format!(
                "shift {from}→{to} does not fit the side"
            ))),
        }
    }

    pub fn fits(&self, d: Degree) -> bool {
        match (self, d) {
            (LocalAction::Ear(p), Degree::Finite(n)) => p.degree() == n,
            (LocalAction::Dense(_), Degree::Infinite) => true,
            _ => false,
        }
    }

    pub fn apply(&self, c: &Color) -> Color {
        match (self, c) {
            (LocalAction::Ear(p), Color::Ear(i)) => Color::Ear(p.apply(*i)),
            (LocalAction::Dense(m), Color::Dense(a)) => Color::Dense(m.apply(a)),
            _ => panic!("local action applied to a color of the other side"),
        }
    }

    pub fn apply_inverse(&self, c: &Color) -> Color {
        match (self, c) {
            (LocalAction::Ear(p), Color::Ear(i)) => Color::Ear(p.inverse().apply(*i)),
            (LocalAction::Dense(m), Color::Dense(a)) => Color::Dense(m.inverse().apply(a)),
            _ => panic!("local action applied to a color of the other side"),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LocalAction) -> LocalAction {
        match (self, other) {
            (LocalAction::Ear(a), LocalAction::Ear(b)) => LocalAction::Ear(a.compose(b)),
            (LocalAction::Dense(a), LocalAction::Dense(b)) => LocalAction::Dense(a.compose(b)),
            _ => panic!("composing local actions of different sides"),
        }
    }

    pub fn inverse(&self) -> LocalAction {
        match self {
            LocalAction::Ear(p) => LocalAction::Ear(p.inverse()),
            LocalAction::Dense(m) => LocalAction::Dense(m.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            LocalAction::Ear(p) => p.is_identity(),
            LocalAction::Dense(m) => m.is_identity(),
        }
    }

    /// Preserving/reversing for Dense actions; `None` on the Ear side.
    pub fn classification(&self) -> Option<Classification> {
        match self {
            LocalAction::Ear(_) => None,
            LocalAction::Dense(m) => Some(m.classification()),
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            LocalAction::Ear(p) => Some(p),
            LocalAction::Dense(_) => None,
        }
    }

    pub fn as_dense(&self) -> Option<&PiecewiseAffineMap> {
        match self {
            LocalAction::Dense(m) => Some(m),
            LocalAction::Ear(_) => None,
        }
    }
}

impl fmt::Display for LocalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalAction::Ear(p) => write!(f, "{p}"),
            LocalAction::Dense(m) => {
                write!(f, "{}", if m.is_reversing() { "rev" } else { "pres" })?;
                for (x, y) in m.nodes() {
                    write!(f, " {x}↦{y}")?;
                }
                Ok(())
            }
        }
    }
}

/// A permutation group on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermGroup {
    Symmetric,
    /// The rotations `i ↦ i + k`.
    Cyclic,
    Trivial,
    /// The group generated by the listed permutations.
    Generated(Vec<Perm>),
}

impl PermGroup {
    pub fn contains(&self, p: &Perm) -> bool {
        match self {
            PermGroup::Symmetric => true,
            PermGroup::Cyclic => p.rotation_amount().is_some(),
            PermGroup::Trivial => p.is_identity(),
            PermGroup::Generated(gens) => {
                let n = p.degree();
                if gens.iter().any(|g| g.degree() != n) {
                    return false;
                }
                let mut seen: BTreeSet<Perm> = BTreeSet::new();
                let mut stack = vec![Perm::identity(n)];
                seen.insert(Perm::identity(n));
                while let Some(q) = stack.pop() {
                    if q == *p {
                        return true;
                    }
                    for g in gens {
                        let r = g.compose(&q);
                        if seen.insert(r.clone()) {
                            stack.push(r);
                        }
                    }
                }
                false
            }
        }
    }
}

/// A group of automorphisms of the cyclic order on Q/Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenseGroup {
    /// All preserving or reversing bijections.
    AutS,
    /// Preserving bijections only.
    AutO,
    Trivial,
}

impl DenseGroup {
    pub fn contains(&self, m: &PiecewiseAffineMap) -> bool {
        match self {
            DenseGroup::AutS => true,
            DenseGroup::AutO => !m.is_reversing(),
            DenseGroup::Trivial => m.is_identity(),
        }
    }
}

/// Reflection `x ↦ c − x` as a local action.
pub fn reflection(c: &Angle) -> LocalAction {
    LocalAction::Dense(PiecewiseAffineMap::reflection(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let r = Perm::rotation(3, 1);
        assert_eq!(r.images(), &[2, 3, 1]);
        assert_eq!(r.rotation_amount(), Some(1));
        assert!(r.compose(&r.inverse()).is_identity());
        let t = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(t.rotation_amount(), None);
        assert!(PermGroup::Generated(vec![r.clone()]).contains(&r.compose(&r)));
        assert!(!PermGroup::Generated(vec![r.clone()]).contains(&t));
        assert!(PermGroup::Cyclic.contains(&r));
        assert!(!PermGroup::Trivial.contains(&r));
        assert!(Perm::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn shifts() {
        let s = LocalAction::shift_on(Degree::Finite(4), &Color::Ear(1), &Color::Ear(3)).unwrap();
        assert_eq!(s.apply(&Color::Ear(1)), Color::Ear(3));
        assert_eq!(s.apply(&Color::Ear(4)), Color::Ear(2));
        let d = LocalAction::shift_on(
            Degree::Infinite,
            &Color::Dense(Angle::frac(1, 4)),
            &Color::Dense(Angle::frac(1, 2)),
        )
        .unwrap();
        assert_eq!(d.apply(&Color::Dense(Angle::zero())), Color::Dense(Angle::frac(1, 4)));
    }
}
