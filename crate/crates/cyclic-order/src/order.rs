//! Orientation, separation and finite partial maps.

use std::collections::BTreeMap;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::{Angle, CyclicError};

/// Sign of a cyclically ordered triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Neg for Orientation {
    type Output = Orientation;
    fn neg(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Positive iff, lifting `b` and `c` into `(a, a+1)`, the lift of `b` comes
/// first; equivalently, `a < b < c` up to cyclic rotation of the triple.
pub fn orient(a: &Angle, b: &Angle, c: &Angle) -> Result<Orientation, CyclicError> {
    if a == b || b == c || a == c {
        return Err(CyclicError::DegenerateTriple);
    }
    let (ab, bc, ca) = (a < b, b < c, c < a);
    // Exactly one or exactly two of the three comparisons hold; a cyclic
    // rotation of an increasing triple has exactly two.
    Ok(if (ab as u8 + bc as u8 + ca as u8) == 2 {
        Orientation::Positive
    } else {
        Orientation::Negative
    })
}

/// Whether `{a, c}` interleaves `{b, d}`: `b` and `d` lie on opposite
/// sides of the chord `ac`, i.e. `[a,b,c] ≠ [a,d,c]`.
pub fn separates(a: &Angle, b: &Angle, c: &Angle, d: &Angle) -> Result<bool, CyclicError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(CyclicError::DegenerateQuadruple);
            }
        }
    }
    Ok(orient(a, b, c)? != orient(a, d, c)?)
}

/// Whether `x` lies on the open positive arc from `from` to `to`.
pub fn strictly_between(from: &Angle, x: &Angle, to: &Angle) -> bool {
    if from == to {
        return x != from;
    }
    x != from && from.arc_to(x) < from.arc_to(to)
}

/// Minimum of `F ∖ {x}` in the linear order `y <_x z ⟺ [x, y, z]`.
pub fn cyclic_successor<'a, I>(f: I, x: &Angle) -> Result<Angle, CyclicError>
where
    I: IntoIterator<Item = &'a Angle>,
{
    let pts: Vec<&Angle> = f.into_iter().collect();
    if !pts.contains(&x) {
        return Err(CyclicError::NotMember);
    }
    pts.iter()
        .filter(|y| **y != x)
        .min_by(|y, z| x.arc_to(y).cmp(&x.arc_to(z)))
        .map(|y| (*y).clone())
        .ok_or(CyclicError::Singleton)
}

/// Result of comparing a finite map against the cyclic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Preserving,
    Reversing,
    Neither,
}

/// A finite injective partial map of Q/Z, kept sorted by source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinitePartialMap {
    pairs: Vec<(Angle, Angle)>,
}

impl FinitePartialMap {
    pub fn new(pairs: impl IntoIterator<Item = (Angle, Angle)>) -> Result<Self, CyclicError> {
        let mut by_src = BTreeMap::new();
        for (s, t) in pairs {
            match by_src.get(&s) {
                Some(old) if *old == t => {}
                Some(_) => return Err(CyclicError::NotInjective),
                None => {
                    by_src.insert(s, t);
                }
            }
        }
        let mut targets: Vec<&Angle> = by_src.values().collect();
        targets.sort();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(CyclicError::NotInjective);
        }
        Ok(FinitePartialMap {
            pairs: by_src.into_iter().collect(),
        })
    }

    pub fn identity_on<'a>(pts: impl IntoIterator<Item = &'a Angle>) -> Self {
        FinitePartialMap::new(pts.into_iter().map(|a| (a.clone(), a.clone()))).expect("identity is injective")
    }

    pub fn pairs(&self) -> &[(Angle, Angle)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, x: &Angle) -> Option<&Angle> {
        self.pairs
            .binary_search_by(|(s, _)| s.cmp(x))
            .ok()
            .map(|i| &self.pairs[i].1)
    }

    pub fn sources(&self) -> impl Iterator<Item = &Angle> {
        self.pairs.iter().map(|(s, _)| s)
    }

    pub fn targets(&self) -> impl Iterator<Item = &Angle> {
        self.pairs.iter().map(|(_, t)| t)
    }

    pub fn inverse(&self) -> FinitePartialMap {
        FinitePartialMap::new(self.pairs.iter().map(|(s, t)| (t.clone(), s.clone())))
            .expect("inverse of an injective map is injective")
    }

    /// Adds one pair, rejecting clashes with injectivity.
    pub fn with_pair(&self, s: Angle, t: Angle) -> Result<FinitePartialMap, CyclicError> {
        FinitePartialMap::new(self.pairs.iter().cloned().chain(std::iter::once((s, t))))
    }
}

impl Serialize for FinitePartialMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePartialMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(Angle, Angle)>::deserialize(d)?;
        FinitePartialMap::new(pairs).map_err(serde::de::Error::custom)
    }
}

/// Preserving / reversing / neither, by comparing orientations of every
/// source triple with its target triple.
pub fn classify(m: &FinitePartialMap) -> Result<Classification, CyclicError> {
    if m.len() < 3 {
        return Err(CyclicError::TooFewPoints);
    }
    Ok(classify_pairs(m.pairs()))
}

/// Classification of a sorted-by-source injective list with at least three
/// pairs. Sources are in cyclic order, so it suffices to read the targets in
/// that order: the map preserves iff the targets are cyclically increasing.
pub(crate) fn classify_pairs(pairs: &[(Angle, Angle)]) -> Classification {
    let t: Vec<&Angle> = pairs.iter().map(|(_, t)| t).collect();
    let n = t.len();
    let mut up = 0usize;
    let mut down = 0usize;
    for i in 0..n {
        if t[i] < t[(i + 1) % n] {
            up += 1;
        } else {
            down += 1;
        }
    }
    // A cyclically increasing sequence has exactly one descent.
    if down == 1 {
        Classification::Preserving
    } else if up == 1 {
        Classification::Reversing
    } else {
        Classification::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: i64, q: i64) -> Angle {
        Angle::frac(p, q)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&a(0, 1), &a(1, 4), &a(1, 2)).unwrap(), Orientation::Positive);
        assert_eq!(orient(&a(1, 2), &a(1, 4), &a(0, 1)).unwrap(), Orientation::Negative);
        assert_eq!(orient(&a(3, 7), &a(4, 7), &a(1, 7)).unwrap(), Orientation::Positive);
        assert!(orient(&a(1, 2), &a(1, 2), &a(0, 1)).is_err());
    }

    #[test]
    fn separation_examples() {
        assert!(separates(&a(0, 1), &a(1, 4), &a(1, 2), &a(3, 4)).unwrap());
        assert!(!separates(&a(0, 1), &a(1, 8), &a(1, 2), &a(1, 4)).unwrap());
        assert!(separates(&a(0, 1), &a(1, 8), &a(1, 4), &a(1, 2)).unwrap());
    }

    #[test]
    fn classify_examples() {
        let id = FinitePartialMap::identity_on(&[a(0, 1), a(1, 4), a(1, 2)]);
        assert_eq!(classify(&id).unwrap(), Classification::Preserving);
        let refl = FinitePartialMap::new([a(0, 1), a(1, 4), a(1, 2), a(3, 4)].map(|x| (x.clone(), x.neg()))).unwrap();
        assert_eq!(classify(&refl).unwrap(), Classification::Reversing);
        let swap = FinitePartialMap::new([
            (a(0, 1), a(0, 1)),
            (a(1, 4), a(1, 2)),
            (a(1, 2), a(1, 4)),
            (a(3, 4), a(3, 4)),
        ])
        .unwrap();
        assert_eq!(classify(&swap).unwrap(), Classification::Neither);
        assert!(classify(&FinitePartialMap::default()).is_err());
    }

    #[test]
    fn successor_examples() {
        let f = [a(0, 1), a(1, 4), a(1, 2)];
        assert_eq!(cyclic_successor(&f, &a(0, 1)).unwrap(), a(1, 4));
        assert_eq!(cyclic_successor(&f, &a(1, 2)).unwrap(), a(0, 1));
        let g = [a(1, 7), a(2, 7), a(4, 7)];
        assert_eq!(cyclic_successor(&g, &a(4, 7)).unwrap(), a(1, 7));
        assert!(matches!(
            cyclic_successor(&[a(0, 1)], &a(0, 1)),
            Err(CyclicError::Singleton)
        ));
        assert!(matches!(cyclic_successor(&f, &a(1, 3)), Err(CyclicError::NotMember)));
    }

    #[test]
    fn rejects_non_injective() {
        assert!(FinitePartialMap::new([(a(0, 1), a(1, 2)), (a(1, 3), a(1, 2))]).is_err());
    }
}
