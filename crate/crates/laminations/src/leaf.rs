//! Leaves: chords of the disk between two angles.

use std::fmt;

use cyclic_order::Angle;
use serde::{Deserialize, Serialize};

use crate::LaminationError;

/// An unordered pair of distinct angles, stored in increasing order of
/// their lifts to `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Angle, Angle)", into = "(Angle, Angle)")]
pub struct Leaf {
    a: Angle,
    b: Angle,
}

impl Leaf {
    pub fn new(x: Angle, y: Angle) -> Result<Self, LaminationError> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Leaf { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(Leaf { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(LaminationError::DegenerateLeaf(x.to_string())),
        }
    }

    /// Parses two `"p/q"` angles.
    pub fn parse(x: &str, y: &str) -> Result<Self, LaminationError> {
        let p = |s: &str| s.parse::<Angle>().map_err(|e| LaminationError::Invalid(e.to_string()));
        Leaf::new(p(x)?, p(y)?)
    }

    pub fn endpoints(&self) -> (&Angle, &Angle) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, x: &Angle) -> bool {
        self.a == *x || self.b == *x
    }

    pub fn shares_endpoint(&self, other: &Leaf) -> bool {
        self.contains(&other.a) || self.contains(&other.b)
    }

    /// The image under doubling; `None` for a diameter, which collapses.
    pub fn double(&self) -> Option<Leaf> {
        Leaf::new(self.a.double(), self.b.double()).ok()
    }

    /// The two ways of pairing the four preimages into two leaves:
    /// `A = {a/2, b/2}, {a/2+1/2, b/2+1/2}` and
    /// `B = {a/2, b/2+1/2}, {a/2+1/2, b/2}`.
    pub fn preimage_pairings(&self) -> [[Leaf; 2]; 2] {
        let (a0, a1) = self.a.halves();
        let (b0, b1) = self.b.halves();
        let leaf =
            |x: &Angle, y: &Angle| Leaf::new(x.clone(), y.clone()).expect("halves of distinct angles are distinct");
        [[leaf(&a0, &b0), leaf(&a1, &b1)], [leaf(&a0, &b1), leaf(&a1, &b0)]]
    }
}

impl TryFrom<(Angle, Angle)> for Leaf {
    type Error = LaminationError;
    fn try_from((x, y): (Angle, Angle)) -> Result<Self, Self::Error> {
        Leaf::new(x, y)
    }
}

impl From<Leaf> for (Angle, Angle) {
    fn from(l: Leaf) -> Self {
        (l.a, l.b)
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether two leaves cross inside the open disk: their endpoint pairs
/// separate each other. Leaves sharing an endpoint never cross.
pub fn crosses(l1: &Leaf, l2: &Leaf) -> bool {
    // With both pairs sorted, interleaving is a comparison of lifts.
    (l1.a < l2.a && l2.a < l1.b && l1.b < l2.b) || (l2.a < l1.a && l1.a < l2.b && l2.b < l1.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(x: &str, y: &str) -> Leaf {
        Leaf::parse(x, y).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(&leaf("0", "1/2"), &leaf("1/4", "3/4")));
        assert!(!crosses(&leaf("0", "1/4"), &leaf("1/2", "3/4")));
        assert!(!crosses(&leaf("1/3", "2/3"), &leaf("1/6", "5/6")));
        assert!(!crosses(&leaf("1/3", "2/3"), &leaf("2/3", "5/6")));
    }

    #[test]
    fn endpoints_are_sorted() {
        let l = leaf("4/7", "3/7");
        assert_eq!(l.endpoints().0.to_string(), "3/7");
        assert!(Leaf::parse("1/3", "1/3").is_err());
    }

    #[test]
    fn diameters_collapse() {
        assert_eq!(leaf("1/6", "2/3").double(), None);
        assert_eq!(leaf("3/7", "4/7").double(), Some(leaf("1/7", "6/7")));
    }
}
