//! Finite models of `Split(X, A)`: each `a ∈ A` is doubled into `a⁻ < a⁺`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::order::Orientation;
use crate::{Angle, CyclicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plain,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitPoint {
    pub base: Angle,
    pub side: Side,
}

impl SplitPoint {
    /// The forgetful map `ν`.
    pub fn nu(&self) -> &Angle {
        &self.base
    }

    fn key(&self) -> (&Angle, Side) {
        (&self.base, self.side)
    }
}

/// Cyclic order on split points: the lift of the base order in which `a⁻`
/// immediately precedes `a⁺`.
pub fn split_orient(p: &SplitPoint, q: &SplitPoint, r: &SplitPoint) -> Result<Orientation, CyclicError> {
    let (kp, kq, kr) = (p.key(), q.key(), r.key());
    if kp == kq || kq == kr || kp == kr {
        return Err(CyclicError::DegenerateTriple);
    }
    let increasing = (kp < kq && kq < kr) || (kq < kr && kr < kp) || (kr < kp && kp < kq);
    Ok(if increasing {
        Orientation::Positive
    } else {
        Orientation::Negative
    })
}

/// Doubles every point of `a` inside `points`; the output lists the points in
/// cyclic order starting from the smallest representative.
pub fn split(points: &[Angle], a: &[Angle]) -> Result<Vec<SplitPoint>, CyclicError> {
    let pts: BTreeSet<&Angle> = points.iter().collect();
    if pts.len() != points.len() {
        return Err(CyclicError::DuplicatePoint);
    }
    let aset: BTreeSet<&Angle> = a.iter().collect();
    if !aset.is_subset(&pts) {
        return Err(CyclicError::NotSubset);
    }
    let mut out = Vec::with_capacity(points.len() + aset.len());
    for p in pts {
        if aset.contains(p) {
            out.push(SplitPoint {
                base: p.clone(),
                side: Side::Minus,
            });
            out.push(SplitPoint {
                base: p.clone(),
                side: Side::Plus,
            });
        } else {
            out.push(SplitPoint {
                base: p.clone(),
                side: Side::Plain,
            });
        }
    }
    Ok(out)
}

/// Cyclic successor inside a split configuration.
pub fn split_successor(f: &[SplitPoint], x: &SplitPoint) -> Result<SplitPoint, CyclicError> {
    if !f.contains(x) {
        return Err(CyclicError::NotMember);
    }
    let mut best: Option<&SplitPoint> = None;
    for y in f.iter().filter(|y| *y != x) {
        best = match best {
            None => Some(y),
            Some(b) => {
                if split_orient(x, y, b)? == Orientation::Positive {
                    Some(y)
                } else {
                    Some(b)
                }
            }
        };
    }
    best.cloned().ok_or(CyclicError::Singleton)
}
