//! Bijections of the colors at a branch point, and the groups they are
//! checked against.

use std::collections::BTreeMap;

use colored_trees::{Perm, PermGroup};
use cyclic_order::{canonical_extension, classify, Angle, Classification, FinitePartialMap, PiecewiseAffineMap};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::point::Palette;
use crate::DendriteError;

/// The local action `σ_h(b)`: a bijection of the palette.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMap {
    /// A permutation of a finite palette, as a complete table.
    Table(BTreeMap<Angle, Angle>),
    /// A piecewise-affine bijection of all angles.
    Dense(PiecewiseAffineMap),
}

fn index(c: &Angle, n: u32) -> u32 {
    (c.value() * BigRational::from_integer(n.into()))
        .to_integer()
        .to_u32()
        .expect("palette color")
}

impl ColorMap {
    pub fn identity(palette: &Palette) -> Self {
        match palette {
            Palette::Finite(_) => ColorMap::Table(palette.colors(0).into_iter().map(|c| (c.clone(), c)).collect()),
            Palette::Dense => ColorMap::Dense(PiecewiseAffineMap::identity()),
        }
    }

    pub fn apply(&self, c: &Angle) -> Angle {
        match self {
            ColorMap::Table(t) => t.get(c).cloned().expect("color of the palette"),
            ColorMap::Dense(m) => m.apply(c),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            ColorMap::Table(t) => ColorMap::Table(t.iter().map(|(a, b)| (b.clone(), a.clone())).collect()),
            ColorMap::Dense(m) => ColorMap::Dense(m.inverse()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ColorMap) -> Self {
        match (self, other) {
            (ColorMap::Table(_), ColorMap::Table(b)) => {
                ColorMap::Table(b.iter().map(|(x, y)| (x.clone(), self.apply(y))).collect())
            }
            (ColorMap::Dense(a), ColorMap::Dense(b)) => ColorMap::Dense(a.compose(b)),
            _ => panic!("composing color maps of different palettes"),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ColorMap::Table(t) => t.iter().all(|(a, b)| a == b),
            ColorMap::Dense(m) => m.is_identity(),
        }
    }

    pub fn classification(&self) -> Classification {
        match self {
            ColorMap::Table(t) => {
                let m =
                    FinitePartialMap::new(t.iter().map(|(a, b)| (a.clone(), b.clone()))).expect("tables are bijective");
                classify(&m).unwrap_or(Classification::Neither)
            }
            ColorMap::Dense(m) => m.classification(),
        }
    }

    /// The permutation of `{1..n}` encoding a table on `k/n`.
    pub fn to_perm(&self, n: u32) -> Option<Perm> {
        match self {
            ColorMap::Table(_) => {
                let images = (0..n)
                    .map(|k| index(&self.apply(&Angle::ratio(k as u64, n as u64)), n) + 1)
                    .collect();
                Perm::new(images).ok()
            }
            ColorMap::Dense(_) => None,
        }
    }

    pub fn from_perm(p: &Perm) -> Self {
        let n = p.degree() as u64;
        ColorMap::Table(
            (1..=p.degree())
                .map(|k| (Angle::ratio(k as u64 - 1, n), Angle::ratio(p.apply(k) as u64 - 1, n)))
                .collect(),
        )
    }
}

/// Completes forced color pairs to a bijection of the palette.
///
/// Finite palettes prefer a rotation, then a reflection (only one kind when
/// `reversing` is given), and otherwise pair the remaining colors in
/// increasing order. Dense palettes use the canonical affine
/// interpolation, oriented by `reversing` or, failing that, by the pairs
/// themselves.
pub fn complete(
    palette: &Palette,
    forced: &FinitePartialMap,
    reversing: Option<bool>,
) -> Result<ColorMap, DendriteError> {
    match palette {
        Palette::Finite(n) => {
            let colors = palette.colors(0);
            let n = *n as u64;
            type Candidate = Box<dyn Fn(&Angle) -> Angle>;
            let mut candidates: Vec<Candidate> = Vec::new();
            if reversing != Some(true) {
                for k in 0..n {
                    let s = Angle::ratio(k, n);
                    candidates.push(Box::new(move |c: &Angle| c.add(&s)));
                }
            }
            if reversing != Some(false) {
                for k in 0..n {
                    let s = Angle::ratio(k, n);
                    candidates.push(Box::new(move |c: &Angle| s.sub(c)));
                }
            }
            for f in &candidates {
                if forced.pairs().iter().all(|(a, b)| f(a) == *b) {
                    return Ok(ColorMap::Table(colors.iter().map(|c| (c.clone(), f(c))).collect()));
                }
            }
            let mut table: BTreeMap<Angle, Angle> = forced.pairs().iter().cloned().collect();
            let free_src = colors.iter().filter(|c| forced.get(c).is_none());
            let used: Vec<&Angle> = forced.targets().collect();
            let free_dst = colors.iter().filter(|c| !used.contains(c));
            for (a, b) in free_src.zip(free_dst) {
                table.insert(a.clone(), b.clone());
            }
            Ok(ColorMap::Table(table))
        }
        Palette::Dense => {
            let rev = match reversing {
                Some(r) => r,
                None if forced.len() >= 3 => match classify(forced) {
                    Ok(Classification::Reversing) => true,
                    Ok(Classification::Preserving) => false,
                    _ => return Err(DendriteError::BoundaryMismatch("forced colors are not monotone".into())),
                },
                None => false,
            };
            canonical_extension(forced, rev)
                .map(ColorMap::Dense)
                .map_err(|e| DendriteError::BoundaryMismatch(e.to_string()))
        }
    }
}

/// Local-action groups for kaleidoscopic membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gamma {
    /// Bijections preserving or reversing the cyclic order of colors.
    AutS,
    /// Bijections preserving the cyclic order of colors.
    AutO,
    Trivial,
    /// A permutation group on the `n` colors of `D_n` (color `k/n` is `k+1`).
    Perm(PermGroup),
}

impl Gamma {
    pub fn contains(&self, m: &ColorMap) -> bool {
        match self {
            Gamma::AutS => m.classification() != Classification::Neither,
            Gamma::AutO => m.classification() == Classification::Preserving,
            Gamma::Trivial => m.is_identity(),
            Gamma::Perm(g) => match m {
                ColorMap::Table(t) => m.to_perm(t.len() as u32).is_some_and(|p| g.contains(&p)),
                ColorMap::Dense(_) => false,
            },
        }
    }

    /// The corresponding permutation group on `{1..n}`.
    pub fn perm_group(&self, n: u32) -> PermGroup {
        match self {
            Gamma::AutS => {
                let flip = Perm::new((1..=n).map(|k| (n + 1 - k) % n + 1).collect()).expect("bijection");
                PermGroup::Generated(vec![Perm::rotation(n, 1), flip])
            }
            Gamma::AutO => PermGroup::Cyclic,
            Gamma::Trivial => PermGroup::Trivial,
            Gamma::Perm(g) => g.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: i64, q: i64) -> Angle {
        Angle::frac(p, q)
    }

    #[test]
    fn finite_completion_prefers_symmetries() {
        let p = Palette::finite(4).unwrap();
        let forced = FinitePartialMap::new([(a(0, 1), a(1, 4))]).unwrap();
        let m = complete(&p, &forced, None).unwrap();
        assert_eq!(m.apply(&a(1, 2)), a(3, 4));
        assert_eq!(m.classification(), Classification::Preserving);
        let r = complete(&p, &forced, Some(true)).unwrap();
        assert_eq!(r.classification(), Classification::Reversing);
        assert_eq!(r.apply(&a(1, 4)), a(0, 1));
        let odd = FinitePartialMap::new([(a(0, 1), a(1, 4)), (a(1, 4), a(0, 1)), (a(1, 2), a(1, 2))]).unwrap();
        let m = complete(&p, &odd, None).unwrap();
        assert_eq!(m.apply(&a(3, 4)), a(3, 4));
        assert_eq!(m.classification(), Classification::Neither);
    }

    #[test]
    fn perm_round_trip_and_groups() {
        let p = Perm::rotation(4, 1);
        let m = ColorMap::from_perm(&p);
        assert_eq!(m.to_perm(4).unwrap(), p);
        assert!(Gamma::AutO.contains(&m));
        assert!(Gamma::Perm(Gamma::AutS.perm_group(4)).contains(&m));
        let flip = complete(
            &Palette::finite(4).unwrap(),
            &FinitePartialMap::new([(a(1, 4), a(3, 4))]).unwrap(),
            Some(true),
        )
        .unwrap();
        assert!(Gamma::AutS.contains(&flip));
        assert!(!Gamma::AutO.contains(&flip));
        assert!(Gamma::AutS.perm_group(4).contains(&flip.to_perm(4).unwrap()));
        assert!(!Gamma::AutO.perm_group(4).contains(&flip.to_perm(4).unwrap()));
    }
}
