//! Branch points of the dendrite and their betweenness.
//!
//! The dendrite is generated from a root branch point `o` with one ray per
//! palette color. A ray is parametrized by dyadic `t ∈ (0, 1)`, and every
//! dyadic parameter is a branch point. The point at parameter `t` on a ray
//! has two *ray directions*: back toward the ray's base, colored `i`, and
//! onward along the ray, colored `j`, where `(i, j)` is the label encoded by
//! `t`. Each other palette color opens a sub-ray. A point is therefore
//! the finite word of `(color, t)` entries leading to it.
//!
//! Labels are decoded from a suffix code in the binary digits of `t`. If
//! `t = 0.b₁…b_L` with `b_L = 1`, then `m` is the number of zeros between
//! `b_L` and the previous `1` (or `L − 1` if there is none), and the label
//! is the `m`-th pair of the palette's pair enumeration. Every open
//! interval contains points of every code `m`, so every ordered pair of
//! colors labels a dense set of points on every arc.

use std::fmt;

use cyclic_order::{angle_index_where, cantor_unpair, nth_angle_where, Angle};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::DendriteError;

/// Colors available at every branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Palette {
    /// `D_n`: the `n` colors `0, 1/n, …, (n−1)/n`.
    Finite(u32),
    /// `D_∞`: every angle.
    Dense,
}

impl Palette {
    pub fn finite(n: u32) -> Result<Self, DendriteError> {
        if n < 3 {
            return Err(DendriteError::BadArity(n));
        }
        Ok(Palette::Finite(n))
    }

    pub fn contains(&self, c: &Angle) -> bool {
        match self {
            Palette::Finite(n) => (c.value() * BigRational::from_integer((*n).into())).is_integer(),
            Palette::Dense => true,
        }
    }

    /// Colors in height order (all of them for a finite palette).
    pub fn colors(&self, limit: usize) -> Vec<Angle> {
        match self {
            Palette::Finite(n) => (0..*n as u64).map(|k| Angle::ratio(k, *n as u64)).collect(),
            Palette::Dense => cyclic_order::angles_by_height().take(limit).collect(),
        }
    }

    /// Number of ordered pairs of distinct colors (`None` when infinite).
    pub fn pair_count(&self) -> Option<u64> {
        match self {
            Palette::Finite(n) => Some(*n as u64 * (*n as u64 - 1)),
            Palette::Dense => None,
        }
    }

    /// The `m`-th ordered pair of distinct colors, cycling for finite
    /// palettes.
    pub fn pair(&self, m: u64) -> (Angle, Angle) {
        match self {
            Palette::Finite(n) => {
                let n = *n as u64;
                let k = m % (n * (n - 1));
                let i = k / (n - 1);
                let mut j = k % (n - 1);
                if j >= i {
                    j += 1;
                }
                (Angle::ratio(i, n), Angle::ratio(j, n))
            }
            Palette::Dense => {
                let (a, b) = cantor_unpair(m);
                let i = nth_angle_where(a, |_| true);
                let j = nth_angle_where(b, |x| *x != i);
                (i, j)
            }
        }
    }

    /// The least `m` with `pair(m) = (i, j)`.
    pub fn pair_index(&self, i: &Angle, j: &Angle) -> u64 {
        match self {
            Palette::Finite(n) => {
                let n = *n as u64;
                let ii = index_of(i, n);
                let jj = index_of(j, n);
                ii * (n - 1) + if jj > ii { jj - 1 } else { jj }
            }
            Palette::Dense => {
                let a = angle_index_where(i, |_| true).expect("every angle is enumerated");
                let b = angle_index_where(j, |x| x != i).expect("j differs from i");
                cyclic_order::cantor_pair(a, b)
            }
        }
    }

    /// The label requested at depth `r` of the arc recursion; every pair
    /// recurs infinitely often.
    pub fn request(&self, r: u64) -> (Angle, Angle) {
        match self {
            Palette::Finite(_) => self.pair(r),
            Palette::Dense => {
                let (w, s) = triangular_split(r);
                let _ = w;
                self.pair(s)
            }
        }
    }

    /// Smallest palette color different from `c`.
    pub fn first_color_except(&self, c: &Angle) -> Angle {
        self.colors(3)
            .into_iter()
            .find(|x| x != c)
            .expect("palettes have at least three colors")
    }
}

fn index_of(c: &Angle, n: u64) -> u64 {
    (c.value() * BigRational::from_integer(n.into()))
        .to_integer()
        .to_u64()
        .expect("palette color")
}

/// `r = w(w+1)/2 + s` with `0 ≤ s ≤ w`.
fn triangular_split(r: u64) -> (u64, u64) {
    let mut w = ((((8 * r + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    while w * (w + 1) / 2 > r {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= r {
        w += 1;
    }
    (w, r - w * (w + 1) / 2)
}

/// Dyadic level of `t` (its denominator is `2^level`).
pub fn level(t: &BigRational) -> u64 {
    t.denom().bits() - 1
}

/// The suffix code `m` of a dyadic `t ∈ (0, 1)`.
pub fn code(t: &BigRational) -> u64 {
    let l = level(t);
    let n: BigInt = t.numer() >> 1usize;
    if n.is_zero() {
        l - 1
    } else {
        n.trailing_zeros().expect("non-zero")
    }
}

pub fn is_dyadic_unit(t: &BigRational) -> bool {
    t.is_positive() && *t < BigRational::one() && t.denom().magnitude().count_ones() == 1
}

/// One step of an address: the ray color and the parameter on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Angle, String)", into = "(Angle, String)")]
pub struct Entry {
    pub color: Angle,
    pub t: BigRational,
}

impl TryFrom<(Angle, String)> for Entry {
    type Error = DendriteError;
    fn try_from((color, t): (Angle, String)) -> Result<Self, DendriteError> {
        let t: BigRational = t
            .parse()
            .map_err(|_| DendriteError::InvalidPoint(format!("bad parameter {t:?}")))?;
        if !is_dyadic_unit(&t) {
            return Err(DendriteError::InvalidPoint(format!("{t} is not a dyadic in (0,1)")));
        }
        Ok(Entry { color, t })
    }
}

impl From<Entry> for (Angle, String) {
    fn from(e: Entry) -> Self {
        (e.color, e.t.to_string())
    }
}

/// A branch point, addressed from the root `o`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Entry>);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "o");
        }
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}@{}", e.color, e.t)?;
        }
        Ok(())
    }
}

impl Point {
    pub fn root() -> Self {
        Point(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The point at parameter `t` on the ray of color `c` leaving `self`.
    pub fn ray(&self, c: Angle, t: BigRational) -> Point {
        let mut v = self.0.clone();
        v.push(Entry { color: c, t });
        Point(v)
    }

    /// The point at parameter `t` on the same ray as `self`.
    pub fn along(&self, t: BigRational) -> Point {
        let mut v = self.0.clone();
        v.last_mut().expect("not the root").t = t;
        Point(v)
    }

    /// The base of the ray carrying `self`.
    pub fn base(&self) -> Option<Point> {
        if self.0.is_empty() {
            None
        } else {
            Some(Point(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<&Entry> {
        self.0.last()
    }

    /// `(toward base, onward)` colors of a non-root point.
    pub fn label(&self, palette: &Palette) -> Option<(Angle, Angle)> {
        self.0.last().map(|e| palette.pair(code(&e.t)))
    }

    pub fn validate(&self, palette: &Palette) -> Result<(), DendriteError> {
        let mut prev: Option<(Angle, Angle)> = None;
        for e in &self.0 {
            if !palette.contains(&e.color) {
                return Err(DendriteError::InvalidPoint(format!(
                    "{self}: color {} outside the palette",
                    e.color
                )));
            }
            if !is_dyadic_unit(&e.t) {
                return Err(DendriteError::InvalidPoint(format!("{self}: bad parameter {}", e.t)));
            }
            if let Some((i, j)) = &prev {
                if e.color == *i || e.color == *j {
                    return Err(DendriteError::InvalidPoint(format!(
                        "{self}: color {} is a ray direction, not a sub-ray",
                        e.color
                    )));
                }
            }
            prev = Some(palette.pair(code(&e.t)));
        }
        Ok(())
    }

    fn common_prefix(&self, other: &Point) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    /// Whether `self` lies on the ray `(base, c)`.
    pub fn on_ray(&self, base: &Point, c: &Angle) -> bool {
        self.0.len() == base.0.len() + 1 && self.0.starts_with(&base.0) && self.0.last().map(|e| &e.color) == Some(c)
    }

    /// The parameter at which `self`'s address passes through the ray
    /// `(base, c)`, if it does.
    pub fn crossing(&self, base: &Point, c: &Angle) -> Option<&BigRational> {
        let k = base.0.len();
        if self.0.len() > k && self.0.starts_with(&base.0) && self.0[k].color == *c {
            Some(&self.0[k].t)
        } else {
            None
        }
    }
}

/// The color of the branch at `x` containing `y ≠ x`.
pub fn dir(palette: &Palette, x: &Point, y: &Point) -> Angle {
    debug_assert!(x != y);
    let k = x.0.len();
    if k == 0 {
        return y.0[0].color.clone();
    }
    let (i, j) = x.label(palette).expect("non-root");
    if y.0.len() > k && y.0.starts_with(&x.0) {
        return y.0[k].color.clone();
    }
    let last = &x.0[k - 1];
    if y.0.len() >= k && y.0[..k - 1] == x.0[..k - 1] && y.0[k - 1].color == last.color && y.0[k - 1].t > last.t {
        return j;
    }
    i
}

/// Whether `u` lies on the arc `[a, b]`.
pub fn between(palette: &Palette, u: &Point, a: &Point, b: &Point) -> bool {
    u == a || u == b || dir(palette, u, a) != dir(palette, u, b)
}

/// Where the arcs from `a` and `b` to the root meet.
pub fn meet(a: &Point, b: &Point) -> Point {
    let k = a.common_prefix(b);
    if k == a.0.len() || k == b.0.len() {
        return Point(a.0[..k].to_vec());
    }
    if a.0[k].color == b.0[k].color {
        let t = std::cmp::min(&a.0[k].t, &b.0[k].t).clone();
        let mut v = a.0[..k].to_vec();
        v.push(Entry {
            color: a.0[k].color.clone(),
            t,
        });
        Point(v)
    } else {
        Point(a.0[..k].to_vec())
    }
}

/// Whether `x` lies on the arc from the root to `y`.
pub fn is_ancestor(palette: &Palette, x: &Point, y: &Point) -> bool {
    between(palette, x, &Point::root(), y)
}

/// The median of three points.
pub fn center(palette: &Palette, x: &Point, y: &Point, z: &Point) -> Point {
    let ms = [meet(x, y), meet(y, z), meet(x, z)];
    let mut best = ms[0].clone();
    for m in &ms[1..] {
        if is_ancestor(palette, &best, m) {
            best = m.clone();
        }
    }
    best
}

/// Whether `set` contains the center of each of its triples.
pub fn is_center_closed(palette: &Palette, set: &[Point]) -> bool {
    let s: std::collections::BTreeSet<&Point> = set.iter().collect();
    for a in set {
        for b in set {
            for c in set {
                if !s.contains(&center(palette, a, b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The smallest center-closed superset.
pub fn close_up(palette: &Palette, set: &[Point]) -> Vec<Point> {
    let mut s: std::collections::BTreeSet<Point> = set.iter().cloned().collect();
    loop {
        let v: Vec<Point> = s.iter().cloned().collect();
        let mut added = false;
        for a in &v {
            for b in &v {
                for c in &v {
                    if s.insert(center(palette, a, b, c)) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            return s.into_iter().collect();
        }
    }
}

/// Points at dyadic level `l` in the open interval `(lo, hi)` whose code
/// is `m`: the least and the greatest, if any.
pub fn coded_extremes(lo: &BigRational, hi: &BigRational, l: u64, m: u64) -> Option<(BigRational, BigRational)> {
    let scale = BigRational::from_integer(BigInt::one() << l as usize);
    let den = BigInt::one() << l as usize;
    if m + 1 == l {
        let t = BigRational::new(BigInt::one(), den);
        return (&t > lo && &t < hi).then(|| (t.clone(), t));
    }
    if m + 2 > l {
        return None;
    }
    let modulus: BigInt = BigInt::one() << (m + 2) as usize;
    let residue: BigInt = (BigInt::one() << (m + 1) as usize) + 1;
    let a = lo * &scale;
    let b = hi * &scale;
    // Least N > a with N ≡ residue.
    let mut first: BigInt = a.floor().to_integer() + 1;
    let off = (&residue - &first).mod_floor(&modulus);
    first += off;
    if BigRational::from_integer(first.clone()) >= b {
        return None;
    }
    let mut last: BigInt = b.ceil().to_integer() - 1;
    let off = (&last - &residue).mod_floor(&modulus);
    last -= off;
    Some((BigRational::new(first, den.clone()), BigRational::new(last, den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn codes() {
        assert_eq!(code(&q(1, 2)), 0);
        assert_eq!(code(&q(1, 4)), 1);
        assert_eq!(code(&q(3, 4)), 0);
        assert_eq!(code(&q(1, 8)), 2);
        assert_eq!(code(&q(5, 8)), 1);
        assert_eq!(code(&q(7, 8)), 0);
        assert_eq!(level(&q(5, 8)), 3);
    }

    #[test]
    fn coded_points_in_interval() {
        let (a, b) = coded_extremes(&q(1, 4), &q(3, 4), 4, 1).unwrap();
        // level 4, code 1: N ≡ 5 mod 8 → 5/16, 13/16 (only 5/16 is below 3/4).
        assert_eq!((a.clone(), b.clone()), (q(5, 16), q(5, 16)));
        assert_eq!(code(&a), 1);
        assert!(coded_extremes(&q(1, 4), &q(3, 4), 2, 0).is_none());
        assert_eq!(coded_extremes(&q(0, 1), &q(1, 1), 3, 2).unwrap().0, q(1, 8));
    }

    #[test]
    fn finite_pairs_cycle() {
        let p = Palette::finite(3).unwrap();
        let pairs: Vec<_> = (0..6).map(|m| p.pair(m)).collect();
        for (m, (i, j)) in pairs.iter().enumerate() {
            assert_ne!(i, j);
            assert_eq!(p.pair_index(i, j), m as u64);
        }
        assert_eq!(p.pair(6), pairs[0]);
        let d = Palette::Dense;
        for m in 0..40 {
            let (i, j) = d.pair(m);
            assert_eq!(d.pair_index(&i, &j), m);
        }
    }

    #[test]
    fn directions_and_meets() {
        let p = Palette::Dense;
        let h = |a, b| Angle::frac(a, b);
        let o = Point::root();
        let x = o.ray(h(1, 3), q(1, 2));
        let y = o.ray(h(1, 3), q(3, 4));
        let (i, j) = x.label(&p).unwrap();
        assert_eq!(dir(&p, &x, &y), j);
        assert_eq!(dir(&p, &x, &o), i);
        assert_eq!(dir(&p, &o, &y), h(1, 3));
        assert_eq!(meet(&x, &y), x);
        let (_, _) = (i.clone(), j.clone());
        let mut side = h(0, 1);
        while side == i || side == j {
            side = side.add(&h(1, 7));
        }
        let z = x.ray(side.clone(), q(1, 4));
        assert_eq!(dir(&p, &x, &z), side);
        assert!(between(&p, &x, &z, &y));
        assert!(between(&p, &x, &z, &o));
        assert!(!between(&p, &y, &z, &o));
        assert_eq!(center(&p, &z, &y, &o), x);
    }
}
