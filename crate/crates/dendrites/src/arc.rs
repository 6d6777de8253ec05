//! Arcs, canonical arc maps and canonical maps between complementary
//! regions.
//!
//! An arc decomposes into finitely many open ray segments joined at
//! *turning points*, where it passes from one ray to another. The canonical
//! homeomorphism between two open arcs is built by recursive bisection.
//! At depth `r` both arcs pick the point of least complexity carrying the
//! oriented label requested at `r` (toward the start, toward the end). The
//! two picks are matched, and the recursion continues on both sides. Every
//! label is requested infinitely often along every branch, so every branch
//! point of the arc is eventually picked. A point's position is recorded as
//! its *node path*. Maps between arcs match node paths, so they compose
//! coherently and invert to each other.
//!
//! Complexity: turning points first, then lower dyadic level, ties going to
//! the point nearest the start.
//!
//! A complementary region is either `Between(a, b)` (the component of
//! `D ∖ {a, b}` containing the open arc) or `Branch(x, c)` (the component of
//! `D ∖ {x}` in direction `c`). Each region has a canonical *spine*: the
//! open arc itself, or a half-open arc from `x` out to an end. A point of a
//! region is either on the spine or hangs off it in a side branch, which
//! is again a region with the same color at the image. Matching spines and
//! side colors gives canonical region maps that have trivial local action
//! everywhere.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::point::{between, center, coded_extremes, dir, meet, Palette, Point};
use crate::DendriteError;
use cyclic_order::{angle_index_where, cantor_unpair, Angle};

/// Coordinates of a point in a region, one entry per nested side branch:
/// the node path along the spine, then the direction of the next branch
/// (`None` once the point lies on the spine).
pub type Coords = Vec<(Vec<bool>, Option<Angle>)>;

/// Steps allowed when locating a point in the bisection recursion.
pub const RECURSION_BUDGET: usize = 200_000;

/// An open piece of a ray, traversed in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub base: Point,
    pub color: Angle,
    pub lo: BigRational,
    pub hi: BigRational,
    /// Traversed with increasing parameter.
    pub outward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Seg(Segment),
    Turn(Point),
}

/// Endpoint of an arc: a branch point or the far end of a ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    At(Point),
    End { base: Point, color: Angle },
}

/// A complementary region of a finite set of branch points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Between(Point, Point),
    Branch(Point, Angle),
}

/// Parts of the arc from `x` up to its root-ward ancestor `m`.
fn up(x: &Point, m: &Point) -> Vec<Part> {
    let mut parts = Vec::new();
    let mut cur = x.clone();
    while cur != *m {
        let e = cur.last().expect("m is an ancestor").clone();
        let base = cur.base().expect("non-root");
        if m.on_ray(&base, &e.color) {
            let tm = m.last().expect("non-root").t.clone();
            parts.push(Part::Seg(Segment {
                base,
                color: e.color,
                lo: tm,
                hi: e.t,
                outward: false,
            }));
            break;
        }
        parts.push(Part::Seg(Segment {
            base: base.clone(),
            color: e.color,
            lo: BigRational::zero(),
            hi: e.t,
            outward: false,
        }));
        if base == *m {
            break;
        }
        parts.push(Part::Turn(base.clone()));
        cur = base;
    }
    parts
}

/// A branch point beyond every parameter of `pts` on the ray `(base, c)`,
/// standing in for the ray's end.
pub fn stand_in(base: &Point, c: &Angle, pts: &[&Point]) -> Point {
    let mut t = BigRational::zero();
    for p in pts {
        if let Some(s) = p.crossing(base, c) {
            if *s > t {
                t = s.clone();
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    base.ray(c.clone(), (t + BigRational::one()) / two)
}

/// Parts of the open arc from `a` to `b` in order, and a branch point
/// representing `b` (a stand-in when `b` is an end).
pub fn arc_parts(a: &Point, b: &Endpoint) -> (Vec<Part>, Point) {
    match b {
        Endpoint::At(b) => (point_arc(a, b), b.clone()),
        Endpoint::End { base, color } => {
            let y = stand_in(base, color, &[a]);
            let mut parts = point_arc(a, &y);
            match parts.last_mut() {
                Some(Part::Seg(s)) => s.hi = BigRational::one(),
                _ => unreachable!("arcs end on a segment"),
            }
            (parts, y)
        }
    }
}

fn point_arc(a: &Point, b: &Point) -> Vec<Part> {
    let m = meet(a, b);
    let mut parts = up(a, &m);
    if m != *a && m != *b {
        parts.push(Part::Turn(m.clone()));
    }
    let mut down = up(b, &m);
    down.reverse();
    for p in &mut down {
        if let Part::Seg(s) = p {
            s.outward = !s.outward;
        }
    }
    parts.extend(down);
    parts
}

/// Which suffix codes a search accepts.
#[derive(Clone, Debug)]
pub(crate) enum Codes {
    /// `m ≡ r (mod modulus)` for some listed `r`.
    Class {
        residues: Vec<u64>,
        modulus: u64,
    },
    Exact(u64),
    /// Dense palette, first color of index `alpha`.
    DenseFirst(u64),
}

impl Codes {
    pub(crate) fn pair(palette: &Palette, i: &Angle, j: &Angle) -> Codes {
        let m = palette.pair_index(i, j);
        match palette.pair_count() {
            Some(p) => Codes::Class {
                residues: vec![m],
                modulus: p,
            },
            None => Codes::Exact(m),
        }
    }

    /// Codes of labels whose first color is `i`.
    pub(crate) fn first(palette: &Palette, i: &Angle) -> Codes {
        match palette.pair_count() {
            Some(p) => Codes::Class {
                residues: (0..p).filter(|m| palette.pair(*m).0 == *i).collect(),
                modulus: p,
            },
            None => Codes::DenseFirst(angle_index_where(i, |_| true).expect("enumerated")),
        }
    }

    fn upto(&self, top: u64) -> Vec<u64> {
        match self {
            Codes::Class { residues, modulus } => {
                let mut v = Vec::new();
                let mut base = 0;
                while base <= top {
                    for r in residues {
                        if base + r <= top {
                            v.push(base + r);
                        }
                    }
                    base += modulus;
                }
                v
            }
            Codes::Exact(m) => {
                if *m <= top {
                    vec![*m]
                } else {
                    Vec::new()
                }
            }
            Codes::DenseFirst(alpha) => (0..=top).filter(|m| cantor_unpair(*m).0 == *alpha).collect(),
        }
    }
}

/// Least dyadic level in `(lo, hi)` carrying an accepted code, and the
/// lowest or highest such parameter at that level.
pub(crate) fn least_level(
    lo: &BigRational,
    hi: &BigRational,
    codes: &Codes,
    lowest: bool,
    cap: Option<u64>,
) -> Option<(u64, BigRational)> {
    let mut l = 1u64;
    loop {
        if let Some(c) = cap {
            if l > c {
                return None;
            }
        }
        let mut best: Option<BigRational> = None;
        for m in codes.upto(l - 1) {
            if let Some((a, b)) = coded_extremes(lo, hi, l, m) {
                let cand = if lowest { a } else { b };
                best = Some(match best {
                    None => cand,
                    Some(x) => {
                        if (cand < x) == lowest {
                            cand
                        } else {
                            x
                        }
                    }
                });
            }
        }
        if let Some(t) = best {
            return Some((l, t));
        }
        l += 1;
    }
}

/// The least complex point of the open arc from `lo` to `hi` whose
/// directions toward `lo` and toward `hi` are `(a, b)`.
pub fn least_point(palette: &Palette, lo: &Point, hi: &Endpoint, a: &Angle, b: &Angle) -> Point {
    let (parts, hi_pt) = arc_parts(lo, hi);
    for p in &parts {
        if let Part::Turn(q) = p {
            if dir(palette, q, lo) == *a && dir(palette, q, &hi_pt) == *b {
                return q.clone();
            }
        }
    }
    let forward = Codes::pair(palette, a, b);
    let backward = Codes::pair(palette, b, a);
    let mut best: Option<(u64, Point)> = None;
    for p in &parts {
        if let Part::Seg(s) = p {
            let codes = if s.outward { &forward } else { &backward };
            let cap = best.as_ref().map(|(l, _)| l - 1);
            if let Some((l, t)) = least_level(&s.lo, &s.hi, codes, s.outward, cap) {
                best = Some((l, s.base.ray(s.color.clone(), t)));
            }
        }
    }
    best.expect("every label is dense on every arc").1
}

/// A half-open or open arc carrying canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub start: Point,
    pub end: Endpoint,
}

impl Spine {
    /// Node path of the spine point `z`.
    pub fn node_path(&self, palette: &Palette, z: &Point) -> Result<Vec<bool>, DendriteError> {
        let mut lo = self.start.clone();
        let mut hi = self.end.clone();
        let mut path = Vec::new();
        for r in 0..RECURSION_BUDGET {
            let (a, b) = palette.request(r as u64);
            let q = least_point(palette, &lo, &hi, &a, &b);
            if q == *z {
                return Ok(path);
            }
            if between(palette, z, &lo, &q) {
                hi = Endpoint::At(q);
                path.push(false);
            } else {
                lo = q;
                path.push(true);
            }
        }
        Err(DendriteError::Budget)
    }

    /// The spine point with the given node path.
    pub fn point_at(&self, palette: &Palette, path: &[bool]) -> Point {
        let mut lo = self.start.clone();
        let mut hi = self.end.clone();
        for (r, right) in path.iter().enumerate() {
            let (a, b) = palette.request(r as u64);
            let q = least_point(palette, &lo, &hi, &a, &b);
            if *right {
                lo = q;
            } else {
                hi = Endpoint::At(q);
            }
        }
        let (a, b) = palette.request(path.len() as u64);
        least_point(palette, &lo, &hi, &a, &b)
    }
}

/// The end reached from `x` by the canonical spine of `Branch(x, c)`.
fn branch_end(palette: &Palette, x: &Point, c: &Angle) -> Endpoint {
    let Some((i, j)) = x.label(palette) else {
        return Endpoint::End {
            base: Point::root(),
            color: c.clone(),
        };
    };
    let base = x.base().expect("non-root");
    let own = x.last().expect("non-root").color.clone();
    if *c != i && *c != j {
        Endpoint::End {
            base: x.clone(),
            color: c.clone(),
        }
    } else if *c == j {
        Endpoint::End { base, color: own }
    } else if base.is_root() {
        Endpoint::End {
            base,
            color: palette.first_color_except(&own),
        }
    } else {
        Endpoint::End {
            base: base.base().expect("non-root"),
            color: base.last().expect("non-root").color.clone(),
        }
    }
}

impl Region {
    pub fn spine(&self, palette: &Palette) -> Spine {
        match self {
            Region::Between(a, b) => Spine {
                start: a.clone(),
                end: Endpoint::At(b.clone()),
            },
            Region::Branch(x, c) => Spine {
                start: x.clone(),
                end: branch_end(palette, x, c),
            },
        }
    }

    pub fn contains(&self, palette: &Palette, p: &Point) -> bool {
        match self {
            Region::Between(a, b) => {
                p != a && p != b && dir(palette, a, p) == dir(palette, a, b) && dir(palette, b, p) == dir(palette, b, a)
            }
            Region::Branch(x, c) => p != x && dir(palette, x, p) == *c,
        }
    }

    /// Where the path from the spine start to `p` leaves the spine.
    fn project(&self, palette: &Palette, p: &Point) -> Point {
        match self {
            Region::Between(a, b) => center(palette, a, b, p),
            Region::Branch(x, c) => match branch_end(palette, x, c) {
                Endpoint::End { base, color } => {
                    let y = stand_in(&base, &color, &[p, x]);
                    center(palette, x, p, &y)
                }
                Endpoint::At(_) => unreachable!("branch spines end at an end"),
            },
        }
    }

    /// Canonical coordinates of `p` in the region.
    pub fn coords(&self, palette: &Palette, p: &Point) -> Result<Coords, DendriteError> {
        if !self.contains(palette, p) {
            return Err(DendriteError::OutsideRegion(format!("{p}")));
        }
        let mut region = self.clone();
        let mut out = Vec::new();
        loop {
            let z = region.project(palette, p);
            let path = region.spine(palette).node_path(palette, &z)?;
            if z == *p {
                out.push((path, None));
                return Ok(out);
            }
            let d = dir(palette, &z, p);
            out.push((path, Some(d.clone())));
            region = Region::Branch(z, d);
        }
    }

    /// The point with the given coordinates.
    pub fn locate(&self, palette: &Palette, coords: &[(Vec<bool>, Option<Angle>)]) -> Point {
        let mut region = self.clone();
        let mut z = Point::root();
        for (path, side) in coords {
            z = region.spine(palette).point_at(palette, path);
            if let Some(d) = side {
                region = Region::Branch(z.clone(), d.clone());
            }
        }
        z
    }

    /// The canonical homeomorphism `self → to` applied to `p`.
    pub fn map_to(&self, palette: &Palette, to: &Region, p: &Point) -> Result<Point, DendriteError> {
        Ok(to.locate(palette, &self.coords(palette, p)?))
    }
}
