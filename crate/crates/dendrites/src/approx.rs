//! Finite center-closed approximations of the dendrite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use cyclic_order::Angle;
use serde::{Deserialize, Serialize};

use crate::arc::{least_point, Endpoint};
use crate::point::{between, center, dir, Palette, Point};
use crate::DendriteError;

/// A finite center-closed set of branch points, always containing `o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendriteApprox {
    palette: Palette,
    points: BTreeSet<Point>,
}

/// One branch of a chart: the neighbor it leads to and its color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub toward: Point,
    pub color: Angle,
}

#[derive(Serialize, Deserialize)]
struct ApproxRepr {
    palette: Palette,
    points: Vec<Point>,
    edges: Vec<(Point, Point)>,
    charts: Vec<(Point, Vec<ChartEntry>)>,
}

impl DendriteApprox {
    pub fn new(palette: Palette) -> Self {
        DendriteApprox {
            palette,
            points: [Point::root()].into_iter().collect(),
        }
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    /// Adds `p` together with the centers it creates.
    pub fn insert(&mut self, p: Point) -> Result<(), DendriteError> {
        p.validate(&self.palette)?;
        if self.points.contains(&p) {
            return Ok(());
        }
        // Every new center is p's projection onto the spanned tree: the
        // center nearest to p along the arc toward o.
        let o = Point::root();
        let mut z = o.clone();
        for b in &self.points {
            let c = center(&self.palette, &p, &o, b);
            if between(&self.palette, &c, &p, &z) {
                z = c;
            }
        }
        self.points.insert(z);
        self.points.insert(p);
        Ok(())
    }

    /// The neighbors of `x` in the tree spanned by the points.
    pub fn neighbors(&self, x: &Point) -> Vec<Point> {
        self.points
            .iter()
            .filter(|y| *y != x)
            .filter(|y| {
                !self
                    .points
                    .iter()
                    .any(|z| z != x && z != *y && between(&self.palette, z, x, y))
            })
            .cloned()
            .collect()
    }

    pub fn edges(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for x in &self.points {
            for y in self.neighbors(x) {
                if *x < y {
                    out.push((x.clone(), y));
                }
            }
        }
        out
    }

    /// The colors at `x` of the branches toward its neighbors.
    pub fn chart(&self, x: &Point) -> Vec<ChartEntry> {
        self.neighbors(x)
            .into_iter()
            .map(|y| ChartEntry {
                color: dir(&self.palette, x, &y),
                toward: y,
            })
            .collect()
    }

    /// The materialized point next to `b1` on the arc toward `b2`.
    fn next_toward(&self, b1: &Point, b2: &Point) -> Point {
        self.neighbors(b1)
            .into_iter()
            .find(|q| between(&self.palette, q, b1, b2))
            .unwrap_or_else(|| b2.clone())
    }

    /// Materializes a new branch point `b` on the arc from `b1` to `b2`,
    /// adjacent to `b1`, whose branches toward `b1` and `b2` are colored
    /// `i` and `j`. The point is the least complex one on the open arc from
    /// `b1` to the next materialized point.
    pub fn refine_between(&mut self, b1: &Point, b2: &Point, i: &Angle, j: &Angle) -> Result<Point, DendriteError> {
        if b1 == b2 {
            return Err(DendriteError::SamePoint);
        }
        if i == j {
            return Err(DendriteError::SameColor);
        }
        for c in [i, j] {
            if !self.palette.contains(c) {
                return Err(DendriteError::InvalidColor(c.to_string()));
            }
        }
        for b in [b1, b2] {
            if !self.points.contains(b) {
                return Err(DendriteError::NotMaterialized(b.to_string()));
            }
        }
        let q = self.next_toward(b1, b2);
        let b = least_point(&self.palette, b1, &Endpoint::At(q), i, j);
        self.insert(b.clone())?;
        Ok(b)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dendrite {\n");
        for p in &self.points {
            let _ = writeln!(s, "  \"{p}\";");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(
                s,
                "  \"{a}\" -- \"{b}\" [taillabel=\"{}\", headlabel=\"{}\"];",
                dir(&self.palette, &a, &b),
                dir(&self.palette, &b, &a)
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = ApproxRepr {
            palette: self.palette,
            points: self.points.iter().cloned().collect(),
            edges: self.edges(),
            charts: self.points.iter().map(|p| (p.clone(), self.chart(p))).collect(),
        };
        serde_json::to_value(repr).expect("serializable")
    }

    /// Rebuilds an approximation from its JSON form; edges and charts are
    /// recomputed and must match.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, DendriteError> {
        let repr: ApproxRepr =
            serde_json::from_value(v.clone()).map_err(|e| DendriteError::InvalidPoint(e.to_string()))?;
        let mut d = DendriteApprox::new(repr.palette);
        for p in repr.points {
            d.insert(p)?;
        }
        if d.edges() != repr.edges {
            return Err(DendriteError::InvalidPoint("edges do not match the points".into()));
        }
        let charts: BTreeMap<Point, Vec<ChartEntry>> = repr.charts.into_iter().collect();
        if d.points.iter().any(|p| charts.get(p) != Some(&d.chart(p))) {
            return Err(DendriteError::InvalidPoint("charts do not match the points".into()));
        }
        Ok(d)
    }
}
