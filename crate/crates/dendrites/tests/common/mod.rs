//! Random branch points and tree elements for dendrite tests.

#![allow(dead_code)]

use colored_trees::{patchwork, BranchRule, BranchSpec, Color, TreeElement, TreeShape, VertexAddress};
use cyclic_order::Angle;
use dendrites::{Palette, Point};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn a(p: i64, q: i64) -> Angle {
    Angle::frac(p, q)
}

pub fn t(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn random_dyadic<R: Rng>(rng: &mut R, max_level: u32) -> BigRational {
    let l = rng.gen_range(1..=max_level);
    let n = 2 * rng.gen_range(0..(1i64 << (l - 1))) + 1;
    BigRational::new(n.into(), BigInt::from(1i64 << l))
}

fn random_color<R: Rng>(rng: &mut R, palette: &Palette) -> Angle {
    match palette {
        Palette::Finite(n) => Angle::ratio(rng.gen_range(0..*n as u64), *n as u64),
        Palette::Dense => {
            // Labels of high-index color pairs sit deep in the bisection order,
            // so keep denominators small to bound evaluation cost.
            let q = rng.gen_range(1..=4);
            Angle::frac(rng.gen_range(0..q), q)
        }
    }
}

/// A random branch point with at most `depth` address entries.
pub fn random_point<R: Rng>(rng: &mut R, palette: &Palette, depth: usize, max_level: u32) -> Point {
    let mut p = Point::root();
    for _ in 0..rng.gen_range(0..=depth) {
        let label = p.label(palette);
        let c = loop {
            let c = random_color(rng, palette);
            if label.as_ref().is_none_or(|(i, j)| c != *i && c != *j) {
                break c;
            }
        };
        p = p.ray(c, random_dyadic(rng, max_level));
    }
    p
}

/// A single-vertex patchwork of `T_n`; `rotations` restricts the branch
/// rule to rotations.
pub fn random_generator<R: Rng>(rng: &mut R, n: u32, depth: usize, rotations: bool) -> TreeElement {
    let shape = TreeShape::regular(n).unwrap();
    let vertex = |rng: &mut R, d: usize| {
        let mut v = VertexAddress::root();
        for _ in 0..d {
            let cs = shape.child_colors(&v, 0);
            v = v.child(cs.choose(rng).unwrap().clone());
        }
        v
    };
    let dv = rng.gen_range(0..=depth);
    let dw = if dv >= 2 && rng.gen_bool(0.5) { dv - 2 } else { dv };
    let v = vertex(rng, dv);
    let w = vertex(rng, dw);
    let mut img: Vec<u32> = (1..=n).collect();
    if rotations {
        img.rotate_left(rng.gen_range(0..n as usize));
    } else {
        img.shuffle(rng);
    }
    let mut rule = BranchRule::new();
    rule.insert(
        v.clone(),
        BranchSpec {
            pairs: (1..=n).zip(img).map(|(x, y)| (Color::Ear(x), Color::Ear(y))).collect(),
            reversing: None,
        },
    );
    patchwork(shape, &[(v, w)], &rule).unwrap()
}
