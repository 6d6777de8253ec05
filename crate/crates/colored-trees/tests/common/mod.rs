//! Random elements for property tests: products of single-vertex
//! patchworks with random branch rules.

#![allow(dead_code)]

use colored_trees::{patchwork, BranchRule, BranchSpec, Color, Degree, TreeElement, TreeShape, VertexAddress};
use cyclic_order::Angle;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn dense(p: i64, q: i64) -> Color {
    Color::Dense(Angle::frac(p, q))
}

pub fn random_angle<R: Rng>(rng: &mut R, max_den: i64) -> Angle {
    let q = rng.gen_range(1..=max_den);
    Angle::frac(rng.gen_range(0..q), q)
}

/// A random child color of `v`.
pub fn random_child_color<R: Rng>(rng: &mut R, shape: &TreeShape, v: &VertexAddress) -> Color {
    loop {
        let c = match shape.degree_at(v.depth()) {
            Degree::Finite(n) => Color::Ear(rng.gen_range(1..=n)),
            Degree::Infinite => Color::Dense(random_angle(rng, 7)),
        };
        if shape.is_child_color(v, &c) {
            return c;
        }
    }
}

pub fn random_vertex<R: Rng>(rng: &mut R, shape: &TreeShape, depth: usize) -> VertexAddress {
    let mut v = VertexAddress::root();
    for _ in 0..depth {
        let c = random_child_color(rng, shape, &v);
        v = v.child(c);
    }
    v
}

/// Which local data the generators may use.
#[derive(Clone, Copy, Debug)]
pub struct Flavor {
    /// Restrict finite-side actions to rotations.
    pub cyclic: bool,
    /// Restrict infinite-side actions to preserving maps.
    pub preserving: bool,
}

pub const ANY: Flavor = Flavor {
    cyclic: false,
    preserving: false,
};
pub const ORIENTED: Flavor = Flavor {
    cyclic: true,
    preserving: true,
};

fn distinct_angles<R: Rng>(rng: &mut R, k: usize) -> Vec<Angle> {
    let mut v: Vec<Angle> = Vec::new();
    while v.len() < k {
        let a = random_angle(rng, 9);
        if !v.contains(&a) {
            v.push(a);
        }
    }
    v.sort();
    v
}

/// A random branch spec at a vertex of degree `d`.
pub fn random_spec<R: Rng>(rng: &mut R, d: Degree, flavor: Flavor) -> BranchSpec {
    match d {
        Degree::Finite(n) => {
            let mut img: Vec<u32> = (1..=n).collect();
            if flavor.cyclic {
                img.rotate_left(rng.gen_range(0..n as usize));
            } else {
                img.shuffle(rng);
            }
            BranchSpec {
                pairs: (1..=n).zip(img).map(|(a, b)| (Color::Ear(a), Color::Ear(b))).collect(),
                reversing: None,
            }
        }
        Degree::Infinite => {
            let k = rng.gen_range(0..=3);
            let src = distinct_angles(rng, k);
            let mut dst = distinct_angles(rng, k);
            let rev = !flavor.preserving && rng.gen_bool(0.5);
            if rev {
                dst.reverse();
            }
            if k > 0 {
                dst.rotate_left(rng.gen_range(0..k));
            }
            BranchSpec {
                pairs: src
                    .into_iter()
                    .zip(dst)
                    .map(|(a, b)| (Color::Dense(a), Color::Dense(b)))
                    .collect(),
                reversing: Some(rev),
            }
        }
    }
}

/// A patchwork moving one random vertex to another of the same parity.
pub fn random_generator<R: Rng>(rng: &mut R, shape: &TreeShape, flavor: Flavor) -> TreeElement {
    let dv = rng.gen_range(0..=3);
    let dw = if rng.gen_bool(0.5) {
        dv
    } else {
        dv % 2 + 2 * rng.gen_range(0..=1)
    };
    let v = random_vertex(rng, shape, dv);
    let w = random_vertex(rng, shape, dw);
    let mut rule = BranchRule::new();
    rule.insert(v.clone(), random_spec(rng, shape.degree_at(dv), flavor));
    patchwork(*shape, &[(v, w)], &rule).expect("single-vertex patchwork is always valid")
}

pub fn random_element<R: Rng>(rng: &mut R, shape: &TreeShape, flavor: Flavor) -> TreeElement {
    let k = rng.gen_range(1..=3);
    let mut g = random_generator(rng, shape, flavor);
    for _ in 1..k {
        g = g.compose(&random_generator(rng, shape, flavor)).unwrap();
    }
    g
}
