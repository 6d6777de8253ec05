//! Seeded random inputs for the verification suites: angles, tree
//! vertices, patchwork elements and dendrite branch points.

use colored_trees::{patchwork, BranchRule, BranchSpec, Color, Degree, TreeElement, TreeShape, VertexAddress};
use cyclic_order::Angle;
use dendrites::{Palette, Point};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SuiteRng = ChaCha8Rng;

/// The generator used by every suite; `stream` separates the checks.
pub fn rng(seed: u64, stream: u64) -> SuiteRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_angle<R: Rng>(rng: &mut R, max_den: i64) -> Angle {
    let q = rng.gen_range(1..=max_den);
    Angle::frac(rng.gen_range(0..q), q)
}

/// `k` distinct angles with denominators at most `max_den`, sorted.
pub fn distinct_angles<R: Rng>(rng: &mut R, k: usize, max_den: i64) -> Vec<Angle> {
    let mut v: Vec<Angle> = Vec::new();
    while v.len() < k {
        let a = random_angle(rng, max_den);
        if !v.contains(&a) {
            v.push(a);
        }
    }
    v.sort();
    v
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
            let src = distinct_angles(rng, k, 9);
            let mut dst = distinct_angles(rng, k, 9);
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

/// A product of one to three random generators.
pub fn random_element<R: Rng>(rng: &mut R, shape: &TreeShape, flavor: Flavor) -> TreeElement {
    let k = rng.gen_range(1..=3);
    let mut g = random_generator(rng, shape, flavor);
    for _ in 1..k {
        g = g.compose(&random_generator(rng, shape, flavor)).expect("same shape");
    }
    g
}

/// A single-vertex patchwork of `T_n` supported within `depth`;
/// `rotations` restricts the branch rule to rotations.
pub fn random_regular_generator<R: Rng>(rng: &mut R, n: u32, depth: usize, rotations: bool) -> TreeElement {
    let shape = TreeShape::regular(n).expect("n ≥ 2");
    let vertex = |rng: &mut R, d: usize| {
        let mut v = VertexAddress::root();
        for _ in 0..d {
            let cs = shape.child_colors(&v, 0);
            v = v.child(cs.choose(rng).expect("finite degree").clone());
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
    patchwork(shape, &[(v, w)], &rule).expect("single-vertex patchwork is always valid")
}

fn random_dyadic<R: Rng>(rng: &mut R, max_level: u32) -> num_rational::BigRational {
    let l = rng.gen_range(1..=max_level);
    let n = 2 * rng.gen_range(0..(1i64 << (l - 1))) + 1;
    num_rational::BigRational::new(n.into(), (1i64 << l).into())
}

/// A random branch point of `D_n` with at most `depth` address entries.
pub fn random_point<R: Rng>(rng: &mut R, n: u32, depth: usize, max_level: u32) -> Point {
    let palette = Palette::Finite(n);
    let mut p = Point::root();
    for _ in 0..rng.gen_range(0..=depth) {
        let label = p.label(&palette);
        let c = loop {
            let c = Angle::ratio(rng.gen_range(0..n as u64), n as u64);
            if label.as_ref().is_none_or(|(i, j)| c != *i && c != *j) {
                break c;
            }
        };
        p = p.ray(c, random_dyadic(rng, max_level));
    }
    p
}
