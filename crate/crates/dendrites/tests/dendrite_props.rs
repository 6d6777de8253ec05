//! Approximations, refinement, patchwork homeomorphisms, the embedding of
//! `T_n` and lifts.

mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use colored_trees::{Perm, PermGroup, TreeElement, TreeShape, VertexAddress};
use common::*;
use cyclic_order::Classification;
use dendrites::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense_star() -> (Point, Vec<Point>) {
    let hub = Point::root().ray(a(1, 2), t(1, 2));
    let (i, j) = hub.label(&Palette::Dense).unwrap();
    let side = [a(0, 1), a(1, 3), a(2, 3), a(1, 5)]
        .into_iter()
        .find(|c| *c != i && *c != j)
        .unwrap();
    let leaves = vec![
        Point::root().ray(a(1, 2), t(1, 4)),
        Point::root().ray(a(1, 2), t(3, 4)),
        hub.ray(side, t(1, 2)),
    ];
    (hub, leaves)
}

/// Adjacency lists of the tree spanned by `d`.
fn adjacency(d: &DendriteApprox) -> BTreeMap<Point, Vec<Point>> {
    let mut adj: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for (u, v) in d.edges() {
        adj.entry(u.clone()).or_default().push(v.clone());
        adj.entry(v).or_default().push(u);
    }
    adj
}

/// Median by intersecting vertex paths of a tree given by adjacency lists.
fn path_oracle(adj: &BTreeMap<Point, Vec<Point>>, x: &Point, y: &Point, z: &Point) -> Point {
    let path = |s: &Point, e: &Point| -> BTreeSet<Point> {
        let mut prev: BTreeMap<Point, Point> = BTreeMap::new();
        let mut queue = VecDeque::from([s.clone()]);
        let mut seen = BTreeSet::from([s.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in adj.get(&u).into_iter().flatten() {
                if seen.insert(v.clone()) {
                    prev.insert(v.clone(), u.clone());
                    queue.push_back(v.clone());
                }
            }
        }
        let mut out = BTreeSet::from([e.clone()]);
        let mut cur = e.clone();
        while cur != *s {
            cur = prev[&cur].clone();
            out.insert(cur.clone());
        }
        out
    };
    let (a, b, c) = (path(x, y), path(y, z), path(x, z));
    let common: Vec<Point> = a.iter().filter(|p| b.contains(*p) && c.contains(*p)).cloned().collect();
    assert_eq!(common.len(), 1, "tree paths meet in one point");
    common[0].clone()
}

#[test]
fn center_examples() {
    let pal = Palette::Dense;
    let (hub, leaves) = dense_star();
    assert_eq!(center(&pal, &leaves[0], &leaves[1], &leaves[2]), hub);
    assert_eq!(center(&pal, &hub, &leaves[0], &leaves[1]), hub);
    let o = Point::root();
    assert_eq!(center(&pal, &leaves[0], &o, &leaves[1]), leaves[0]);
}

#[test]
fn center_matches_path_intersection() {
    let mut d = DendriteApprox::new(Palette::finite(3).unwrap());
    embed_tree(3, 4, &mut d).unwrap();
    let pts: Vec<Point> = d.points().cloned().collect();
    assert!(is_center_closed(d.palette(), &pts));
    let adj = adjacency(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let x = &pts[rng.gen_range(0..pts.len())];
        let y = &pts[rng.gen_range(0..pts.len())];
        let z = &pts[rng.gen_range(0..pts.len())];
        assert_eq!(center(d.palette(), x, y, z), path_oracle(&adj, x, y, z));
    }
}

#[test]
fn closure_examples() {
    let pal = Palette::Dense;
    let (hub, leaves) = dense_star();
    assert!(is_center_closed(&pal, &leaves[..2]));
    assert!(is_center_closed(&pal, &[]));
    assert!(!is_center_closed(&pal, &leaves));
    let closed = close_up(&pal, &leaves);
    assert_eq!(closed.len(), 4);
    assert!(closed.contains(&hub));
}

#[test]
fn refine_adjacent_points() {
    let mut d = DendriteApprox::new(Palette::Dense);
    let b = Point::root().ray(a(1, 3), t(1, 2));
    d.insert(b.clone()).unwrap();
    let o = Point::root();
    let new = d.refine_between(&o, &b, &a(0, 1), &a(1, 2)).unwrap();
    assert_eq!(d.len(), 3);
    assert!(between(d.palette(), &new, &o, &b));
    assert_eq!(dir(d.palette(), &new, &o), a(0, 1));
    assert_eq!(dir(d.palette(), &new, &b), a(1, 2));
    assert_eq!(d.neighbors(&o), vec![new.clone()]);
    assert_eq!(
        d.refine_between(&o, &o, &a(0, 1), &a(1, 2)),
        Err(DendriteError::SamePoint)
    );
    assert_eq!(
        d.refine_between(&o, &b, &a(0, 1), &a(0, 1)),
        Err(DendriteError::SameColor)
    );
}

#[test]
fn refine_all_pairs_of_four_colors() {
    let pal = Palette::Dense;
    let mut d = DendriteApprox::new(pal);
    let b1 = Point::root().ray(a(0, 1), t(1, 2));
    let b2 = Point::root().ray(a(1, 3), t(3, 4));
    d.insert(b1.clone()).unwrap();
    d.insert(b2.clone()).unwrap();
    let before = d.len();
    let colors = [a(0, 1), a(1, 4), a(1, 2), a(3, 4)];
    let mut made = Vec::new();
    for i in &colors {
        for j in &colors {
            if i != j {
                let b = d.refine_between(&b1, &b2, i, j).unwrap();
                assert_eq!(dir(&pal, &b, &b1), *i);
                assert_eq!(dir(&pal, &b, &b2), *j);
                made.push(b);
            }
        }
    }
    assert_eq!(made.len(), 12);
    assert_eq!(d.len(), before + 12);
    assert!(made.iter().all(|b| between(&pal, b, &b1, &b2) && *b != b1 && *b != b2));
}

#[test]
fn approximation_exports() {
    let mut d = DendriteApprox::new(Palette::finite(3).unwrap());
    embed_tree(3, 2, &mut d).unwrap();
    let dot = d.to_dot();
    assert!(dot.starts_with("graph dendrite {"));
    assert_eq!(dot.matches(" -- ").count(), d.len() - 1);
    assert_eq!(d.edges().len(), d.len() - 1);
    let json = d.to_json();
    assert_eq!(json["points"].as_array().unwrap().len(), d.len());
    assert_eq!(DendriteApprox::from_json(&json).unwrap(), d);
    let mut bad = json.clone();
    bad["edges"].as_array_mut().unwrap().pop();
    assert!(DendriteApprox::from_json(&bad).is_err());
}

#[test]
fn invalid_points_are_rejected() {
    let pal = Palette::finite(3).unwrap();
    assert!(Point::root().ray(a(1, 4), t(1, 2)).validate(&pal).is_err());
    assert!(Point::root().ray(a(1, 3), t(1, 3)).validate(&pal).is_err());
    let x = Point::root().ray(a(1, 3), t(1, 2));
    let (i, _) = x.label(&pal).unwrap();
    assert!(x.ray(i, t(1, 2)).validate(&pal).is_err());
    assert_eq!(Palette::finite(2), Err(DendriteError::BadArity(2)));
}

fn involution() -> (DendriteApprox, DendriteElement, Point) {
    let mut d = DendriteApprox::new(Palette::Dense);
    let b = Point::root().ray(a(1, 2), t(1, 2));
    d.insert(b.clone()).unwrap();
    let f = PartialDendriteMap::new(vec![(b.clone(), b.clone())]).unwrap();
    let mut rule = BranchRule::new();
    rule.insert(
        b.clone(),
        BranchSpec {
            pairs: vec![(a(1, 3), a(2, 3)), (a(2, 3), a(1, 3))],
            reversing: Some(true),
        },
    );
    let h = patchwork_dendrite(&d, &d, &f, &rule).unwrap();
    (d, h, b)
}

#[test]
fn patchwork_identity() {
    let mut d = DendriteApprox::new(Palette::Dense);
    let b = Point::root().ray(a(1, 2), t(1, 2));
    d.insert(b.clone()).unwrap();
    let f = PartialDendriteMap::new(vec![(b.clone(), b.clone())]).unwrap();
    let h = patchwork_dendrite(&d, &d, &f, &BranchRule::new()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let p = random_point(&mut rng, &Palette::Dense, 3, 5);
        assert_eq!(h.evaluate(&p).unwrap(), p);
    }
    assert!(h.local_action(&b).unwrap().is_identity());
}

#[test]
fn reflection_involution() {
    let (_, h, b) = involution();
    let sigma = h.local_action(&b).unwrap();
    assert_eq!(sigma.classification(), Classification::Reversing);
    assert_eq!(sigma.apply(&a(1, 3)), a(2, 3));
    assert_eq!(h.evaluate(&b).unwrap(), b);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_point(&mut rng, &Palette::Dense, 3, 5);
        assert_eq!(h.evaluate(&h.evaluate(&p).unwrap()).unwrap(), p);
    }
    assert!(!kaleidoscopic_membership(&h, &Gamma::AutO));
    assert!(kaleidoscopic_membership(&h, &Gamma::AutS));
    assert!(kaleidoscopic_membership(
        &DendriteElement::identity(Palette::Dense),
        &Gamma::Trivial
    ));
}

#[test]
fn patchwork_rejections() {
    let x = Point::root().ray(a(1, 3), t(1, 2));
    let mut d3 = DendriteApprox::new(Palette::finite(3).unwrap());
    let mut d4 = DendriteApprox::new(Palette::finite(4).unwrap());
    d3.insert(x.clone()).unwrap();
    let y = Point::root().ray(a(1, 4), t(1, 2));
    d4.insert(y.clone()).unwrap();
    let f = PartialDendriteMap::new(vec![(x.clone(), y)]).unwrap();
    assert!(matches!(
        patchwork_dendrite(&d3, &d4, &f, &BranchRule::new()),
        Err(DendriteError::NotPartialHomomorphism(_))
    ));

    let (d, _, b) = involution();
    let mut dd = d.clone();
    let (_, leaves) = dense_star();
    for p in &leaves {
        dd.insert(p.clone()).unwrap();
    }
    let open = PartialDendriteMap::new(leaves.iter().map(|p| (p.clone(), p.clone())).collect()).unwrap();
    assert_eq!(
        patchwork_dendrite(&dd, &dd, &open, &BranchRule::new()),
        Err(DendriteError::NotCenterClosed)
    );
    // Swapping an endpoint with the middle of an arc breaks betweenness.
    let swap = PartialDendriteMap::new(vec![
        (leaves[0].clone(), b.clone()),
        (b.clone(), leaves[0].clone()),
        (leaves[1].clone(), leaves[1].clone()),
    ])
    .unwrap();
    assert!(matches!(
        patchwork_dendrite(&dd, &dd, &swap, &BranchRule::new()),
        Err(DendriteError::NotPartialHomomorphism(_))
    ));
    let mut rule = BranchRule::new();
    let toward = dir(&Palette::Dense, &b, &leaves[0]);
    rule.insert(
        b.clone(),
        BranchSpec {
            pairs: vec![(toward, a(1, 7))],
            reversing: None,
        },
    );
    let two = PartialDendriteMap::new(vec![(b.clone(), b.clone()), (leaves[0].clone(), leaves[0].clone())]).unwrap();
    assert!(matches!(
        patchwork_dendrite(&dd, &dd, &two, &rule),
        Err(DendriteError::BoundaryMismatch(_))
    ));
}

#[test]
fn patchwork_moves_points_and_regions() {
    let pal = Palette::Dense;
    let mut d = DendriteApprox::new(pal);
    let x = Point::root().ray(a(0, 1), t(1, 2));
    let y = Point::root().ray(a(1, 2), t(1, 4));
    d.insert(x.clone()).unwrap();
    d.insert(y.clone()).unwrap();
    // Swap x and y, fixing o.
    let f = PartialDendriteMap::new(vec![
        (Point::root(), Point::root()),
        (x.clone(), y.clone()),
        (y.clone(), x.clone()),
    ])
    .unwrap();
    let h = patchwork_dendrite(&d, &d, &f, &BranchRule::new()).unwrap();
    let hi = h.inverse();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pts: Vec<Point> = (0..40).map(|_| random_point(&mut rng, &pal, 3, 5)).collect();
    let imgs: Vec<Point> = pts.iter().map(|p| h.evaluate(p).unwrap()).collect();
    for (p, q) in pts.iter().zip(&imgs) {
        assert_eq!(hi.evaluate(q).unwrap(), *p);
    }
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            for k in (0..pts.len()).step_by(7) {
                assert_eq!(
                    between(&pal, &pts[i], &pts[j], &pts[k]),
                    between(&pal, &imgs[i], &imgs[j], &imgs[k])
                );
            }
        }
    }
}

#[test]
fn embedding_small_depths() {
    let mut d = DendriteApprox::new(Palette::finite(3).unwrap());
    let r0 = embed_tree(3, 0, &mut d).unwrap();
    assert_eq!(r0.map().len(), 1);
    assert_eq!(d.len(), 1);
    let r2 = embed_tree(3, 2, &mut d).unwrap();
    assert_eq!(r2.map().len(), 1 + 3 + 6);
    assert_eq!(r2.betweenness_violations(), 0);
    assert_eq!(r2.color_violations(), 0);
    assert_eq!(embed_tree(2, 1, &mut d).unwrap_err(), DendriteError::BadArity(2));
    let mut wrong = DendriteApprox::new(Palette::Dense);
    assert_eq!(
        embed_tree(3, 1, &mut wrong).unwrap_err(),
        DendriteError::PaletteMismatch
    );
}

#[test]
fn embedding_is_color_preserving() {
    for (n, depth) in [(3, 3), (4, 3), (5, 2)] {
        let mut d = DendriteApprox::new(Palette::finite(n).unwrap());
        let r = embed_tree(n, depth, &mut d).unwrap();
        assert_eq!(r.betweenness_violations(), 0, "n = {n}");
        assert_eq!(r.color_violations(), 0, "n = {n}");
        // Distinct half-trees at v land in distinct branches of the matching color.
        let e = r.embedding();
        for (v, pv) in r.map() {
            for (w, pw) in r.map() {
                if v == w || !v.is_prefix_of(w) {
                    continue;
                }
                let first = w.prefix(v.depth() + 1);
                let want = e.recode(&first.letters()[v.depth()]);
                assert_eq!(dir(d.palette(), pv, pw), want);
            }
        }
        for (v, p) in r.map() {
            assert_eq!(e.locate(p).unwrap(), Location::Vertex(v.clone()));
        }
    }
}

fn lift_setup() -> (EmbeddingRecord, Palette) {
    let mut d = DendriteApprox::new(Palette::finite(3).unwrap());
    (embed_tree(3, 6, &mut d).unwrap(), *d.palette())
}

#[test]
fn lift_of_identity() {
    let (rec, pal) = lift_setup();
    let h = lift(&TreeElement::identity(TreeShape::regular(3).unwrap()), &rec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let p = random_point(&mut rng, &pal, 3, 5);
        assert_eq!(h.evaluate(&p).unwrap(), p);
    }
}

#[test]
fn lift_support_depth() {
    let mut d = DendriteApprox::new(Palette::finite(3).unwrap());
    let rec = embed_tree(3, 1, &mut d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let deep = loop {
        let g = random_generator(&mut rng, 3, 3, false);
        if g.support_depth().max(g.root_image().depth()) > 1 {
            break g;
        }
    };
    assert!(matches!(
        lift(&deep, &rec),
        Err(DendriteError::SupportExceedsDepth { .. })
    ));
}

#[test]
fn lift_is_functorial() {
    let (rec, pal) = lift_setup();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pts: Vec<Point> = rec.map().values().take(40).cloned().collect();
    while pts.len() < 100 {
        pts.push(random_point(&mut rng, &pal, 3, 5));
    }
    for k in 0..50 {
        let g1 = random_generator(&mut rng, 3, 2, false);
        let g2 = random_generator(&mut rng, 3, 2, false);
        let g12 = g1.compose(&g2).unwrap();
        let (h1, h2, h12) = (
            lift(&g1, &rec).unwrap(),
            lift(&g2, &rec).unwrap(),
            lift(&g12, &rec).unwrap(),
        );
        for p in pts.iter().skip(k % 2).step_by(2) {
            let lhs = h12.evaluate(p).unwrap();
            let rhs = h1.evaluate(&h2.evaluate(p).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "pair {k}, point {p}");
        }
        let hinv = lift(&g1.inverse(), &rec).unwrap();
        for p in pts.iter().step_by(10) {
            assert_eq!(hinv.evaluate(&h1.evaluate(p).unwrap()).unwrap(), *p);
        }
    }
}

#[test]
fn lift_commutes_with_phi_and_local_actions() {
    let (rec, _) = lift_setup();
    let e = rec.embedding();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let g = random_generator(&mut rng, 3, 2, false);
        let h = lift(&g, &rec).unwrap();
        for v in g.support_vertices() {
            let want = ColorMap::from_perm(g.local_action(v).as_perm().unwrap());
            assert_eq!(h.local_action(&e.phi(v).unwrap()).unwrap(), want, "at {v}");
        }
        for (v, p) in rec.map().iter().filter(|(v, _)| v.depth() <= 2) {
            assert_eq!(h.evaluate(p).unwrap(), e.phi(&g.evaluate(v)).unwrap());
        }
    }
}

#[test]
fn lifts_respect_membership() {
    let (rec, _) = lift_setup();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let g = random_generator(&mut rng, 3, 2, true);
        assert!(g.membership(&PermGroup::Cyclic, colored_trees::DenseGroup::Trivial));
        let h = lift(&g, &rec).unwrap();
        assert!(kaleidoscopic_membership(&h, &Gamma::AutO));
        assert!(kaleidoscopic_membership(&h, &Gamma::Perm(PermGroup::Cyclic)));
    }
    let shape = TreeShape::regular(3).unwrap();
    let mut rule = colored_trees::BranchRule::new();
    rule.insert(
        VertexAddress::root(),
        colored_trees::BranchSpec {
            pairs: Perm::from_cycles(3, &[&[2, 3]])
                .unwrap()
                .images()
                .iter()
                .enumerate()
                .map(|(k, x)| (colored_trees::Color::Ear(k as u32 + 1), colored_trees::Color::Ear(*x)))
                .collect(),
            reversing: None,
        },
    );
    let g = colored_trees::patchwork(shape, &[(VertexAddress::root(), VertexAddress::root())], &rule).unwrap();
    let h = lift(&g, &rec).unwrap();
    assert!(!kaleidoscopic_membership(&h, &Gamma::AutO));
    assert!(kaleidoscopic_membership(&h, &Gamma::AutS));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_idempotent_and_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pal = Palette::Dense;
        let s: Vec<Point> = (0..rng.gen_range(1..6)).map(|_| random_point(&mut rng, &pal, 3, 4)).collect();
        let c = close_up(&pal, &s);
        prop_assert!(is_center_closed(&pal, &c));
        prop_assert_eq!(close_up(&pal, &c), c.clone());
        prop_assert!(s.iter().all(|p| c.contains(p)));
        let mut bigger = s.clone();
        bigger.push(random_point(&mut rng, &pal, 3, 4));
        let cb = close_up(&pal, &bigger);
        prop_assert!(c.iter().all(|p| cb.contains(p)));
    }

    #[test]
    fn center_lies_on_all_three_arcs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pal = Palette::finite(4).unwrap();
        let p: Vec<Point> = (0..3).map(|_| random_point(&mut rng, &pal, 3, 4)).collect();
        let m = center(&pal, &p[0], &p[1], &p[2]);
        prop_assert!(between(&pal, &m, &p[0], &p[1]));
        prop_assert!(between(&pal, &m, &p[1], &p[2]));
        prop_assert!(between(&pal, &m, &p[0], &p[2]));
        prop_assert_eq!(center(&pal, &p[2], &p[0], &p[1]), m);
    }

    #[test]
    fn refinement_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pal = Palette::Dense;
        let mut d = DendriteApprox::new(pal);
        for _ in 0..4 {
            d.insert(random_point(&mut rng, &pal, 2, 4)).unwrap();
        }
        let pts: Vec<Point> = d.points().cloned().collect();
        let charts: Vec<_> = pts.iter().map(|p| (p.clone(), d.chart(p))).collect();
        let centers: Vec<Point> = pts.iter().map(|p| center(&pal, p, &pts[0], &pts[pts.len() - 1])).collect();
        let colors = [a(0, 1), a(1, 3), a(2, 3), a(1, 2)];
        for _ in 0..3 {
            let b1 = &pts[rng.gen_range(0..pts.len())];
            let b2 = &pts[rng.gen_range(0..pts.len())];
            if b1 == b2 { continue; }
            let i = &colors[rng.gen_range(0..4)];
            let j = loop { let j = &colors[rng.gen_range(0..4)]; if j != i { break j; } };
            let b = d.refine_between(b1, b2, i, j).unwrap();
            prop_assert_eq!(dir(&pal, &b, b1), i.clone());
            prop_assert_eq!(dir(&pal, &b, b2), j.clone());
        }
        for (p, chart) in &charts {
            // Old branches keep their colors; subdivided ones now lead to the new point.
            for e in chart {
                prop_assert!(d.chart(p).iter().any(|f| f.color == e.color));
            }
        }
        for (p, c) in pts.iter().zip(&centers) {
            prop_assert_eq!(&center(&pal, p, &pts[0], &pts[pts.len() - 1]), c);
        }
        for p in d.points() {
            let cs: BTreeSet<_> = d.chart(p).into_iter().map(|e| e.color).collect();
            prop_assert_eq!(cs.len(), d.chart(p).len());
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn patchworks_are_homeomorphisms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pal = if rng.gen_bool(0.5) { Palette::Dense } else { Palette::finite(4).unwrap() };
        let mut d = DendriteApprox::new(pal);
        let x = random_point(&mut rng, &pal, 2, 4);
        let y = random_point(&mut rng, &pal, 2, 4);
        d.insert(x.clone()).unwrap();
        d.insert(y.clone()).unwrap();
        let f = PartialDendriteMap::new(vec![(x.clone(), y.clone())]).unwrap();
        let mut rule = BranchRule::new();
        let cs = pal.colors(4);
        let (c1, c2) = (cs[rng.gen_range(0..cs.len())].clone(), cs[rng.gen_range(0..cs.len())].clone());
        rule.insert(x.clone(), BranchSpec { pairs: vec![(c1, c2)], reversing: Some(rng.gen_bool(0.5)) });
        let h = patchwork_dendrite(&d, &d, &f, &rule).unwrap();
        let hi = h.inverse();
        let pts: Vec<Point> = (0..12).map(|_| random_point(&mut rng, &pal, 3, 4)).collect();
        let imgs: Vec<Point> = pts.iter().map(|p| h.evaluate(p).unwrap()).collect();
        for (p, q) in pts.iter().zip(&imgs) {
            prop_assert_eq!(&hi.evaluate(q).unwrap(), p);
            // Local action: branches at p go to branches at h(p) via σ_h(p).
            let sigma = h.local_action(p).unwrap();
            for (r, s) in pts.iter().zip(&imgs) {
                if r != p {
                    prop_assert_eq!(dir(&pal, q, s), sigma.apply(&dir(&pal, p, r)));
                }
            }
        }
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                for k in 0..pts.len() {
                    prop_assert_eq!(
                        between(&pal, &pts[i], &pts[j], &pts[k]),
                        between(&pal, &imgs[i], &imgs[j], &imgs[k])
                    );
                }
            }
        }
    }
}
