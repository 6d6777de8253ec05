//! Checks of legal colorings, universal-group elements and the
//! quasi-isometry `T_∞ → T_{k,∞}`.

use colored_trees::{
    canonical_coloring, check_distortion, circle_color, verify_legal, DenseGroup, LocalAction, PermGroup, TreeElement,
    TreeShape, TruncatedTree, VertexAddress,
};
use rand::Rng;
use rayon::prelude::*;

use super::{ensure, ok, CheckDef, Suite};
use crate::budget::Budget;
use crate::gen::{random_element, random_vertex, rng, ANY, ORIENTED};

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "trees.legal_colorings",
            suite: Suite::Trees,
            property: "canonical colorings and their pushforwards are legal",
            run: legal_colorings,
        },
        CheckDef {
            id: "trees.local_action_composition",
            suite: Suite::Trees,
            property: "local actions compose along the tree",
            run: composition,
        },
        CheckDef {
            id: "trees.orientation_hom",
            suite: Suite::Trees,
            property: "orientation homomorphism is well defined, multiplicative, and detects circle colors",
            run: orientation,
        },
        CheckDef {
            id: "trees.quasi_isometry",
            suite: Suite::Trees,
            property: "the map T_inf to T_{k,inf} distorts distances by at most 2",
            run: quasi_isometry,
        },
        CheckDef {
            id: "trees.json",
            suite: Suite::Trees,
            property: "JSON round-trip of tree elements",
            run: json,
        },
    ]
}

fn toc(n: u32) -> TreeShape {
    TreeShape::tree_of_circles(n).expect("n ≥ 2")
}

fn legal_colorings(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut cases = 0;
    for n in 2..=4 {
        let k = ok(canonical_coloring(n), "canonical coloring")?;
        for radius in 0..=b.radius {
            for cap in 2..=b.cap.max(2) {
                let t = ok(TruncatedTree::new(toc(n), radius, cap), "truncation")?;
                verify_legal(&t, &k)
                    .map_err(|e| format!("canonical coloring, n={n} radius={radius} cap={cap}: {e:?}"))?;
                cases += 1;
            }
        }
    }
    let mut r = rng(seed, 10);
    let (radius, cap) = (b.radius, b.cap.max(2));
    // Draw sequentially for determinism, then verify in parallel.
    let sample: Vec<(u32, TreeElement)> = (0..b.samples)
        .map(|trial| {
            let n = 2 + (trial % 3) as u32;
            (n, random_element(&mut r, &toc(n), ANY))
        })
        .collect();
    sample.par_iter().enumerate().try_for_each(|(trial, (n, g))| {
        let t = ok(TruncatedTree::new(toc(*n), radius, cap), "truncation")?;
        let k = ok(canonical_coloring(*n), "canonical coloring")?.pushforward(&t, g);
        verify_legal(&t, &k).map_err(|e| format!("pushforward by element {trial} (n={n}): {e:?}"))
    })?;
    cases += sample.len();
    Ok(cases)
}

/// Shapes cycled through by the element checks.
fn shapes() -> Vec<TreeShape> {
    let mut v: Vec<TreeShape> = (2..=4).map(toc).collect();
    v.push(TreeShape::regular(3).expect("n ≥ 2"));
    v.push(TreeShape::infinite());
    v
}

/// The vertices of a small truncation together with the supports of `gs`.
fn materialized(shape: TreeShape, gs: &[&TreeElement]) -> Result<Vec<VertexAddress>, String> {
    let t = ok(TruncatedTree::new(shape, 3, 3), "truncation")?;
    let mut vs: Vec<VertexAddress> = t.vertices().to_vec();
    for g in gs {
        vs.extend(g.support_vertices().cloned());
    }
    vs.sort();
    vs.dedup();
    Ok(vs)
}

fn composition(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 11);
    let shapes = shapes();
    let mut cases = 0;
    for trial in 0..b.samples {
        let shape = shapes[trial % shapes.len()];
        let g = random_element(&mut r, &shape, ANY);
        let h = random_element(&mut r, &shape, ANY);
        let gh = ok(g.compose(&h), "compose")?;
        for v in materialized(shape, &[&g, &h, &gh])? {
            let lhs = gh.local_action(&v);
            let rhs = g.local_action(&h.evaluate(&v)).compose(&h.local_action(&v));
            ensure!(lhs == rhs, "pair {trial}: composition law fails at {v}");
            cases += 1;
        }
    }
    Ok(cases)
}

fn orientation(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 12);
    let mut cases = 0;
    let mut trivial = 0;
    for n in 2..=4 {
        let shape = toc(n);
        let t = ok(TruncatedTree::new(shape, 4, 3), "truncation")?;
        let sample: Vec<TreeElement> = (0..b.samples)
            .map(|_| random_element(&mut r, &shape, ORIENTED))
            .collect();
        for (i, g) in sample.iter().enumerate() {
            ensure!(
                g.membership(&PermGroup::Cyclic, DenseGroup::AutO),
                "n={n}, element {i} is outside U(Cyc(n), AutO)"
            );
            let fg = ok(g.orientation_hom(), "orientation_hom")?;
            // Well defined: every ear-side vertex carries the same rotation.
            let mut ears: Vec<VertexAddress> = t.vertices().iter().filter(|v| v.depth() % 2 == 1).cloned().collect();
            ears.extend(g.support_vertices().filter(|v| v.depth() % 2 == 1).cloned());
            for _ in 0..4 {
                let d = 2 * r.gen_range(0..=3) + 1;
                ears.push(random_vertex(&mut r, &shape, d));
            }
            for v in &ears {
                ensure!(
                    g.local_action(v) == LocalAction::Ear(fg.clone()),
                    "n={n}, element {i}: local action at {v} differs from the orientation"
                );
            }
            let h = &sample[(i + 1) % sample.len()];
            let gh = ok(g.compose(h), "compose")?;
            let fh = ok(h.orientation_hom(), "orientation_hom")?;
            ensure!(
                ok(gh.orientation_hom(), "orientation_hom")? == fg.compose(&fh),
                "n={n}, elements {i}, {}: not multiplicative",
                (i + 1) % sample.len()
            );
            let preserves = t
                .vertices()
                .iter()
                .filter(|v| v.depth() % 2 == 0)
                .all(|v| circle_color(&shape, v).ok() == circle_color(&shape, &g.evaluate(v)).ok());
            ensure!(
                preserves == fg.is_identity(),
                "n={n}, element {i}: preserves circle colors = {preserves}, orientation trivial = {}",
                fg.is_identity()
            );
            trivial += fg.is_identity() as usize;
            cases += 1;
        }
    }
    ensure!(
        b.samples < 20 || (trivial > 0 && trivial < cases),
        "sample lacks elements on one side of the criterion ({trivial} of {cases} trivial)"
    );
    Ok(cases)
}

fn quasi_isometry(b: &Budget, _: u64) -> Result<usize, String> {
    let t = ok(
        TruncatedTree::new(TreeShape::infinite(), b.qi_radius, b.qi_cap),
        "truncation",
    )?;
    let rep = ok(check_distortion(&t, b.qi_k), "distortion")?;
    let n = t.vertices().len();
    ensure!(
        rep.vertices == n && rep.pairs == n * (n - 1) / 2,
        "not every pair was examined: {rep:?}"
    );
    ensure!(rep.passed(), "{rep:?}");
    Ok(rep.pairs)
}

fn json(_: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 13);
    let shapes = shapes();
    for (i, shape) in shapes.iter().enumerate() {
        let g = random_element(&mut r, shape, ANY);
        let s = ok(serde_json::to_string(&g), "emit")?;
        let back: TreeElement = ok(serde_json::from_str(&s), "parse")?;
        ensure!(back == g, "element {i} does not round-trip");
    }
    Ok(shapes.len())
}
