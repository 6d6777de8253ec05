//! Checks of the embedding `T_n → D_n` and of lifted automorphisms.

use colored_trees::TreeElement;
use dendrites::{embed_tree, lift, ColorMap, DendriteApprox, DendriteError, Palette, Point};

use super::{ensure, ok, CheckDef, Suite};
use crate::budget::Budget;
use crate::gen::{random_point, random_regular_generator, rng};

/// Depth of the embedding that lifted elements act through.
const LIFT_DEPTH: usize = 6;

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "dendrites.embedding",
            suite: Suite::Dendrites,
            property: "the embedding of T_3 preserves betweenness and colors",
            run: embedding,
        },
        CheckDef {
            id: "dendrites.lift",
            suite: Suite::Dendrites,
            property: "lifting is a homomorphism compatible with local actions",
            run: lifts,
        },
        CheckDef {
            id: "dendrites.json",
            suite: Suite::Dendrites,
            property: "JSON round-trip of branch points and approximations",
            run: json,
        },
    ]
}

fn embedding(b: &Budget, _: u64) -> Result<usize, String> {
    let mut d = DendriteApprox::new(ok(Palette::finite(3), "palette")?);
    let rec = ok(embed_tree(3, b.embed_depth, &mut d), "embedding")?;
    ensure!(
        rec.betweenness_violations() == 0,
        "{} betweenness violations",
        rec.betweenness_violations()
    );
    ensure!(
        rec.color_violations() == 0,
        "{} color violations",
        rec.color_violations()
    );
    Ok(rec.map().len())
}

fn lifts(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut d = DendriteApprox::new(ok(Palette::finite(3), "palette")?);
    let rec = ok(embed_tree(3, LIFT_DEPTH, &mut d), "embedding")?;
    let e = rec.embedding();
    let mut r = rng(seed, 20);
    let mut pts: Vec<Point> = rec.map().values().take(b.lift_points * 2 / 5).cloned().collect();
    while pts.len() < b.lift_points {
        pts.push(random_point(&mut r, 3, 3, 5));
    }
    let mut cases = 0;
    let mut redrawn = 0;
    for k in 0..b.lift_pairs {
        // Lifts exist only for elements supported within the embedded depth;
        // redraw pairs whose product reaches deeper.
        let (g1, g2, h12) = loop {
            let g1 = random_regular_generator(&mut r, 3, 2, false);
            let g2 = random_regular_generator(&mut r, 3, 2, false);
            match lift(&ok(g1.compose(&g2), "compose")?, &rec) {
                Ok(h) => break (g1, g2, h),
                Err(DendriteError::SupportExceedsDepth { .. }) if redrawn < 10 * b.lift_pairs => redrawn += 1,
                Err(e) => return Err(format!("lift: {e}")),
            }
        };
        let h1 = ok(lift(&g1, &rec), "lift")?;
        let h2 = ok(lift(&g2, &rec), "lift")?;
        for p in &pts {
            let lhs = ok(h12.evaluate(p), "evaluate")?;
            let rhs = ok(h1.evaluate(&ok(h2.evaluate(p), "evaluate")?), "evaluate")?;
            ensure!(lhs == rhs, "pair {k}: lift of the product differs at {p}");
            cases += 1;
        }
        cases += local_actions(&g1, &h1, e, k)?;
    }
    Ok(cases)
}

/// `σ_{lift(g)}(Φ(v)) = σ_g(v)` at the support vertices of `g`.
fn local_actions(
    g: &TreeElement,
    h: &dendrites::DendriteElement,
    e: &dendrites::Embedding,
    k: usize,
) -> Result<usize, String> {
    let mut cases = 0;
    for v in g.support_vertices() {
        let perm = g
            .local_action(v)
            .as_perm()
            .cloned()
            .ok_or_else(|| format!("pair {k}: local action at {v} is not a permutation"))?;
        let got = ok(h.local_action(&ok(e.phi(v), "phi")?), "local action")?;
        ensure!(
            got == ColorMap::from_perm(&perm),
            "pair {k}: local actions differ at {v}"
        );
        cases += 1;
    }
    Ok(cases)
}

fn json(_: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 21);
    for i in 0..20 {
        let p = random_point(&mut r, 4, 4, 6);
        let back: Point = ok(serde_json::from_str(&ok(serde_json::to_string(&p), "emit")?), "parse")?;
        ensure!(back == p, "point {i} does not round-trip");
    }
    let mut d = DendriteApprox::new(ok(Palette::finite(3), "palette")?);
    ok(embed_tree(3, 2, &mut d), "embedding")?;
    let text = ok(serde_json::to_string(&d.to_json()), "emit")?;
    let back = ok(
        DendriteApprox::from_json(&ok(serde_json::from_str(&text), "parse")?),
        "parse",
    )?;
    ensure!(back == d, "approximation does not round-trip");
    Ok(21)
}
