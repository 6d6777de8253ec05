//! Checks of the seed laminations and their pullbacks.

use std::collections::BTreeSet;

use cyclic_order::Angle;
use laminations::{Lamination, Leaf, PolygonClass, Seed};

use super::{ensure, ok, CheckDef, Suite};
use crate::budget::Budget;

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "laminations.seeds",
            suite: Suite::Laminations,
            property: "seed polygons and the airplane orbit",
            run: seeds,
        },
        CheckDef {
            id: "laminations.generations",
            suite: Suite::Laminations,
            property: "pullbacks stay unlinked and forward invariant with n-gon classes",
            run: generations,
        },
        CheckDef {
            id: "laminations.json",
            suite: Suite::Laminations,
            property: "JSON round-trip of laminations",
            run: json,
        },
    ]
}

fn a(p: i64, q: i64) -> Angle {
    Angle::frac(p, q)
}

fn leaf(p: (i64, i64), q: (i64, i64)) -> Leaf {
    Leaf::new(a(p.0, p.1), a(q.0, q.1)).expect("distinct endpoints")
}

/// The builtin seeds.
pub(crate) fn builtin_seeds() -> Vec<Seed> {
    vec![Seed::Rabbit(2), Seed::Rabbit(3), Seed::Rabbit(4), Seed::Airplane]
}

fn seeds(_: &Budget, _: u64) -> Result<usize, String> {
    let r3 = ok(Lamination::seed(Seed::Rabbit(3)), "seed")?;
    let want = PolygonClass::new([a(1, 7), a(2, 7), a(4, 7)]);
    ensure!(
        r3.classes() == vec![want.clone()],
        "rabbit 3 classes: {:?}",
        r3.classes()
    );
    let sides: BTreeSet<Leaf> = want.sides().into_iter().collect();
    ensure!(*r3.leaves() == sides, "rabbit 3 leaves: {:?}", r3.leaves());

    let b = ok(Lamination::seed(Seed::Rabbit(2)), "seed")?;
    ensure!(
        *b.leaves() == BTreeSet::from([leaf((1, 3), (2, 3))]),
        "basilica leaves: {:?}",
        b.leaves()
    );

    let orbit = [leaf((3, 7), (4, 7)), leaf((6, 7), (1, 7)), leaf((5, 7), (2, 7))];
    for k in 0..3 {
        let next = orbit[k].double().ok_or("airplane leaf is a diameter")?;
        ensure!(next == orbit[(k + 1) % 3], "{} doubles to {next}", orbit[k]);
    }
    let air = ok(Lamination::seed(Seed::Airplane), "seed")?;
    ensure!(
        *air.leaves() == orbit.iter().cloned().collect::<BTreeSet<_>>(),
        "airplane leaves: {:?}",
        air.leaves()
    );
    Ok(4)
}

fn generations(b: &Budget, _: u64) -> Result<usize, String> {
    let mut cases = 0;
    for seed in builtin_seeds() {
        let mut lam = ok(Lamination::seed(seed), "seed")?;
        let base = lam.leaves().len();
        for g in 0..=b.generations {
            ensure!(lam.generation() == g, "{seed}: generation counter {}", lam.generation());
            ensure!(
                lam.leaves().len() == base << g,
                "{seed} generation {g}: {} leaves, expected {}",
                lam.leaves().len(),
                base << g
            );
            if let Some((x, y)) = lam.first_crossing() {
                return Err(format!("{seed} generation {g}: {x} crosses {y}"));
            }
            ensure!(
                lam.is_forward_invariant(),
                "{seed} generation {g}: not forward invariant"
            );
            if let Seed::Rabbit(n) = seed {
                for c in lam.classes() {
                    ensure!(
                        c.len() == n,
                        "{seed} generation {g}: class {:?} has {} vertices",
                        c.angles,
                        c.len()
                    );
                }
            }
            cases += 1;
            if g < b.generations {
                lam = ok(lam.pullback(), "pullback")?;
            }
        }
    }
    Ok(cases)
}

fn json(b: &Budget, _: u64) -> Result<usize, String> {
    for seed in builtin_seeds() {
        let lam = ok(Lamination::generate(seed, b.generations.min(4)), "generate")?;
        let back = ok(Lamination::from_json(&lam.to_json()), "parse")?;
        ensure!(back == lam, "{seed} does not round-trip");
    }
    Ok(builtin_seeds().len())
}
