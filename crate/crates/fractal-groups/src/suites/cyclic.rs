//! Checks of the cyclic order on Q/Z, separation, monotone maps and splits.

use cyclic_order::{
    classify, orient, separates, split, split_orient, split_successor, strictly_between, Angle, Classification,
    FinitePartialMap, Orientation, PiecewiseAffineMap, Side, SplitPoint,
};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{ensure, ok, CheckDef, Suite};
use crate::budget::Budget;
use crate::gen::{distinct_angles, rng};

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "cyclic.axioms",
            suite: Suite::Cyclic,
            property: "cyclic-order axioms and separation symmetries on k/16 and k/14",
            run: axioms,
        },
        CheckDef {
            id: "cyclic.monotone_maps",
            suite: Suite::Cyclic,
            property: "a finite injection preserves separation iff it is monotone",
            run: monotone_maps,
        },
        CheckDef {
            id: "cyclic.split",
            suite: Suite::Cyclic,
            property: "split configurations are cyclic orders over the forgetful map",
            run: splits,
        },
        CheckDef {
            id: "cyclic.json",
            suite: Suite::Cyclic,
            property: "JSON round-trip of angles, maps and split points",
            run: json,
        },
    ]
}

/// Positive iff `y` comes before `z` going around from `x`, for points
/// `k/n` given by their numerators.
fn oracle_positive(n: i64, x: i64, y: i64, z: i64) -> bool {
    (y - x).rem_euclid(n) < (z - x).rem_euclid(n)
}

/// The four axioms of a cyclic order on `pts` under `o`.
fn cyclic_axioms<T: std::fmt::Debug>(
    pts: &[T],
    o: impl Fn(&T, &T, &T) -> Orientation,
    quadruples: bool,
) -> Result<usize, String> {
    let n = pts.len();
    let mut cases = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let (x, y, z) = (&pts[i], &pts[j], &pts[k]);
                let s = o(x, y, z);
                ensure!(o(y, z, x) == s, "cyclicity fails at {x:?}, {y:?}, {z:?}");
                ensure!(o(z, y, x) == -s, "asymmetry fails at {x:?}, {y:?}, {z:?}");
                cases += 1;
                if !quadruples || s != Orientation::Positive {
                    continue;
                }
                for (l, w) in pts.iter().enumerate() {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    if o(x, z, w) == Orientation::Positive {
                        ensure!(
                            o(x, y, w) == Orientation::Positive,
                            "transitivity fails at {x:?}, {y:?}, {z:?}, {w:?}"
                        );
                    }
                }
            }
        }
    }
    // Totality: `o` yields one of the two signs on every distinct triple.
    Ok(cases)
}

fn axioms(_: &Budget, _: u64) -> Result<usize, String> {
    let mut cases = 0;
    for n in [16i64, 14] {
        let pts: Vec<Angle> = (0..n).map(|k| Angle::frac(k, n)).collect();
        let idx: Vec<i64> = (0..n).collect();
        for &x in &idx {
            for &y in &idx {
                for &z in &idx {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let got = ok(orient(&pts[x as usize], &pts[y as usize], &pts[z as usize]), "orient")?;
                    ensure!(
                        (got == Orientation::Positive) == oracle_positive(n, x, y, z),
                        "orient({x}/{n}, {y}/{n}, {z}/{n}) disagrees with the integer oracle"
                    );
                    ensure!(
                        orient(&pts[x as usize], &pts[x as usize], &pts[z as usize]).is_err(),
                        "degenerate triple accepted"
                    );
                    ensure!(
                        strictly_between(&pts[x as usize], &pts[y as usize], &pts[z as usize])
                            == oracle_positive(n, x, y, z),
                        "strictly_between({x}/{n}, {y}/{n}, {z}/{n}) disagrees with the integer oracle"
                    );
                }
            }
        }
        cases += cyclic_axioms(&pts, |a, b, c| orient(a, b, c).expect("distinct"), true)?;
        let m = n as usize;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        if i == j || i == k || i == l || j == k || j == l || k == l {
                            continue;
                        }
                        let sep =
                            |i: usize, j: usize, k: usize, l: usize| separates(&pts[i], &pts[j], &pts[k], &pts[l]);
                        let s = ok(sep(i, j, k, l), "separates")?;
                        let (x, y, z, w) = (i as i64, j as i64, k as i64, l as i64);
                        let oracle = oracle_positive(n, x, y, z) != oracle_positive(n, x, w, z);
                        ensure!(
                            s == oracle,
                            "separates({i}/{n}, {j}/{n}, {k}/{n}, {l}/{n}) disagrees with the oracle"
                        );
                        // Reflection x ↦ −x permutes the same point set.
                        let r = |x: usize| (m - x) % m;
                        let sym = [
                            sep(k, j, i, l),
                            sep(i, l, k, j),
                            sep(j, i, l, k),
                            sep(r(i), r(j), r(k), r(l)),
                        ];
                        ensure!(
                            sym.iter().all(|t| t.as_ref() == Ok(&s)),
                            "separation symmetry fails at {i}/{n}, {j}/{n}, {k}/{n}, {l}/{n}"
                        );
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// Whether the sequence of target ranks, read in source cyclic order, is a
/// rotation of `0..k` or of its reverse.
fn ranks_monotone(ranks: &[usize]) -> bool {
    let k = ranks.len();
    let up = (0..k).all(|i| ranks[(i + 1) % k] == (ranks[i] + 1) % k);
    let down = (0..k).all(|i| ranks[i] == (ranks[(i + 1) % k] + 1) % k);
    up || down
}

/// The first 4-subset (with its pairing) whose separation changes.
fn separation_violation(src: &[Angle], tgt: &[Angle]) -> Result<Option<[usize; 4]>, String> {
    let n = src.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    for q in [[i, j, k, l], [i, k, j, l], [i, j, l, k]] {
                        let s = ok(separates(&src[q[0]], &src[q[1]], &src[q[2]], &src[q[3]]), "separates")?;
                        let t = ok(separates(&tgt[q[0]], &tgt[q[1]], &tgt[q[2]], &tgt[q[3]]), "separates")?;
                        if s != t {
                            return Ok(Some(q));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn monotone_maps(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 1);
    for trial in 0..b.maps {
        let k = r.gen_range(4..=8);
        let src = distinct_angles(&mut r, k, 32);
        let mut tgt = distinct_angles(&mut r, k, 32);
        tgt.rotate_left(r.gen_range(0..k));
        if r.gen_bool(0.5) {
            tgt.reverse();
        }
        let m = ok(
            FinitePartialMap::new(src.iter().cloned().zip(tgt.iter().cloned())),
            "map",
        )?;
        ensure!(
            ok(classify(&m), "classify")? != Classification::Neither,
            "monotone map {trial} classified as neither"
        );
        if let Some(q) = separation_violation(&src, &tgt)? {
            return Err(format!("monotone map {trial} changes the separation of {q:?}"));
        }
    }
    for trial in 0..b.maps {
        let k = r.gen_range(4..=8);
        let src = distinct_angles(&mut r, k, 32);
        let sorted = distinct_angles(&mut r, k, 32);
        let ranks = loop {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(&mut r);
            if !ranks_monotone(&p) {
                break p;
            }
        };
        let tgt: Vec<Angle> = ranks.iter().map(|&i| sorted[i].clone()).collect();
        let m = ok(
            FinitePartialMap::new(src.iter().cloned().zip(tgt.iter().cloned())),
            "map",
        )?;
        ensure!(
            ok(classify(&m), "classify")? == Classification::Neither,
            "non-monotone injection {trial} classified as monotone"
        );
        ensure!(
            separation_violation(&src, &tgt)?.is_some(),
            "non-monotone injection {trial} preserves every separation"
        );
    }
    Ok(2 * b.maps)
}

fn splits(b: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 2);
    for trial in 0..b.configs {
        let k = r.gen_range(1..=7);
        let pts = distinct_angles(&mut r, k, 24);
        let a: Vec<Angle> = pts.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        let s = ok(split(&pts, &a), "split")?;
        ensure!(s.len() == pts.len() + a.len(), "configuration {trial}: wrong size");
        let o = |x: &SplitPoint, y: &SplitPoint, z: &SplitPoint| split_orient(x, y, z).expect("distinct");
        cyclic_axioms(&s, o, true).map_err(|e| format!("configuration {trial}: {e}"))?;
        for x in &s {
            for y in &s {
                for z in &s {
                    if x.nu() == y.nu() || y.nu() == z.nu() || x.nu() == z.nu() {
                        continue;
                    }
                    ensure!(
                        ok(orient(x.nu(), y.nu(), z.nu()), "orient")? == o(x, y, z),
                        "configuration {trial}: the forgetful map reverses {x:?}, {y:?}, {z:?}"
                    );
                }
            }
        }
        for base in &a {
            let minus = SplitPoint {
                base: base.clone(),
                side: Side::Minus,
            };
            let plus = SplitPoint {
                base: base.clone(),
                side: Side::Plus,
            };
            ensure!(
                ok(split_successor(&s, &minus), "successor")? == plus,
                "configuration {trial}: {base}+ does not follow {base}-"
            );
        }
    }
    Ok(b.configs)
}

fn json(_: &Budget, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed, 3);
    let mut cases = 0;
    for _ in 0..20 {
        let src = distinct_angles(&mut r, 4, 20);
        let tgt = distinct_angles(&mut r, 4, 20);
        let m = ok(
            FinitePartialMap::new(src.iter().cloned().zip(tgt.iter().cloned())),
            "map",
        )?;
        let back: FinitePartialMap = ok(serde_json::from_str(&ok(serde_json::to_string(&m), "emit")?), "parse")?;
        ensure!(back == m, "finite map does not round-trip");
        let f = ok(
            PiecewiseAffineMap::from_nodes(src.iter().cloned().zip(tgt.iter().cloned()), false),
            "map",
        )?;
        let back: PiecewiseAffineMap = ok(serde_json::from_str(&ok(serde_json::to_string(&f), "emit")?), "parse")?;
        ensure!(back == f, "piecewise-affine map does not round-trip");
        let s = ok(split(&src, &src[..2]), "split")?;
        let back: Vec<SplitPoint> = ok(serde_json::from_str(&ok(serde_json::to_string(&s), "emit")?), "parse")?;
        ensure!(back == s, "split configuration does not round-trip");
        cases += 3;
    }
    Ok(cases)
}
