use cyclic_order::*;
use proptest::prelude::*;

fn a(p: i64, q: i64) -> Angle {
    Angle::frac(p, q)
}

/// Independent orientation oracle: lift `b` and `c` into `(a, a+1)` by
/// cross-multiplied integer comparison.
fn oracle_orient(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> bool {
    // values p/q in [0,1); lift y,z above x
    let lift = |v: (i64, i64)| -> (i64, i64) {
        if v.0 * x.1 > x.0 * v.1 {
            v
        } else {
            (v.0 + v.1, v.1)
        }
    };
    let (ly, lz) = (lift(y), lift(z));
    ly.0 * lz.1 < lz.0 * ly.1
}

fn reduced(p: i64, q: i64) -> (i64, i64) {
    let g = num_integer::gcd(p, q);
    (p / g, q / g)
}

fn angle_strategy() -> impl Strategy<Value = Angle> {
    (1i64..48).prop_flat_map(|q| (0..q).prop_map(move |p| Angle::frac(p, q)))
}

fn distinct_angles(min: usize, max: usize) -> impl Strategy<Value = Vec<Angle>> {
    proptest::collection::btree_set(angle_strategy(), min..=max).prop_map(|s| s.into_iter().collect())
}

#[test]
fn orient_derived_example_matches_oracle() {
    let pts = [(3, 7), (4, 7), (1, 7)];
    for r in 0..3 {
        let (x, y, z) = (pts[r], pts[(r + 1) % 3], pts[(r + 2) % 3]);
        let got = orient(&a(x.0, x.1), &a(y.0, y.1), &a(z.0, z.1)).unwrap();
        assert_eq!(got == Orientation::Positive, oracle_orient(x, y, z));
        assert_eq!(got, Orientation::Positive);
    }
}

#[test]
fn separation_derived_example_matches_arc_test() {
    // {0, 1/4} vs {1/8, 1/2}: exactly one of 1/8, 1/2 lies on the open arc (0, 1/4)
    let inside = |x: &Angle| strictly_between(&a(0, 1), x, &a(1, 4));
    assert!(inside(&a(1, 8)) != inside(&a(1, 2)));
    assert!(separates(&a(0, 1), &a(1, 8), &a(1, 4), &a(1, 2)).unwrap());
}

#[test]
fn classify_swap_by_brute_force() {
    let src = [a(0, 1), a(1, 4), a(1, 2), a(3, 4)];
    let tgt = [a(0, 1), a(1, 2), a(1, 4), a(3, 4)];
    let mut signs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let s = orient(&src[i], &src[j], &src[k]).unwrap();
                let t = orient(&tgt[i], &tgt[j], &tgt[k]).unwrap();
                signs.push(s == t);
            }
        }
    }
    assert!(signs.contains(&true) && signs.contains(&false));
    let m = FinitePartialMap::new(src.iter().cloned().zip(tgt.iter().cloned())).unwrap();
    assert_eq!(classify(&m).unwrap(), Classification::Neither);
}

#[test]
fn orient_agrees_with_oracle_on_small_denominators() {
    let mut pts = Vec::new();
    for q in 1..=9 {
        for p in 0..q {
            if num_integer::gcd(p, q) == 1 {
                pts.push(reduced(p, q));
            }
        }
    }
    for &x in &pts {
        for &y in &pts {
            for &z in &pts {
                if x == y || y == z || x == z {
                    continue;
                }
                let got = orient(&a(x.0, x.1), &a(y.0, y.1), &a(z.0, z.1)).unwrap();
                assert_eq!(got == Orientation::Positive, oracle_orient(x, y, z));
            }
        }
    }
}

#[test]
fn extend_derived_values() {
    // canonical extension is affine interpolation between the given pairs
    let m = FinitePartialMap::new([(a(0, 1), a(0, 1)), (a(1, 2), a(1, 4))]).unwrap();
    let e = extend_point(&m, &a(1, 4)).unwrap();
    assert_eq!(e.get(&a(1, 4)), Some(&a(1, 8)));
    assert_eq!(classify(&e).unwrap(), Classification::Preserving);
    let r = FinitePartialMap::new([(a(0, 1), a(0, 1)), (a(1, 4), a(3, 4)), (a(1, 2), a(1, 2))]).unwrap();
    let e = extend_point(&r, &a(3, 4)).unwrap();
    assert_eq!(e.get(&a(3, 4)), Some(&a(1, 4)));
    assert_eq!(classify(&e).unwrap(), Classification::Reversing);
    let bad = FinitePartialMap::new([
        (a(0, 1), a(0, 1)),
        (a(1, 4), a(1, 2)),
        (a(1, 2), a(1, 4)),
        (a(3, 4), a(3, 4)),
    ])
    .unwrap();
    assert!(matches!(extend_point(&bad, &a(1, 8)), Err(CyclicError::NotMonotone)));
}

#[test]
fn json_forms() {
    assert_eq!(serde_json::to_string(&Angle::zero()).unwrap(), "\"0/1\"");
    let m = FinitePartialMap::new([(a(1, 3), a(2, 3)), (a(0, 1), a(1, 2))]).unwrap();
    let s = serde_json::to_string(&m).unwrap();
    assert_eq!(s, r#"[["0/1","1/2"],["1/3","2/3"]]"#);
    assert_eq!(serde_json::from_str::<FinitePartialMap>(&s).unwrap(), m);
    let w = two_transitive_witness(&a(0, 1), &a(1, 4), &a(0, 1), &a(1, 2)).unwrap();
    let s = serde_json::to_string(&w).unwrap();
    assert_eq!(serde_json::from_str::<PiecewiseAffineMap>(&s).unwrap(), w);
    assert!(serde_json::from_str::<Angle>("\"2/4\"").is_err());
}

fn check_axioms(pts: &[Angle]) {
    for x in pts {
        for y in pts {
            for z in pts {
                if x == y || y == z || x == z {
                    continue;
                }
                let o = orient(x, y, z).unwrap();
                assert_eq!(orient(y, z, x).unwrap(), o, "cyclicity");
                assert_eq!(orient(z, y, x).unwrap(), -o, "asymmetry");
                for w in pts {
                    if w == x || w == y || w == z {
                        continue;
                    }
                    if o == Orientation::Positive && orient(x, z, w).unwrap() == Orientation::Positive {
                        assert_eq!(orient(x, y, w).unwrap(), Orientation::Positive, "transitivity");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axioms_hold_on_random_sets(pts in distinct_angles(3, 8)) {
        check_axioms(&pts);
    }

    #[test]
    fn separation_symmetries(pts in distinct_angles(4, 4)) {
        let (x, y, z, w) = (&pts[0], &pts[1], &pts[2], &pts[3]);
        let s = separates(x, y, z, w).unwrap();
        prop_assert_eq!(separates(z, y, x, w).unwrap(), s);
        prop_assert_eq!(separates(x, w, z, y).unwrap(), s);
        prop_assert_eq!(separates(y, x, w, z).unwrap(), s);
        let r: Vec<Angle> = pts.iter().map(|p| p.neg()).collect();
        prop_assert_eq!(separates(&r[0], &r[1], &r[2], &r[3]).unwrap(), s);
        // arc-membership oracle
        let ib = strictly_between(x, y, z);
        let id = strictly_between(x, w, z);
        prop_assert_eq!(ib != id, s);
    }

    #[test]
    fn witness_classifies_preserving(pts in distinct_angles(4, 4), sample in distinct_angles(3, 10)) {
        let w = two_transitive_witness(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        prop_assert_eq!(w.apply(&pts[0]), pts[2].clone());
        prop_assert_eq!(w.apply(&pts[1]), pts[3].clone());
        prop_assert_eq!(classify(&w.restrict(&sample)).unwrap(), Classification::Preserving);
    }

    #[test]
    fn pl_group_laws(src in distinct_angles(3, 6), tgt in distinct_angles(6, 6), rev in any::<bool>(), xs in distinct_angles(1, 8)) {
        let mut t: Vec<Angle> = tgt[..src.len()].to_vec();
        t.sort();
        if rev { t.reverse(); }
        let f = PiecewiseAffineMap::from_nodes(src.iter().cloned().zip(t), rev).unwrap();
        let g = PiecewiseAffineMap::from_nodes(tgt.iter().cloned().zip(src.iter().cloned().cycle()).take(2), false).unwrap();
        let fg = f.compose(&g);
        for x in &xs {
            prop_assert_eq!(fg.apply(x), f.apply(&g.apply(x)));
            prop_assert_eq!(f.inverse().apply(&f.apply(x)), x.clone());
        }
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(fg.is_reversing(), rev);
    }

    #[test]
    fn extension_is_canonical(src in distinct_angles(3, 5), extra in distinct_angles(2, 6)) {
        let m = FinitePartialMap::identity_on(&src)
            .pairs().iter().map(|(s, t)| (s.clone(), t.add(&Angle::frac(1, 5)))).collect::<Vec<_>>();
        let m = FinitePartialMap::new(m).unwrap();
        let xs: Vec<Angle> = extra.into_iter().filter(|x| m.get(x).is_none()).collect();
        let mut fwd = m.clone();
        for x in &xs { fwd = extend_point(&fwd, x).unwrap(); }
        let mut bwd = m.clone();
        for x in xs.iter().rev() { bwd = extend_point(&bwd, x).unwrap(); }
        prop_assert_eq!(&fwd, &bwd);
        prop_assert_eq!(classify(&fwd).unwrap(), Classification::Preserving);
    }

    #[test]
    fn split_is_a_cyclic_order(pts in distinct_angles(1, 7), mask in proptest::collection::vec(any::<bool>(), 7)) {
        let aset: Vec<Angle> = pts.iter().zip(&mask).filter(|(_, m)| **m).map(|(p, _)| p.clone()).collect();
        let s = split(&pts, &aset).unwrap();
        prop_assert_eq!(s.len(), pts.len() + aset.len());
        for x in &s { for y in &s { for z in &s {
            if x == y || y == z || x == z { continue; }
            let o = split_orient(x, y, z).unwrap();
            prop_assert_eq!(split_orient(y, z, x).unwrap(), o);
            prop_assert_eq!(split_orient(z, y, x).unwrap(), -o);
            if x.base != y.base && y.base != z.base && x.base != z.base {
                prop_assert_eq!(orient(&x.base, &y.base, &z.base).unwrap(), o);
            }
        }}}
        for b in &aset {
            let m = SplitPoint { base: b.clone(), side: Side::Minus };
            let p = SplitPoint { base: b.clone(), side: Side::Plus };
            prop_assert_eq!(split_successor(&s, &m).unwrap(), p);
        }
    }
}

fn preserves_separation(m: &FinitePartialMap) -> bool {
    let p = m.pairs();
    let n = p.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let idx = [i, j, k, l];
                    if (0..4).any(|u| (u + 1..4).any(|v| idx[u] == idx[v])) {
                        continue;
                    }
                    let s = separates(&p[i].0, &p[j].0, &p[k].0, &p[l].0).unwrap();
                    let t = separates(&p[i].1, &p[j].1, &p[k].1, &p[l].1).unwrap();
                    if s != t {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monotone_iff_separation_preserved(src in distinct_angles(4, 7), tgt in distinct_angles(7, 7), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (0..7).collect();
        for i in (1..7).rev() { v.swap(i, (rng.next_u32() as usize) % (i + 1)); }
        v
    })) {
        let t: Vec<Angle> = perm.iter().filter(|&&i| i < src.len()).map(|&i| tgt[i].clone()).collect();
        let m = FinitePartialMap::new(src.iter().cloned().zip(t)).unwrap();
        let c = classify(&m).unwrap();
        prop_assert_eq!(c != Classification::Neither, preserves_separation(&m));
    }
}
