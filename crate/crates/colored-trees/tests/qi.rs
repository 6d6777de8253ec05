use colored_trees::{check_distortion, Color, QiMap, TreeShape, TruncatedTree, VertexAddress};
use cyclic_order::Angle;

#[test]
fn exhaustive_distortion_radius_six() {
    let t = TruncatedTree::new(TreeShape::infinite(), 6, 4).unwrap();
    let r = check_distortion(&t, 3).unwrap();
    assert_eq!(r.vertices, 1 + 4 + 12 + 36 + 108 + 324 + 972);
    assert_eq!(r.pairs, r.vertices * (r.vertices - 1) / 2);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn other_target_degrees() {
    for k in [2, 4, 5] {
        let t = TruncatedTree::new(TreeShape::infinite(), 5, 4).unwrap();
        let r = check_distortion(&t, k).unwrap();
        assert!(r.passed(), "k={k}: {r:?}");
    }
}

#[test]
fn neighbors_of_basepoint_go_to_neighbors() {
    let f = QiMap::new(3, 2).unwrap();
    for q in 1..6 {
        for p in 0..q {
            let a = Angle::frac(p, q);
            let v = VertexAddress(vec![Color::Dense(a)]);
            let fv = f.map(&v).unwrap();
            assert_eq!(fv.depth(), 1);
            assert!(f.target().validate(&fv).is_ok());
        }
    }
}

#[test]
fn images_are_valid_addresses() {
    let t = TruncatedTree::new(TreeShape::infinite(), 5, 3).unwrap();
    let f = QiMap::new(3, 5).unwrap();
    for v in t.vertices() {
        let fv = f.map(v).unwrap();
        assert!(f.target().validate(&fv).is_ok(), "{v} ↦ {fv}");
        assert_eq!(fv.depth(), v.depth());
    }
}
