use replacement::{
    arcs_between, circles, dendrite_of_circles, full_expansion, tree_of_circles, vertex_order, DendriteNode, EdgeWord,
    GluingVertex, GraphExpansion, ReplacementError, ReplacementSystem,
};

fn fresh(word: &[&str], local: usize) -> GluingVertex {
    GluingVertex {
        word: EdgeWord::new(word.iter().copied()),
        local,
    }
}

#[test]
fn basilica_depth_one_has_two_circles_through_the_base() {
    let g = full_expansion(&ReplacementSystem::basilica(), 1).unwrap();
    let v0 = GluingVertex::base(0);
    let through: Vec<_> = circles(&g).unwrap().into_iter().filter(|c| c.contains(&v0)).collect();
    assert_eq!(through.len(), 2);
    let report = arcs_between(&g, &v0, &v0, 3).unwrap();
    assert_eq!(report.arc_count, Some(2));
}

#[test]
fn airplane_red_circle_has_two_arcs_between_its_cut_points() {
    let g = full_expansion(&ReplacementSystem::airplane(), 1).unwrap();
    let (p, q) = (fresh(&["s"], 1), fresh(&["s"], 2));
    let arcs = arcs_between(&g, &p, &q, 3).unwrap();
    assert!(arcs.stabilizes);
    assert_eq!(arcs.arc_count, Some(2));
    let circle = arcs_between(&g, &p, &p, 3).unwrap();
    assert_eq!(circle.arc_count, Some(1));
    assert_eq!(circles(&g).unwrap().len(), 1);
}

#[test]
fn airplane_blue_arcs_branch() {
    let g = full_expansion(&ReplacementSystem::airplane(), 0).unwrap();
    let arcs = arcs_between(&g, &GluingVertex::base(0), &GluingVertex::base(1), 3).unwrap();
    assert!(!arcs.stabilizes);
    assert_eq!(arcs.arc_count, None);
    assert_eq!(arcs.skeletons[0].branching, vec![EdgeWord::new(["s"])]);
}

#[test]
fn bubble_bath_does_not_stabilize() {
    let sys = ReplacementSystem::bubble_bath();
    assert!(!sys.stabilizes());
    assert!(!ReplacementSystem::airplane().stabilizes());
    assert!(ReplacementSystem::rabbit(3).unwrap().stabilizes());
    let g = full_expansion(&sys, 0).unwrap();
    let arcs = arcs_between(&g, &GluingVertex::base(0), &GluingVertex::base(1), 3).unwrap();
    assert!(!arcs.stabilizes);
    assert_eq!(arcs.skeletons.len(), 3);
}

#[test]
fn unknown_vertices_are_rejected() {
    let g = full_expansion(&ReplacementSystem::basilica(), 1).unwrap();
    let err = arcs_between(&g, &GluingVertex::base(0), &GluingVertex::base(9), 2).unwrap_err();
    assert!(matches!(err, ReplacementError::NoSuchVertex(_)));
}

#[test]
fn rabbit_vertices_have_order_n() {
    for n in 2..=4 {
        let g = full_expansion(&ReplacementSystem::rabbit(n).unwrap(), 2).unwrap();
        for v in g.vertices() {
            assert_eq!(vertex_order(&g, v, 3).unwrap(), n, "rabbit{n} at {v}");
        }
    }
}

#[test]
fn airplane_circle_points_have_order_two() {
    let g = full_expansion(&ReplacementSystem::airplane(), 2).unwrap();
    for c in circles(&g).unwrap() {
        for v in &c.vertices {
            assert_eq!(vertex_order(&g, v, 3).unwrap(), 2, "{v}");
        }
    }
    // Endpoints of the base edge are not cut points.
    assert_eq!(vertex_order(&g, &GluingVertex::base(0), 3).unwrap(), 1);
}

#[test]
fn orders_stay_constant_once_stabilized() {
    let sys = ReplacementSystem::basilica();
    let g = full_expansion(&sys, 1).unwrap();
    assert_eq!(vertex_order(&g, &GluingVertex::base(0), 2).unwrap(), 2);
    let mut h = g.clone();
    for _ in 0..5 {
        h = h.expand_all();
        for v in g.vertices() {
            assert_eq!(vertex_order(&h, v, 1).unwrap(), vertex_order(&g, v, 2).unwrap(), "{v}");
        }
    }
}

#[test]
fn stabilization_needs_two_equal_counts() {
    let g = full_expansion(&ReplacementSystem::basilica(), 1).unwrap();
    match vertex_order(&g, &GluingVertex::base(0), 0) {
        Err(ReplacementError::NotStabilized { counts, .. }) => assert_eq!(counts, vec![2]),
        other => panic!("{other:?}"),
    }
}

fn assert_rabbit_tree(g: &GraphExpansion, n: usize) {
    let t = tree_of_circles(g).unwrap();
    assert!(t.is_tree(), "rabbit{n}");
    for p in 0..t.points.len() {
        assert_eq!(t.point_degree(p), n);
    }
}

#[test]
fn trees_of_circles() {
    for n in 2..=4 {
        let sys = ReplacementSystem::rabbit(n).unwrap();
        let mut g = full_expansion(&sys, 0).unwrap();
        let mut last_max = 0;
        for depth in 0..=4 {
            assert_rabbit_tree(&g, n);
            let t = tree_of_circles(&g).unwrap();
            let max = (0..t.circles.len()).map(|c| t.circle_degree(c)).max().unwrap();
            assert!(depth == 0 || max > last_max, "circle degrees grow");
            last_max = max;
            g = g.expand_all();
        }
    }
}

#[test]
fn basilica_depth_one_tree() {
    let g = full_expansion(&ReplacementSystem::basilica(), 1).unwrap();
    let t = tree_of_circles(&g).unwrap();
    assert_eq!((t.circles.len(), t.points.len()), (4, 3));
    assert!(t.is_tree());
}

#[test]
fn tree_of_circles_needs_a_rabbit() {
    let g = full_expansion(&ReplacementSystem::airplane(), 1).unwrap();
    assert!(matches!(tree_of_circles(&g), Err(ReplacementError::NotRabbitSystem)));
    let g = full_expansion(&ReplacementSystem::rabbit(3).unwrap(), 1).unwrap();
    assert!(matches!(
        dendrite_of_circles(&g),
        Err(ReplacementError::NotAirplaneSystem)
    ));
}

#[test]
fn airplane_depth_one_dendrite() {
    let g = full_expansion(&ReplacementSystem::airplane(), 1).unwrap();
    let d = dendrite_of_circles(&g).unwrap();
    assert_eq!(d.nodes.len(), 3);
    assert!(matches!(d.nodes[0], DendriteNode::Circle(_)));
    assert_eq!(d.degree(0), 2);
    assert!(d.is_tree());
}

#[test]
fn dendrites_of_circles() {
    let mut g = full_expansion(&ReplacementSystem::airplane(), 0).unwrap();
    for _ in 0..=5 {
        let d = dendrite_of_circles(&g).unwrap();
        assert!(d.is_tree());
        for (k, node) in d.nodes.iter().enumerate() {
            match node {
                DendriteNode::Point(_) => assert!(d.degree(k) <= 2),
                // Removing a circle leaves one component per cut point on it.
                DendriteNode::Circle(_) => assert_eq!(d.components_without(k), d.degree(k)),
            }
        }
        g = g.expand_all();
    }
}
