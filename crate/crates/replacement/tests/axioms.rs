use replacement::fixtures;
use replacement::{check_axioms, Condition, ReplacementSystem, Which};

#[test]
fn builtin_rabbits_satisfy_their_axioms() {
    for n in 2..=4 {
        let sys = ReplacementSystem::rabbit(n).unwrap();
        let report = check_axioms(&sys, Which::Rabbit(n), 4).unwrap();
        assert!(report.passed(), "rabbit{n}: {report:#?}");
        assert_eq!(report.checks.len(), 4);
    }
}

#[test]
fn airplane_satisfies_its_axioms() {
    let report = check_axioms(&ReplacementSystem::airplane(), Which::Airplane, 4).unwrap();
    assert!(report.passed(), "{report:#?}");
}

#[test]
fn rabbit_of_wrong_arity_fails_order_only() {
    let report = check_axioms(&ReplacementSystem::rabbit(2).unwrap(), Which::Rabbit(3), 3).unwrap();
    assert_eq!(report.failed(), vec![Condition::Order]);
}

#[test]
fn touching_circles_fail_disjointness() {
    let report = check_axioms(&fixtures::airplane_touching(), Which::Airplane, 3).unwrap();
    let failed = report.failed();
    assert!(failed.contains(&Condition::Disjointness), "{report:#?}");
    assert!(!failed.contains(&Condition::Order), "{report:#?}");
}

#[test]
fn wrong_order_vertex_fails_order_only() {
    let report = check_axioms(&fixtures::rabbit_wrong_order(), Which::Rabbit(3), 3).unwrap();
    assert_eq!(report.failed(), vec![Condition::Order], "{report:#?}");
    let order = report.checks.iter().find(|c| c.condition == Condition::Order).unwrap();
    assert!(order.example.as_deref().unwrap().contains("order 2"));
}

#[test]
fn shared_arcs_fail_separation_only() {
    let report = check_axioms(&fixtures::rabbit_unseparated(), Which::Rabbit(3), 3).unwrap();
    assert_eq!(report.failed(), vec![Condition::Separation], "{report:#?}");
}

#[test]
fn fixtures_are_found_by_name() {
    for name in fixtures::NAMES {
        assert_eq!(fixtures::by_name(name).unwrap().name, name);
    }
    assert!(fixtures::by_name("airplane").is_none());
}

#[test]
fn report_round_trips_through_json() {
    let report = check_axioms(&fixtures::airplane_touching(), Which::Airplane, 2).unwrap();
    let s = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<replacement::AxiomReport>(&s).unwrap(), report);
}

#[test]
fn extra_edge_on_a_red_circle_fails_disjointness() {
    let mut sys = ReplacementSystem::airplane();
    let blue = sys.replacements.get_mut("blue").unwrap();
    let mut extra = blue.graph.edges[1].clone();
    extra.name = "b5".into();
    blue.graph.edges.push(extra);
    let report = check_axioms(&sys, Which::Airplane, 2).unwrap();
    assert!(report.failed().contains(&Condition::Disjointness), "{report:#?}");
}
