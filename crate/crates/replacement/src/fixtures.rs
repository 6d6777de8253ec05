//! Systems with planted defects, each violating one axiom family.

use crate::system::{RepEdge, RepGraph, Replacement, ReplacementSystem};

fn edge(name: &str, from: usize, to: usize, color: &str) -> RepEdge {
    RepEdge {
        name: name.into(),
        from,
        to,
        color: color.into(),
    }
}

/// The airplane with the blue pendant of the red replacement turned into a
/// red loop: circles touch at the middle of every red edge.
pub fn airplane_touching() -> ReplacementSystem {
    let mut sys = ReplacementSystem::airplane();
    sys.name = "airplane-touching".into();
    sys.replacements.insert(
        "red".into(),
        Replacement {
            graph: RepGraph {
                vertices: 3,
                edges: vec![
                    edge("r1", 0, 1, "red"),
                    edge("r2", 1, 2, "red"),
                    edge("r3", 1, 1, "red"),
                ],
            },
            iota: 0,
            tau: 2,
        },
    );
    sys
}

/// Three base loops with the one-loop replacement: new cut points have
/// order 2 where the 3-rabbit needs 3.
pub fn rabbit_wrong_order() -> ReplacementSystem {
    let mut sys = ReplacementSystem::rabbit(2).expect("n = 2 is valid");
    sys.name = "rabbit3-wrong-order".into();
    sys.base.edges = (1..=3).map(|k| edge(&format!("X{k}"), 0, 0, "black")).collect();
    sys
}

/// The 3-rabbit replacement on a base with three parallel edges and two
/// loops at each end: circles through the parallel edges share arcs, while
/// every cut point still has order 3.
pub fn rabbit_unseparated() -> ReplacementSystem {
    let mut sys = ReplacementSystem::rabbit(3).expect("n = 3 is valid");
    sys.name = "rabbit3-unseparated".into();
    sys.base = RepGraph {
        vertices: 2,
        edges: vec![
            edge("A", 0, 1, "black"),
            edge("B", 0, 1, "black"),
            edge("C", 0, 1, "black"),
            edge("P1", 0, 0, "black"),
            edge("P2", 0, 0, "black"),
            edge("Q1", 1, 1, "black"),
            edge("Q2", 1, 1, "black"),
        ],
    };
    sys
}

/// Looks up a fixture by its system name.
pub fn by_name(name: &str) -> Option<ReplacementSystem> {
    match name {
        "airplane-touching" => Some(airplane_touching()),
        "rabbit3-wrong-order" => Some(rabbit_wrong_order()),
        "rabbit3-unseparated" => Some(rabbit_unseparated()),
        _ => None,
    }
}

pub const NAMES: [&str; 3] = ["airplane-touching", "rabbit3-wrong-order", "rabbit3-unseparated"];
