//! Checks of replacement-system expansions, circles, cut-point orders and
//! the rabbit and airplane axioms.

use std::collections::BTreeMap;

use replacement::{
    check_axioms, dendrite_of_circles, expand_edge, fixtures, full_expansion, tree_of_circles, vertex_order,
    AxiomReport, Condition, DendriteNode, DendriteOfCircles, GraphExpansion, ReplacementSystem, TreeOfCircles, Which,
};

use super::{ensure, ok, CheckDef, Suite};
use crate::budget::Budget;
use crate::CliError;

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "replacement.figure_data",
            suite: Suite::Replacement,
            property: "airplane and basilica expansions carry the expected words, colors and sizes",
            run: figure_data,
        },
        CheckDef {
            id: "replacement.circles",
            suite: Suite::Replacement,
            property: "trees and dendrites of circles, and stabilized cut-point orders",
            run: circles,
        },
        CheckDef {
            id: "replacement.axioms",
            suite: Suite::Replacement,
            property: "the rabbits and the airplane satisfy their axioms",
            run: axioms,
        },
        CheckDef {
            id: "replacement.planted_defects",
            suite: Suite::Replacement,
            property: "each planted defect fails exactly the condition it violates",
            run: planted_defects,
        },
        CheckDef {
            id: "replacement.json",
            suite: Suite::Replacement,
            property: "JSON round-trip of systems, expansions, circle structures and reports",
            run: json,
        },
    ]
}

/// A system under test together with the axioms it should satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub system: ReplacementSystem,
    pub which: Which,
}

impl Fixture {
    /// A named planted-defect fixture, a builtin system, or a system JSON file.
    pub fn resolve(arg: &str) -> Result<Fixture, CliError> {
        let system = match fixtures::by_name(arg).or_else(|| ReplacementSystem::builtin(arg)) {
            Some(s) => s,
            None if !std::path::Path::new(arg).exists() => {
                return Err(CliError::Usage(format!(
                    "`{arg}` is neither a fixture, a builtin system nor a file"
                )))
            }
            None => {
                let text = std::fs::read_to_string(arg)
                    .map_err(|e| CliError::Io(format!("cannot read fixture `{arg}`: {e}")))?;
                ReplacementSystem::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?
            }
        };
        let which = if system.name.starts_with("rabbit3-") {
            Which::Rabbit(3)
        } else if system.name.starts_with("airplane") || system.is_airplane() {
            Which::Airplane
        } else if let Some(n) = system.rabbit_arity() {
            Which::Rabbit(n)
        } else {
            return Err(CliError::Usage(format!(
                "`{}` is neither a rabbit nor an airplane system",
                system.name
            )));
        };
        Ok(Fixture { system, which })
    }
}

/// Passes iff the fixture satisfies its axioms; failures name the violated
/// conditions.
pub fn fixture_check(f: &Fixture, depth: usize) -> Result<usize, String> {
    let rep = ok(check_axioms(&f.system, f.which, depth), "check_axioms")?;
    if rep.passed() {
        return Ok(rep.checks.len());
    }
    Err(describe_failures(&rep))
}

fn describe_failures(rep: &AxiomReport) -> String {
    let parts: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            format!(
                "{} ({}; {} failures, e.g. {})",
                c.condition,
                c.description,
                c.failures,
                c.example.as_deref().unwrap_or("-")
            )
        })
        .collect();
    format!("{} violates {}", rep.system, parts.join(", "))
}

fn word_set(g: &GraphExpansion) -> Vec<(String, String)> {
    g.edges().map(|(w, e)| (w.to_string(), e.color.clone())).collect()
}

fn figure_data(_: &Budget, _: u64) -> Result<usize, String> {
    let air = ReplacementSystem::airplane();
    let g = ok(full_expansion(&air, 1), "expansion")?;
    let got: BTreeMap<String, String> = word_set(&g).into_iter().collect();
    let want: BTreeMap<String, String> = [("sb1", "blue"), ("sb2", "red"), ("sb3", "red"), ("sb4", "blue")]
        .into_iter()
        .map(|(w, c)| (w.to_string(), c.to_string()))
        .collect();
    ensure!(got == want, "airplane depth 1: {got:?}");
    let h = ok(expand_edge(&g, &ok(air.parse_word("sb2"), "word")?), "expand sb2")?;
    let new: BTreeMap<String, String> = word_set(&h).into_iter().filter(|(w, _)| w.starts_with("sb2")).collect();
    let want: BTreeMap<String, String> = [("sb2r1", "red"), ("sb2r2", "red"), ("sb2r3", "blue")]
        .into_iter()
        .map(|(w, c)| (w.to_string(), c.to_string()))
        .collect();
    ensure!(new == want, "expanding sb2: {new:?}");
    let b = ok(full_expansion(&ReplacementSystem::basilica(), 1), "expansion")?;
    ensure!(
        (b.vertex_count(), b.edge_count()) == (3, 6),
        "basilica depth 1 has {} vertices and {} edges",
        b.vertex_count(),
        b.edge_count()
    );
    Ok(3)
}

fn circles(b: &Budget, _: u64) -> Result<usize, String> {
    let mut cases = 0;
    for n in 2..=4 {
        let sys = ok(ReplacementSystem::rabbit(n), "rabbit")?;
        let mut g = ok(full_expansion(&sys, 0), "expansion")?;
        for depth in 0..=b.depth {
            let t = ok(tree_of_circles(&g), "tree of circles")?;
            ensure!(t.is_tree(), "rabbit{n} depth {depth}: not a tree");
            for p in 0..t.points.len() {
                ensure!(
                    t.point_degree(p) == n,
                    "rabbit{n} depth {depth}: {} lies on {} circles",
                    t.points[p],
                    t.point_degree(p)
                );
            }
            if depth <= 2 {
                for v in g.vertices() {
                    let o = ok(vertex_order(&g, v, 3), "vertex order")?;
                    ensure!(o == n, "rabbit{n} depth {depth}: {v} has order {o}");
                    cases += 1;
                }
            }
            cases += 1;
            g = g.expand_all();
        }
    }
    let mut g = ok(full_expansion(&ReplacementSystem::airplane(), 0), "expansion")?;
    for depth in 0..=b.depth {
        let d = ok(dendrite_of_circles(&g), "dendrite of circles")?;
        ensure!(d.is_tree(), "airplane depth {depth}: not a tree");
        for (k, node) in d.nodes.iter().enumerate() {
            match node {
                DendriteNode::Point(v) => {
                    ensure!(
                        d.degree(k) <= 2,
                        "airplane depth {depth}: {v} has degree {}",
                        d.degree(k)
                    );
                    if depth <= 2 {
                        let o = ok(vertex_order(&g, v, 3), "vertex order")?;
                        ensure!(o <= 2, "airplane depth {depth}: {v} has order {o}");
                    }
                }
                DendriteNode::Circle(c) if depth <= 2 => {
                    for v in &c.vertices {
                        let o = ok(vertex_order(&g, v, 3), "vertex order")?;
                        ensure!(o == 2, "airplane depth {depth}: circle point {v} has order {o}");
                        cases += 1;
                    }
                }
                DendriteNode::Circle(_) => {}
            }
        }
        cases += 1;
        g = g.expand_all();
    }
    Ok(cases)
}

fn axioms(b: &Budget, _: u64) -> Result<usize, String> {
    let mut cases = 0;
    let mut systems: Vec<(ReplacementSystem, Which)> = Vec::new();
    for n in 2..=4 {
        systems.push((ok(ReplacementSystem::rabbit(n), "rabbit")?, Which::Rabbit(n)));
    }
    systems.push((ReplacementSystem::airplane(), Which::Airplane));
    for (sys, which) in systems {
        let rep = ok(check_axioms(&sys, which, b.depth), "check_axioms")?;
        ensure!(rep.passed(), "{}", describe_failures(&rep));
        cases += rep.checks.len();
    }
    Ok(cases)
}

/// The fixtures and the conditions each violates. Touching circles have
/// no circle between them, so they are unseparated as well as not disjoint.
pub(crate) const PLANTED: [(&str, &[Condition]); 3] = [
    ("airplane-touching", &[Condition::Separation, Condition::Disjointness]),
    ("rabbit3-wrong-order", &[Condition::Order]),
    ("rabbit3-unseparated", &[Condition::Separation]),
];

fn planted_defects(b: &Budget, _: u64) -> Result<usize, String> {
    for (name, want) in PLANTED {
        let f = Fixture::resolve(name).map_err(|e| e.to_string())?;
        let rep = ok(check_axioms(&f.system, f.which, b.depth), "check_axioms")?;
        ensure!(
            rep.failed() == want,
            "{name}: expected to fail {want:?}, failed {:?}",
            rep.failed()
        );
        let msg = fixture_check(&f, b.depth).err().unwrap_or_default();
        for c in want {
            ensure!(msg.contains(&c.to_string()), "{name}: report does not name {c}: {msg}");
        }
    }
    Ok(PLANTED.len())
}

fn json(_: &Budget, _: u64) -> Result<usize, String> {
    let mut cases = 0;
    for name in ["basilica", "rabbit3", "airplane", "bubble-bath"] {
        let sys = ReplacementSystem::builtin(name).ok_or_else(|| format!("no builtin {name}"))?;
        let back = ok(ReplacementSystem::from_json(&sys.to_json()), "parse system")?;
        ensure!(back == sys, "{name} does not round-trip");
        let g = ok(full_expansion(&sys, 2), "expansion")?;
        let back = ok(GraphExpansion::from_json(&g.to_json()), "parse expansion")?;
        ensure!(back == g, "{name} depth 2 does not round-trip");
        cases += 2;
    }
    let g = ok(full_expansion(&ReplacementSystem::basilica(), 2), "expansion")?;
    let t = ok(tree_of_circles(&g), "tree")?;
    let back: TreeOfCircles = ok(serde_json::from_str(&ok(serde_json::to_string(&t), "emit")?), "parse")?;
    ensure!(back == t, "tree of circles does not round-trip");
    let g = ok(full_expansion(&ReplacementSystem::airplane(), 2), "expansion")?;
    let d = ok(dendrite_of_circles(&g), "dendrite")?;
    let back: DendriteOfCircles = ok(serde_json::from_str(&ok(serde_json::to_string(&d), "emit")?), "parse")?;
    ensure!(back == d, "dendrite of circles does not round-trip");
    let rep = ok(
        check_axioms(&fixtures::airplane_touching(), Which::Airplane, 2),
        "check_axioms",
    )?;
    let back: AxiomReport = ok(serde_json::from_str(&ok(serde_json::to_string(&rep), "emit")?), "parse")?;
    ensure!(back == rep, "axiom report does not round-trip");
    Ok(cases + 3)
}
