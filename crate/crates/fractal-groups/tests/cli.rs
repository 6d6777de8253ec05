//! End-to-end runs of the `fractal-groups` binary.

use std::process::{Command, Output};

use fractal_groups::suites::Report;
use fractal_groups::{EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE};
use laminations::Lamination;
use replacement::{GraphExpansion, ReplacementSystem};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fractal-groups"))
        .env_remove(fractal_groups::budget::BUDGET_ENV)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(EXIT_OK),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn airplane_depth_one_dot() {
    let dot = stdout(&["expand", "--system", "airplane", "--depth", "1", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    for w in ["sb1", "sb2", "sb3", "sb4"] {
        assert!(dot.contains(&format!("label=\"{w}\"")), "{w} missing");
    }
    assert!(dot.contains("label=\"sb2\", color=\"red\""));
    assert_eq!(dot.matches(" -> ").count(), 4);
}

#[test]
fn expansion_json_and_svg() {
    let json = stdout(&["expand", "--system", "basilica", "--depth", "0", "--format", "json"]);
    let g = GraphExpansion::from_json(&json).unwrap();
    assert_eq!(
        g,
        replacement::full_expansion(&ReplacementSystem::basilica(), 0).unwrap()
    );
    let svg = stdout(&["expand", "--system", "rabbit3", "--depth", "1", "--format", "svg"]);
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn system_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rabbit3.json");
    std::fs::write(&path, ReplacementSystem::rabbit(3).unwrap().to_json()).unwrap();
    let p = path.to_str().unwrap();
    let from_file = stdout(&["expand", "--system", p, "--depth", "2", "--format", "json"]);
    let builtin = stdout(&["expand", "--system", "rabbit3", "--depth", "2", "--format", "json"]);
    assert_eq!(from_file, builtin);
}

#[test]
fn rabbit_generation_zero_is_the_triangle() {
    let out = stdout(&[
        "lamination",
        "--seed",
        "rabbit:3",
        "--generations",
        "0",
        "--out",
        "json",
    ]);
    let lam = Lamination::from_json(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(lam.leaves().len(), 3);
    assert_eq!(
        v["leaves"],
        serde_json::json!([["1/7", "2/7"], ["1/7", "4/7"], ["2/7", "4/7"]])
    );
}

#[test]
fn basilica_generation_zero_is_one_leaf() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["lamination", "--seed", "basilica", "--generations", "0"])).unwrap();
    assert_eq!(v["leaves"], serde_json::json!([["1/3", "2/3"]]));
}

#[test]
fn generation_cap_is_enforced() {
    let o = run(&["lamination", "--seed", "airplane", "--generations", "11"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = run(&[
        "lamination",
        "--seed",
        "airplane",
        "--generations",
        "11",
        "--max-generations",
        "11",
        "--out",
        "svg",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
}

#[test]
fn planted_fixture_fails_naming_disjointness() {
    let o = run(&["verify", "--suite", "replacement", "--fixture", "airplane-touching"]);
    assert_eq!(o.status.code(), Some(EXIT_FAILED));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("FAIL replacement.fixture"));
    assert!(text.contains("disjointness"));
}

#[test]
fn budgeted_tree_suite_passes() {
    let o = run(&["--json", "verify", "--suite", "trees", "--budget", "radius=5,cap=5"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let rep: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rep.passed);
    assert_eq!((rep.budget.radius, rep.budget.cap), (5, 5));
    assert!(rep.checks.iter().all(|c| c.id.starts_with("trees.")));
}

#[test]
fn budget_environment_is_overridden_by_the_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_fractal-groups"))
        .env(fractal_groups::budget::BUDGET_ENV, "configs=5,maps=3")
        .args(["--json", "verify", "--suite", "cyclic", "--budget", "maps=4"])
        .output()
        .unwrap();
    let rep: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((rep.budget.configs, rep.budget.maps), (5, 4));
}

#[test]
fn verify_is_deterministic() {
    let strip = |s: String| -> Vec<(String, usize, bool)> {
        let rep: Report = serde_json::from_str(&s).unwrap();
        rep.checks.into_iter().map(|c| (c.id, c.cases, c.passed)).collect()
    };
    let args = [
        "--json", "verify", "--suite", "cyclic", "--seed", "11", "--budget", "maps=50",
    ];
    assert_eq!(strip(stdout(&args)), strip(stdout(&args)));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["lamination", "--seed", "rabbit:1"][..],
        &["lamination", "--seed", "dragon"],
        &["expand", "--system", "nonexistent-system"],
        &["verify", "--suite", "everything"],
        &["verify", "--budget", "radius=-1"],
        &["verify", "--fixture", "no-such-fixture"],
        &["julia", "--c", "0.1", "-o", "x.png"],
        &["julia", "--preset", "airplane", "--escape-radius", "1.5", "-o", "x.png"],
        &["no-such-command"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}");
    }
}

#[test]
fn json_errors_carry_the_exit_code() {
    let o = run(&["--json", "lamination", "--seed", "rabbit:1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], EXIT_USAGE);
    assert!(v["error"].is_string());
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out");
    let b = bad.to_str().unwrap();
    for args in [
        &["expand", "--system", "basilica", "-o", b][..],
        &["lamination", "--seed", "basilica", "-o", b],
        &[
            "julia", "--preset", "basilica", "--width", "8", "--height", "8", "-o", b,
        ],
        &["verify", "--suite", "laminations", "--report", b],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(EXIT_IO), "{args:?}");
    }
    let unreadable = dir.path().to_str().unwrap();
    let o = run(&["julia", "--params", unreadable, "-o", "x.png"]);
    assert_eq!(o.status.code(), Some(EXIT_IO));
}

#[test]
fn julia_presets_render_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("air.png");
    let o = stdout(&[
        "--json",
        "julia",
        "--preset",
        "airplane",
        "--width",
        "40",
        "--height",
        "30",
        "-o",
        out.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&o).unwrap();
    let c = v["preset"]["c"][0].as_f64().unwrap();
    assert!((c + 1.75).abs() < 1e-12);
    assert!(v["preset"]["provenance"].as_str().unwrap().contains("Newton"));
    let img = image::open(&out).unwrap();
    assert_eq!((img.width(), img.height()), (40, 30));
}

#[test]
fn structure_commands_report_shape() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "--json",
        "tree-of-circles",
        "--system",
        "rabbit4",
        "--depth",
        "2",
    ]))
    .unwrap();
    assert!(v["circles"].as_array().is_some());
    let human = stdout(&["tree-of-circles", "--system", "rabbit4", "--depth", "2"]);
    assert!(human.contains("tree: true") && human.contains("{4}"));
    let human = stdout(&["dendrite-of-circles", "--system", "airplane", "--depth", "3"]);
    let degree: usize = human.trim_end().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(human.contains("tree: true") && degree <= 2, "{human}");
    let human = stdout(&["qi-check", "--radius", "4", "--cap", "3"]);
    assert!(human.trim_end().ends_with("PASS"));
}
