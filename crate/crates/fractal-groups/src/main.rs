//! The `fractal-groups` command.

mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use colored_trees::{check_distortion, TreeShape, TruncatedTree};
use fractal_groups::budget::Budget;
use fractal_groups::julia::{self, JuliaParams, Preset};
use fractal_groups::suites::{self, Fixture, Suite};
use fractal_groups::{CliError, DEFAULT_GENERATION_CAP};
use laminations::{Lamination, Seed};
use num_complex::Complex64;
use replacement::{circles, dendrite_of_circles, full_expansion, tree_of_circles, GraphExpansion, ReplacementSystem};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fractal-groups",
    version,
    about = "Replacement systems, laminations, Julia sets and verification suites",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error."
)]
struct Cli {
    /// Machine-readable JSON on stdout instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a replacement system to a given depth.
    Expand {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Write the expansion here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the cycles of an expansion.
    Circles {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The tree of circles of a rabbit expansion.
    TreeOfCircles {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The dendrite of circles of an airplane expansion.
    DendriteOfCircles {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// A lamination after some generations of pullback.
    Lamination {
        /// basilica, rabbit:N or airplane.
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 0)]
        generations: usize,
        /// Output format.
        #[arg(long = "out", alias = "format", value_enum, default_value_t = LamFormat::Json)]
        format: LamFormat,
        /// Refuse more generations than this.
        #[arg(long, default_value_t = DEFAULT_GENERATION_CAP)]
        max_generations: usize,
        /// Image size of the SVG in pixels.
        #[arg(long, default_value_t = 600)]
        size: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a filled Julia set of z^2 + c as a PNG.
    Julia {
        /// basilica, rabbit:N or airplane.
        #[arg(long, conflicts_with_all = ["c", "params"])]
        preset: Option<String>,
        /// The parameter as RE,IM.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "params")]
        c: Option<String>,
        /// A JSON file of rendering parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        max_iter: Option<u32>,
        #[arg(long)]
        escape_radius: Option<f64>,
        #[arg(long)]
        width: Option<u32>,
        #[arg(long)]
        height: Option<u32>,
        /// XMIN,YMIN,XMAX,YMAX.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Overrides such as radius=5,cap=5 (see the README for keys).
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check the axioms of a system expected to satisfy them: a
        /// planted-defect name, a builtin, or a system JSON file.
        #[arg(long)]
        fixture: Option<String>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustive distortion check of the map T_inf to T_{k,inf}.
    QiCheck {
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
}

#[derive(clap::Args)]
struct SystemArgs {
    /// A builtin (basilica, rabbitN, airplane, bubble-bath) or a system JSON file.
    #[arg(long)]
    system: String,
    #[arg(long, default_value_t = 0)]
    depth: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum LamFormat {
    Json,
    Svg,
}

#[derive(Serialize)]
struct QiSummary {
    radius: usize,
    cap: usize,
    k: u32,
    vertices: usize,
    pairs: usize,
    distortion_violations: usize,
    basepoint_violations: usize,
    odd_collisions: usize,
    edge_violations: usize,
    passed: bool,
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn load_system(arg: &str) -> Result<ReplacementSystem, CliError> {
    if let Some(s) = ReplacementSystem::builtin(arg) {
        return Ok(s);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "`{arg}` is neither a builtin system nor a file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {arg}: {e}")))?;
    ReplacementSystem::from_json(&text).map_err(usage)
}

fn expansion(a: &SystemArgs) -> Result<GraphExpansion, CliError> {
    full_expansion(&load_system(&a.system)?, a.depth).map_err(usage)
}

/// Writes `bytes` to `path`, or to stdout.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn print(json_mode: bool, value: serde_json::Value, human: String) -> Result<(), CliError> {
    let text = if json_mode {
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    } else {
        human
    };
    emit(None, text.as_bytes())
}

/// Reports where an artifact went, once it is written to a file.
fn written(json_mode: bool, path: &Path, what: serde_json::Value, human: String) -> Result<(), CliError> {
    let mut v = what;
    v["written"] = json!(path.display().to_string());
    print(json_mode, v, format!("{human}; written to {}\n", path.display()))
}

fn to_json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{what} must be {n} comma-separated numbers")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{what} must be {n} comma-separated numbers")));
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let jm = cli.json;
    match cli.command {
        Command::Expand { system, format, output } => {
            let g = expansion(&system)?;
            let text = match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => g.to_json() + "\n",
                GraphFormat::Svg => svg::expansion_svg(&g),
            };
            emit(output.as_deref(), text.as_bytes())?;
            if let Some(p) = output {
                let v = json!({"system": g.system().name, "depth": system.depth,
                               "vertices": g.vertex_count(), "edges": g.edge_count()});
                let h = format!(
                    "{} at depth {}: {} vertices, {} edges",
                    g.system().name,
                    system.depth,
                    g.vertex_count(),
                    g.edge_count()
                );
                written(jm, &p, v, h)?;
            }
        }
        Command::Circles { system } => {
            let g = expansion(&system)?;
            let cs = circles(&g).map_err(usage)?;
            let mut h = format!("{} circles\n", cs.len());
            for c in &cs {
                let words: Vec<String> = c.edges.iter().map(|w| w.to_string()).collect();
                h.push_str(&format!("  {}\n", words.join(" ")));
            }
            print(jm, to_json(&cs), h)?;
        }
        Command::TreeOfCircles { system } => {
            let g = expansion(&system)?;
            let t = tree_of_circles(&g).map_err(usage)?;
            let degrees: std::collections::BTreeSet<usize> = (0..t.points.len()).map(|p| t.point_degree(p)).collect();
            let h = format!(
                "{} circles, {} cut points, tree: {}, cut-point degrees: {:?}\n",
                t.circles.len(),
                t.points.len(),
                t.is_tree(),
                degrees
            );
            print(jm, to_json(&t), h)?;
        }
        Command::DendriteOfCircles { system } => {
            let g = expansion(&system)?;
            let d = dendrite_of_circles(&g).map_err(usage)?;
            let circles = d
                .nodes
                .iter()
                .filter(|n| matches!(n, replacement::DendriteNode::Circle(_)))
                .count();
            let max_point = (0..d.nodes.len())
                .filter(|&k| matches!(d.nodes[k], replacement::DendriteNode::Point(_)))
                .map(|k| d.degree(k))
                .max()
                .unwrap_or(0);
            let h = format!(
                "{} nodes ({} circles), {} edges, tree: {}, max point degree: {}\n",
                d.nodes.len(),
                circles,
                d.edges.len(),
                d.is_tree(),
                max_point
            );
            print(jm, to_json(&d), h)?;
        }
        Command::Lamination {
            seed,
            generations,
            format,
            max_generations,
            size,
            output,
        } => {
            let seed: Seed = seed.parse().map_err(usage)?;
            if generations > max_generations {
                return Err(CliError::Usage(format!(
                    "{generations} generations exceed the cap of {max_generations}"
                )));
            }
            let lam = Lamination::generate(seed, generations).map_err(usage)?;
            let text = match format {
                LamFormat::Json => lam.to_json() + "\n",
                LamFormat::Svg => laminations::to_svg(&lam, size),
            };
            emit(output.as_deref(), text.as_bytes())?;
            if let Some(p) = output {
                let v = json!({"seed": seed.to_string(), "generation": generations, "leaves": lam.leaves().len()});
                let h = format!("{seed} generation {generations}: {} leaves", lam.leaves().len());
                written(jm, &p, v, h)?;
            }
        }
        Command::Julia {
            preset,
            c,
            params,
            max_iter,
            escape_radius,
            width,
            height,
            viewport,
            output,
        } => {
            let mut provenance = None;
            let mut p = if let Some(path) = params {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<JuliaParams>(&text).map_err(usage)?
            } else if let Some(c) = c {
                let v = parse_floats(&c, 2, "--c")?;
                JuliaParams::new(Complex64::new(v[0], v[1]))
            } else {
                let preset: Preset = preset.as_deref().unwrap_or("basilica").parse()?;
                let v = julia::preset_value(&preset);
                let p = JuliaParams::new(v.c());
                provenance = Some(v);
                p
            };
            if let Some(m) = max_iter {
                p.max_iter = m;
            }
            if let Some(r) = escape_radius {
                p.escape_radius = r;
            }
            if let Some(w) = width {
                p.width = w;
            }
            if let Some(h) = height {
                p.height = h;
            }
            if let Some(v) = viewport {
                let v = parse_floats(&v, 4, "--viewport")?;
                p.viewport = (v[0], v[1], v[2], v[3]);
            }
            let img = julia::render(&p)?;
            img.save_with_format(&output, image::ImageFormat::Png)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;
            let h = format!(
                "c = {} + {}i, {}x{}, max_iter {}{}",
                p.c.0,
                p.c.1,
                p.width,
                p.height,
                p.max_iter,
                provenance
                    .as_ref()
                    .map(|v| format!(" ({})", v.provenance))
                    .unwrap_or_default()
            );
            written(jm, &output, json!({"params": to_json(&p), "preset": provenance}), h)?;
        }
        Command::Verify {
            suite,
            budget,
            seed,
            fixture,
            report,
        } => {
            let budget = Budget::resolve(budget.as_deref())?;
            let fixture = fixture.as_deref().map(Fixture::resolve).transpose()?;
            let rep = suites::run_suite(suite, &budget, seed, fixture.as_ref());
            let text = serde_json::to_string_pretty(&rep).expect("serializable") + "\n";
            if let Some(p) = report {
                emit(Some(&p), text.as_bytes())?;
            }
            emit(None, if jm { text } else { rep.to_human() }.as_bytes())?;
            return Ok(if rep.passed {
                fractal_groups::EXIT_OK
            } else {
                fractal_groups::EXIT_FAILED
            });
        }
        Command::QiCheck { radius, cap, k } => {
            let t = TruncatedTree::new(TreeShape::infinite(), radius, cap).map_err(usage)?;
            let r = check_distortion(&t, k).map_err(usage)?;
            let s = QiSummary {
                radius,
                cap,
                k,
                vertices: r.vertices,
                pairs: r.pairs,
                distortion_violations: r.distortion_violations,
                basepoint_violations: r.basepoint_violations,
                odd_collisions: r.odd_collisions,
                edge_violations: r.edge_violations,
                passed: r.passed(),
            };
            let h = format!(
                "{} vertices, {} pairs: {} distortion, {} basepoint, {} collision, {} edge violations — {}\n",
                s.vertices,
                s.pairs,
                s.distortion_violations,
                s.basepoint_violations,
                s.odd_collisions,
                s.edge_violations,
                if s.passed { "PASS" } else { "FAIL" }
            );
            print(jm, to_json(&s), h)?;
            return Ok(if s.passed {
                fractal_groups::EXIT_OK
            } else {
                fractal_groups::EXIT_FAILED
            });
        }
    }
    Ok(fractal_groups::EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { fractal_groups::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let jm = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if jm {
                println!("{}", json!({"error": e.to_string(), "exit_code": e.exit_code()}));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
