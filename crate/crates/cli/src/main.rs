//! Command-line front end: traces chord chains, evaluates the closure
//! criterion, solves the inscribed-polygon problem, emits right-angled
//! polygon and dodecahedron scenes, and renders SVG figures.
//!
//! Reports are single-line JSON on stdout with numbers in the same
//! 17-significant-digit form the scene files use, so identical inputs give
//! byte-identical output. Errors are single-line JSON on stderr. Exit codes:
//! 0 when the scene is satisfied/solved, 1 when it is not, 2 on input
//! errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use porism_core::castillon::{holonomy, solve, CastillonOutcome};
use porism_core::moebius::{classify, fixed_points, MoebiusClass};
use porism_core::porism::{butterfly_check, fourth_point, pair_condition, trace_chain, ChordChain};
use porism_core::scene::{load_scene, num, save_cycles, save_scene, CycleFixture, Pivots, Scene,
    SceneMode, Start};
use porism_core::sphere::{
    find_closed_cycles, right_angle_scale, right_angled_dodecahedron, sphere_trace, SphereChain,
    SpherePoint,
};
use porism_core::svg::{render_svg, Figure};
use porism_core::{Circle, CirclePoint, Error, Point2, Tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "porism", version, about = "Chord-chain porisms and inscribed polygons")]
struct Cli {
    /// Geometric tolerance: incidence and closure checks. Overrides the
    /// scene's own value when given.
    #[arg(long, global = true)]
    tol_geom: Option<f64>,
    /// Algebraic tolerance: matrix and cross-ratio comparisons. Overrides
    /// the scene's own value when given.
    #[arg(long, global = true)]
    tol_alg: Option<f64>,
    /// Seed for randomized verification samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the chord chain of a scene: vertices, defect, closure verdict.
    Trace {
        #[arg(long)]
        scene: PathBuf,
        /// Start angle in radians (circle scenes only); defaults to the
        /// scene's start, then to 0.
        #[arg(long)]
        start: Option<f64>,
        /// Also render the figure to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evaluate the three-case closure criterion and the boundary-map
    /// condition for a four-pivot circle scene.
    Check {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Solve the inscribed-polygon problem for the scene's pivots.
    Castillon {
        #[arg(long)]
        scene: PathBuf,
        /// Also report holonomy class and chains traced from its boundary
        /// fixed points, without any solvability filtering. Records what
        /// the solver deliberately does not claim (e.g. orientation-
        /// reversing holonomies of odd exterior pivot rows).
        #[arg(long)]
        experiment: bool,
    },
    /// Complete pivots p, q, s (indices into the scene's pivots) to the
    /// quadruple (p, q, r, s) that closes from every start.
    FourthPoint {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        s: usize,
    },
    /// Emit a scene whose pivots are the vertices of the right-angled
    /// n-gon in the unit disk.
    Polygon {
        #[arg(long)]
        n: usize,
        /// Write the scene here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the right-angled dodecahedron: scale, vertices and, on request,
    /// certified closed pivot cycles.
    Dodecahedron {
        /// Search closed cycles up to this (even) number of pivots.
        #[arg(long)]
        cycles: Option<usize>,
        /// Write the fixture here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Anything that should terminate the run with exit code 2.
enum Failure {
    Core(Error),
    Io { path: PathBuf, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> &str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Io { .. } => "IoError",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
        }
    }
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Emits `text` to `out` when given, else to stdout.
fn deliver(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validated_tol(value: Option<f64>, fallback: f64, field: &str) -> Result<f64, Failure> {
    match value {
        None => Ok(fallback),
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(Failure::Core(Error::ValidationError {
            field: field.to_string(),
            message: format!("tolerance must be a positive finite number, got {t}"),
        })),
    }
}

/// The scene's tolerances with any command-line overrides applied.
fn resolve_tol(cli: &Cli, scene: Option<&Scene>) -> Result<Tol, Failure> {
    let base = scene.map(|s| s.tol).unwrap_or(Tol { geom: 1e-9, alg: 1e-12 });
    Ok(Tol {
        geom: validated_tol(cli.tol_geom, base.geom, "tol_geom")?,
        alg: validated_tol(cli.tol_alg, base.alg, "tol_alg")?,
    })
}

fn load(path: &Path) -> Result<Scene, Failure> {
    Ok(load_scene(&read_file(path)?)?)
}

fn point_json(p: Point2) -> String {
    format!("[{},{}]", num(p.x), num(p.y))
}

fn circle_vertices_json(c: &Circle, chain: &ChordChain) -> String {
    let pts: Vec<String> = chain.vertices.iter().map(|&v| point_json(c.point_at(v))).collect();
    format!("[{}]", pts.join(","))
}

fn sphere_vertices_json(chain: &SphereChain) -> String {
    let pts: Vec<String> = chain
        .vertices
        .iter()
        .map(|v| {
            let p = v.point();
            format!("[{},{},{}]", num(p.x), num(p.y), num(p.z))
        })
        .collect();
    format!("[{}]", pts.join(","))
}

fn closure_gate(tol: &Tol) -> f64 {
    tol.geom.max(1e-9)
}

fn cmd_trace(
    cli: &Cli,
    path: &Path,
    start: Option<f64>,
    svg: Option<&Path>,
) -> Result<u8, Failure> {
    let scene = load(path)?;
    let tol = resolve_tol(cli, Some(&scene))?;
    match scene.mode {
        SceneMode::Circle => {
            let pivots = scene.planar_pivots()?.to_vec();
            let th = match (start, &scene.start) {
                (Some(th), _) => th,
                (None, Some(Start::Angle(a))) => a.theta(),
                (None, _) => 0.0,
            };
            if !th.is_finite() {
                return Err(Failure::Core(Error::ValidationError {
                    field: "start".to_string(),
                    message: "start angle must be finite".to_string(),
                }));
            }
            let chain = trace_chain(&scene.circle, CirclePoint::new(th), &pivots, &tol)?;
            let closed = chain.defect <= closure_gate(&tol);
            println!(
                "{{\"mode\":\"circle\",\"start\":{},\"defect\":{},\"closed\":{},\"vertices\":{}}}",
                num(chain.start.theta()),
                num(chain.defect),
                closed,
                circle_vertices_json(&scene.circle, &chain),
            );
            if let Some(svg_path) = svg {
                let verdict = format!(
                    "{} (defect {:.2e})",
                    if closed { "closed" } else { "open" },
                    chain.defect
                );
                let fig =
                    Figure { chain: Some(chain), sphere_chain: None, verdict: Some(verdict) };
                write_file(svg_path, &render_svg(&scene, &fig))?;
            }
            Ok(if closed { 0 } else { 1 })
        }
        SceneMode::Sphere => {
            if start.is_some() {
                return Err(Failure::Core(Error::ValidationError {
                    field: "start".to_string(),
                    message: "--start takes an angle; sphere scenes carry their own start direction"
                        .to_string(),
                }));
            }
            let pivots = scene.spatial_pivots()?.to_vec();
            let origin = match &scene.start {
                Some(Start::Direction(d)) => *d,
                _ => SpherePoint::new(porism_core::sphere::Point3::new(1.0, 0.0, 0.0))
                    .expect("unit axis"),
            };
            let chain = sphere_trace(origin, &pivots, &tol)?;
            let closed = chain.defect <= 1e-8_f64.max(tol.geom);
            let sp = chain.start.point();
            println!(
                "{{\"mode\":\"sphere\",\"start\":[{},{},{}],\"defect\":{},\"closed\":{},\"vertices\":{}}}",
                num(sp.x),
                num(sp.y),
                num(sp.z),
                num(chain.defect),
                closed,
                sphere_vertices_json(&chain),
            );
            if let Some(svg_path) = svg {
                let verdict = format!(
                    "{} (defect {:.2e})",
                    if closed { "closed" } else { "open" },
                    chain.defect
                );
                let fig =
                    Figure { chain: None, sphere_chain: Some(chain), verdict: Some(verdict) };
                write_file(svg_path, &render_svg(&scene, &fig))?;
            }
            Ok(if closed { 0 } else { 1 })
        }
    }
}

fn require_line(scene: &Scene) -> Result<porism_core::Line2, Failure> {
    scene.line.ok_or_else(|| {
        Failure::Core(Error::ValidationError {
            field: "line".to_string(),
            message: "this command needs the scene's support line".to_string(),
        })
    })
}

fn cmd_check(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let scene = load(path)?;
    let tol = resolve_tol(cli, Some(&scene))?;
    let pivots = scene.planar_pivots()?;
    if pivots.len() != 4 {
        return Err(Failure::Core(Error::ValidationError {
            field: "pivots".to_string(),
            message: format!("the closure check takes exactly 4 pivots, got {}", pivots.len()),
        }));
    }
    let l = require_line(&scene)?;
    let (p, q, r, s) = (pivots[0], pivots[1], pivots[2], pivots[3]);
    let report = butterfly_check(&scene.circle, &l, p, q, r, s, &tol)?;
    let pair = pair_condition(&scene.circle, p, q, r, s, &tol)?;
    let witness = match report.witness {
        Some(w) => point_json(w),
        None => "null".to_string(),
    };
    println!(
        "{{\"case\":\"{}\",\"lhs\":{},\"rhs\":{},\"satisfied\":{},\"witness\":{},\"pair_condition\":{}}}",
        report.case.name(),
        num(report.lhs),
        num(report.rhs),
        report.satisfied,
        witness,
        pair,
    );
    Ok(if report.satisfied && pair { 0 } else { 1 })
}

fn class_name(class: &MoebiusClass) -> &'static str {
    match class {
        MoebiusClass::Identity => "identity",
        MoebiusClass::Elliptic { .. } => "elliptic",
        MoebiusClass::Parabolic => "parabolic",
        MoebiusClass::Hyperbolic { .. } => "hyperbolic",
        MoebiusClass::Reversing => "reversing",
    }
}

fn chain_json(c: &Circle, chain: &ChordChain) -> String {
    format!(
        "{{\"start\":{},\"defect\":{},\"vertices\":{}}}",
        num(chain.start.theta()),
        num(chain.defect),
        circle_vertices_json(c, chain),
    )
}

fn cmd_castillon(cli: &Cli, path: &Path, experiment: bool) -> Result<u8, Failure> {
    let scene = load(path)?;
    let tol = resolve_tol(cli, Some(&scene))?;
    let pivots = scene.planar_pivots()?.to_vec();
    if pivots.is_empty() {
        return Err(Failure::Core(Error::ValidationError {
            field: "pivots".to_string(),
            message: "the solver needs at least one pivot".to_string(),
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let outcome = solve(&scene.circle, &pivots, &tol, &mut rng)?;

    let mut experiment_field = String::new();
    if experiment {
        let m = holonomy(&scene.circle, &pivots, &tol)?;
        let class = classify(&m, tol.geom);
        let mut traced = Vec::new();
        if let Ok(fixed) = fixed_points(&m, tol.geom) {
            for f in fixed {
                let chain = trace_chain(&scene.circle, f, &pivots, &tol)?;
                traced.push(chain_json(&scene.circle, &chain));
            }
        }
        experiment_field = format!(
            ",\"experiment\":{{\"holonomy_class\":\"{}\",\"holonomy_det\":{},\"fixed_chains\":[{}]}}",
            class_name(&class),
            num(m.det()),
            traced.join(","),
        );
    }

    let (body, code) = match &outcome {
        CastillonOutcome::NoSolution => ("\"outcome\":\"no_solution\"".to_string(), 1),
        CastillonOutcome::Finite { solutions } => {
            let chains: Vec<String> =
                solutions.iter().map(|s| chain_json(&scene.circle, s)).collect();
            (
                format!("\"outcome\":\"finite\",\"solutions\":[{}]", chains.join(",")),
                0,
            )
        }
        CastillonOutcome::Porism { verified_starts } => {
            let starts: Vec<String> = verified_starts.iter().map(|s| num(s.theta())).collect();
            (
                format!("\"outcome\":\"porism\",\"verified_starts\":[{}]", starts.join(",")),
                0,
            )
        }
    };
    println!("{{{body}{experiment_field}}}");
    Ok(code)
}

fn pivot_at(pivots: &[Point2], index: usize, field: &str) -> Result<Point2, Failure> {
    pivots.get(index).copied().ok_or_else(|| {
        Failure::Core(Error::ValidationError {
            field: field.to_string(),
            message: format!("pivot index {index} out of range (scene has {})", pivots.len()),
        })
    })
}

fn cmd_fourth_point(cli: &Cli, path: &Path, pi: usize, qi: usize, si: usize) -> Result<u8, Failure> {
    let scene = load(path)?;
    let tol = resolve_tol(cli, Some(&scene))?;
    let pivots = scene.planar_pivots()?;
    let l = require_line(&scene)?;
    let p = pivot_at(pivots, pi, "p")?;
    let q = pivot_at(pivots, qi, "q")?;
    let s = pivot_at(pivots, si, "s")?;
    let r = fourth_point(&scene.circle, &l, p, q, s, &tol)?;
    println!("{{\"r\":{}}}", point_json(r));
    Ok(0)
}

fn cmd_polygon(cli: &Cli, n: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let tol = resolve_tol(cli, None)?;
    let circle = Circle::unit();
    let vertices = porism_core::hyperbolic::right_angled_polygon(&circle, n, &tol)?;
    let scene = Scene {
        mode: SceneMode::Circle,
        circle,
        line: None,
        pivots: Pivots::Planar(vertices),
        start: None,
        tol,
    };
    deliver(out, &save_scene(&scene))?;
    Ok(0)
}

fn cmd_dodecahedron(cli: &Cli, cycles: Option<usize>, out: Option<&Path>) -> Result<u8, Failure> {
    let tol = resolve_tol(cli, None)?;
    let vertices = right_angled_dodecahedron();
    let found = match cycles {
        None => Vec::new(),
        Some(max_len) => {
            if max_len < 2 || max_len % 2 != 0 {
                return Err(Failure::Core(Error::ValidationError {
                    field: "cycles".to_string(),
                    message: format!("cycle length bound must be even and >= 2, got {max_len}"),
                }));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            find_closed_cycles(&vertices, max_len, &tol, &mut rng)?
        }
    };
    let fixture = CycleFixture { scale: right_angle_scale(), vertices, cycles: found };
    deliver(out, &save_cycles(&fixture))?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Trace { scene, start, svg } => cmd_trace(cli, scene, *start, svg.as_deref()),
        Command::Check { scene } => cmd_check(cli, scene),
        Command::Castillon { scene, experiment } => cmd_castillon(cli, scene, *experiment),
        Command::FourthPoint { scene, p, q, s } => cmd_fourth_point(cli, scene, *p, *q, *s),
        Command::Polygon { n, out } => cmd_polygon(cli, *n, out.as_deref()),
        Command::Dodecahedron { cycles, out } => cmd_dodecahedron(cli, *cycles, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!(
                "{{\"error\":\"{}\",\"message\":\"{}\"}}",
                failure.code(),
                escape_json(&failure.message()),
            );
            ExitCode::from(2)
        }
    }
}
