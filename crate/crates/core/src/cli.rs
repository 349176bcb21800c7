//! Command-line front end. Every subcommand is also callable as a library
//! function so tests can drive it without a process.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{check_general_position_exact, XPoint};
use crate::geom::{check_general_position, Family, Homothet, Kind, Orientation, Point, Shape};
use crate::greedy::greedy_on_tree;
use crate::io::{parse_matching, parse_points, parse_points_exact, write_matching, write_points};
use crate::matching::{Engine, StrongMatching};
use crate::recursive::{
    square_container, strong_match_square_recursive, strong_match_theta_recursive, triangle_container,
};
use crate::spanning::mst;
use crate::verify::{check_bound, verify_strong, verify_strong_exact, Certificate};
use crate::{graphs, svg};

#[derive(Parser)]
#[command(name = "strong-match", version, about = "Strong matchings in shape-Delaunay graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ShapeArg {
    Disk,
    TriDown,
    TriUp,
    Theta6,
    Square,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Disk => Shape::Disk,
            ShapeArg::TriDown => Shape::TriDown,
            ShapeArg::TriUp => Shape::TriUp,
            ShapeArg::Theta6 => Shape::Theta6,
            ShapeArg::Square => Shape::Square,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EngineArg {
    Greedy,
    Recursive,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Greedy => Engine::Greedy,
            EngineArg::Recursive => Engine::Recursive,
        }
    }
}

#[derive(Args, Clone, Copy)]
pub struct Algo {
    #[arg(long, value_enum, default_value = "disk")]
    pub shape: ShapeArg,
    #[arg(long, value_enum, default_value = "greedy")]
    pub engine: EngineArg,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Uniform random points in the unit square, in general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// General-position rules to enforce.
        #[arg(long, value_enum, default_value = "disk")]
        shape: ShapeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match a point file and print a JSON report.
    Run {
        points: PathBuf,
        #[command(flatten)]
        algo: Algo,
        /// Verify with exact arithmetic on the decimal input.
        #[arg(long)]
        exact: bool,
        /// Matching file to write.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Include wall time in the report (makes it nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Run seeded instances and print an aggregate.
    Batch {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        algo: Algo,
        /// Per-instance JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Render points and an optional matching.
    Svg {
        points: PathBuf,
        matching: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a matching file against a point file.
    Verify {
        points: PathBuf,
        matching: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Graph sizes and spanning-tree diagnostics.
    Stats {
        points: PathBuf,
        #[arg(long, value_enum, default_value = "disk")]
        shape: ShapeArg,
    },
}

/// One engine run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub id: usize,
    pub seed: Option<u64>,
    pub n: usize,
    pub shape: &'static str,
    pub engine: &'static str,
    pub size: usize,
    pub bound: usize,
    pub influence_number: usize,
    pub max_minimal_degree: usize,
    pub conjecture_gap: bool,
    pub general_position: bool,
    pub disjointness: &'static str,
    pub verdict: &'static str,
    pub failures: usize,
    pub boundary_contacts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.verdict == "pass" && self.size >= self.bound
    }
}

pub struct Outcome {
    pub report: RunReport,
    pub matching: StrongMatching,
    pub certificate: Certificate,
}


/// `n` points in `[0, 1]²` rounded to nine decimals, redrawn until they
/// are in general position for `family`.
pub fn gen_points(n: usize, seed: u64, family: Family) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || (rng.gen::<f64>() * 1e9).round() / 1e9;
    loop {
        let pts: Vec<Point> = (0..n).map(|_| Point::new(draw(), draw())).collect();
        if check_general_position(&pts, family).ok() {
            return pts;
        }
    }
}

/// Instance size for batch seed `seed`, drawn from its own stream.
pub fn batch_size(seed: u64, n_min: usize, n_max: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng.gen_range(n_min..=n_max.max(n_min))
}

/// Tree family used for diagnostics and by the greedy engine.
fn tree_kind(shape: Shape) -> Kind {
    shape.kinds()[0]
}

/// Matching plus the container the recursive engine worked in.
pub fn run_engine(points: &[Point], shape: Shape, engine: Engine) -> Result<(StrongMatching, Option<Homothet>)> {
    match engine {
        Engine::Greedy => {
            let tree = mst(points, tree_kind(shape))?;
            let mut m = greedy_on_tree(&tree);
            m.shape = shape;
            Ok((m, None))
        }
        Engine::Recursive => match shape {
            Shape::Disk => Err(Error::Unsupported("recursive engine with disks".into())),
            Shape::Square => {
                let c = square_container(points);
                Ok((strong_match_square_recursive(points, &c)?, Some(c.into())))
            }
            Shape::TriDown | Shape::TriUp | Shape::Theta6 => {
                let orient = if shape == Shape::TriDown { Orientation::Down } else { Orientation::Up };
                let c = triangle_container(points, orient);
                Ok((strong_match_theta_recursive(points, &c)?, Some(c.into())))
            }
        },
    }
}

pub fn run_points(
    points: &[Point],
    exact: Option<&[XPoint]>,
    shape: Shape,
    engine: Engine,
    id: usize,
    seed: Option<u64>,
    timing: bool,
) -> Result<Outcome> {
    let start = Instant::now();
    let n = points.len();
    let bound = check_bound(n, shape, engine)?;
    let (matching, container) = run_engine(points, shape, engine)?;
    let wall = start.elapsed().as_secs_f64() * 1e3;
    let certificate = match exact {
        Some(x) => verify_strong_exact(x, &matching, matching.mode, container.as_ref()),
        None => verify_strong(points, &matching, matching.mode, container.as_ref()),
    };
    let diag = mst(points, tree_kind(shape))?.diagnostics();
    let general_position = match exact {
        Some(x) => check_general_position_exact(x, shape.family()).ok(),
        None => check_general_position(points, shape.family()).ok(),
    };
    let report = RunReport {
        id,
        seed,
        n,
        shape: shape.name(),
        engine: engine.name(),
        size: matching.len(),
        bound,
        influence_number: diag.influence_number,
        max_minimal_degree: diag.max_minimal_degree,
        conjecture_gap: diag.conjecture_gap,
        general_position,
        disjointness: matching.mode.name(),
        verdict: if certificate.pass { "pass" } else { "fail" },
        failures: certificate.failures.len(),
        boundary_contacts: certificate.boundary_contacts,
        wall_ms: timing.then_some(wall),
    };
    Ok(Outcome { report, matching, certificate })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub count: usize,
    pub shape: &'static str,
    pub engine: &'static str,
    pub min_size: Option<usize>,
    pub mean_size: Option<f64>,
    /// Smallest `size - bound` over the runs.
    pub min_slack: Option<i64>,
    pub max_influence_number: Option<usize>,
    pub bound_violations: usize,
    pub verify_failures: usize,
    pub conjecture_violations: usize,
    pub errors: usize,
}

impl BatchSummary {
    pub fn ok(&self) -> bool {
        self.bound_violations == 0 && self.verify_failures == 0 && self.errors == 0
    }
}

/// Runs `count` instances with seeds `seed0, seed0 + 1, ...`; results are
/// in seed order regardless of scheduling.
pub fn run_batch(
    count: usize,
    n_min: usize,
    n_max: usize,
    seed0: u64,
    shape: Shape,
    engine: Engine,
    timing: bool,
) -> (Vec<Result<RunReport>>, BatchSummary) {
    let runs: Vec<Result<RunReport>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let seed = seed0.wrapping_add(k as u64);
            let n = batch_size(seed, n_min, n_max);
            let pts = gen_points(n, seed, shape.family());
            run_points(&pts, None, shape, engine, k, Some(seed), timing).map(|o| o.report)
        })
        .collect();
    let ok: Vec<&RunReport> = runs.iter().filter_map(|r| r.as_ref().ok()).collect();
    let summary = BatchSummary {
        count,
        shape: shape.name(),
        engine: engine.name(),
        min_size: ok.iter().map(|r| r.size).min(),
        mean_size: (!ok.is_empty()).then(|| ok.iter().map(|r| r.size as f64).sum::<f64>() / ok.len() as f64),
        min_slack: ok.iter().map(|r| r.size as i64 - r.bound as i64).min(),
        max_influence_number: ok.iter().map(|r| r.influence_number).max(),
        bound_violations: ok.iter().filter(|r| r.size < r.bound).count(),
        verify_failures: ok.iter().filter(|r| r.verdict != "pass").count(),
        conjecture_violations: ok.iter().filter(|r| r.conjecture_gap).count(),
        errors: runs.len() - ok.len(),
    };
    (runs, summary)
}

#[derive(Serialize)]
struct ShapeStats {
    shape: &'static str,
    graph_edges: usize,
    tree_weight: f64,
    influence_number: usize,
    max_minimal_degree: usize,
    conjecture_gap: bool,
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    general_position: bool,
    violations: usize,
    shapes: Vec<ShapeStats>,
}

pub fn stats(points: &[Point], shape: Shape) -> Result<String> {
    let gp = check_general_position(points, shape.family());
    let mut shapes = Vec::new();
    for &kind in shape.kinds() {
        let tree = mst(points, kind)?;
        let d = tree.diagnostics();
        shapes.push(ShapeStats {
            shape: Shape::from(kind).name(),
            graph_edges: graphs::build(points, kind.into()).edges.len(),
            tree_weight: tree.edges.iter().map(|e| e.key.weight).sum(),
            influence_number: d.influence_number,
            max_minimal_degree: d.max_minimal_degree,
            conjecture_gap: d.conjecture_gap,
        });
    }
    let s = Stats { n: points.len(), general_position: gp.ok(), violations: gp.violations.len(), shapes };
    Ok(serde_json::to_string(&s).expect("serializable"))
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Exit code for an error: 2 for bad input, 1 for a failed run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::Unsupported(_)
        | Error::Mismatch(_)
        | Error::DegeneratePair(..)
        | Error::OutsideContainer(_)
        | Error::OracleCap { .. } => 2,
        _ => 1,
    }
}

/// Runs a parsed command; returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen { n, seed, shape, out } => {
            let pts = gen_points(n, seed, Shape::from(shape).family());
            emit(out.as_deref(), &write_points(&pts))?;
            Ok(0)
        }
        Cmd::Run { points, algo, exact, out, svg: svg_out, timing } => {
            let text = read(&points)?;
            let pts = parse_points(&text)?;
            let xs = if exact { Some(parse_points_exact(&text)?) } else { None };
            let o = run_points(&pts, xs.as_deref(), algo.shape.into(), algo.engine.into(), 0, None, timing)?;
            if let Some(p) = out {
                fs::write(p, write_matching(&o.matching))?;
            }
            if let Some(p) = svg_out {
                fs::write(p, svg::render(&pts, Some(&o.matching))?)?;
            }
            println!("{}", json(&o.report));
            Ok(if o.report.ok() { 0 } else { 1 })
        }
        Cmd::Batch { count, n_min, n_max, seed, algo, out, timing } => {
            let (runs, summary) =
                run_batch(count, n_min, n_max, seed, algo.shape.into(), algo.engine.into(), timing);
            if let Some(p) = out {
                let mut text = String::new();
                for (k, r) in runs.iter().enumerate() {
                    let line = match r {
                        Ok(rep) => json(rep),
                        Err(e) => json(&serde_json::json!({ "id": k, "error": e.to_string() })),
                    };
                    text.push_str(&line);
                    text.push('\n');
                }
                fs::write(p, text)?;
            }
            println!("{}", json(&summary));
            Ok(if summary.ok() { 0 } else { 1 })
        }
        Cmd::Svg { points, matching, out } => {
            let pts = parse_points(&read(&points)?)?;
            let m = match matching {
                Some(p) => Some(parse_matching(&read(&p)?)?),
                None => None,
            };
            emit(out.as_deref(), &svg::render(&pts, m.as_ref())?)?;
            Ok(0)
        }
        Cmd::Verify { points, matching, exact } => {
            let text = read(&points)?;
            let m = parse_matching(&read(&matching)?)?;
            let cert = if exact {
                verify_strong_exact(&parse_points_exact(&text)?, &m, m.mode, None)
            } else {
                verify_strong(&parse_points(&text)?, &m, m.mode, None)
            };
            println!("{}", json(&cert));
            Ok(if cert.pass { 0 } else { 1 })
        }
        Cmd::Stats { points, shape } => {
            let pts = parse_points(&read(&points)?)?;
            println!("{}", stats(&pts, shape.into())?);
            Ok(0)
        }
    }
}

/// Parses `args` and runs; errors are printed to stderr.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
