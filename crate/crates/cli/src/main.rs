//! `ncmatch` command-line tool.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a
//! verification fails.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncmatch::blocking::{is_blocking, min_blocking_size, verify_blocking_structure, RemovalSet};
use ncmatch::extremal::{gen_convex, gen_example1, gen_example2, gen_g2, gen_small_hull, NamedConfig};
use ncmatch::geom::{EdgeRef, PointSet};
use ncmatch::ham_sandwich::{default_stop_threshold, recursive_subdivision};
use ncmatch::io::{format_edges, format_points, format_rational_points, parse_rational_points, read_edges, read_points};
use ncmatch::lab::{self, RemovalModel, RemovalSize, SampleRegion};
use ncmatch::lattice::{body_from_pairs, bounding_square, bounding_triangle_traced, contained_triangle, LatticeTriangle};
use ncmatch::matcher::{enumerate_ncpm, match_avoiding_few, match_avoiding_resilient, Matching, ResilientOutcome, ORACLE_LIMIT};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "ncmatch", version, about = "Non-crossing perfect matchings under edge removal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every non-crossing perfect matching, optionally avoiding a removal set.
    Oracle(OracleArgs),
    /// Find a matching that avoids a removal set.
    Solve(SolveArgs),
    /// Check a matching, or the structure of a blocking set.
    Verify(VerifyArgs),
    /// Exact minimum number of edges whose removal leaves no matching.
    Hmin(HminArgs),
    /// Generate a named configuration.
    Gen(GenArgs),
    /// Run a seeded Monte Carlo experiment.
    Lab(LabArgs),
    /// Lattice triangles around or inside a convex body.
    Lattice(LatticeArgs),
    /// Draw points, matching, removal set and subdivision cells as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    removal: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    removal: PathBuf,
    /// Use the subdivision pipeline instead of the direct construction.
    #[arg(long)]
    resilient: bool,
    /// Leaf size bound for --resilient (default: ceil(4 log2 2n)).
    #[arg(long)]
    threshold: Option<usize>,
    /// Write the matching as an edge list.
    #[arg(long)]
    matching: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["matching", "structure"])))]
struct VerifyArgs {
    #[arg(long)]
    points: PathBuf,
    /// Matching to check (perfect, non-crossing, avoids --removal).
    #[arg(long)]
    matching: Option<PathBuf>,
    /// Check the removal set against the blocking-set structure claims.
    #[arg(long)]
    structure: bool,
    #[arg(long)]
    removal: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HminArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GenKind {
    Convex,
    Example1,
    Example2,
    G2,
    SmallHull,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    #[arg(long)]
    n: usize,
    /// Hull size for small-hull.
    #[arg(long)]
    hull: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the point set.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Where to write the removal set, for configurations that have one.
    #[arg(long)]
    removal: Option<PathBuf>,
    /// JSON with points, removal, matchings and certificate.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Experiment {
    Resilience,
    Convexprob,
    Emptykgon,
    Hullcount,
    Oddsplit,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "snake_case")]
enum ModelArg {
    Uniform,
    SpanningTree,
    Star,
    HullBiased,
}

impl From<ModelArg> for RemovalModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Uniform => RemovalModel::Uniform,
            ModelArg::SpanningTree => RemovalModel::SpanningTree,
            ModelArg::Star => RemovalModel::Star,
            ModelArg::HullBiased => RemovalModel::HullBiased,
        }
    }
}

#[derive(Args, Debug)]
struct LabArgs {
    experiment: Experiment,
    /// Points per trial; resilience and oddsplit sample 2n points.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `square`, `disk`, or `poly FILE`.
    #[arg(long, num_args = 1..=2, default_values = ["square"])]
    region: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModelArg::Uniform)]
    model: ModelArg,
    /// Removal-set size for resilience (default: ceil(n + n / (3 log2 2n))).
    #[arg(long)]
    removal_size: Option<usize>,
    /// Polygon size for emptykgon.
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a CSV summary of the aggregates.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum LatticeOp {
    Bound,
    Inscribe,
    Square,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    op: LatticeOp,
    /// Convex body as exact `p/q r/s` vertices.
    #[arg(long)]
    body: PathBuf,
    /// Lattice resolution: points are (i/M, j/M).
    #[arg(long)]
    m: i64,
    /// Where to write the triangle (or square corners) as fractions.
    #[arg(long)]
    triangle: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    matching: Option<PathBuf>,
    #[arg(long)]
    removal: Option<PathBuf>,
    /// Tint the cells of the subdivision against the removal set.
    #[arg(long)]
    subdivision: bool,
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long)]
    svg: PathBuf,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Input(String),
    Verification(String),
}

impl From<ncmatch::Error> for Failure {
    fn from(e: ncmatch::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn input<T>(r: Result<T, impl std::fmt::Display>, path: &Path) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Run {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// Like `println!`, but a closed pipe is not an error.
fn print_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn emit(out: Option<&Path>, report: &Value) -> Run {
    let text = serde_json::to_string_pretty(report).expect("json");
    match out {
        Some(p) => write_file(p, &(text + "\n")),
        None => {
            print_stdout(&text);
            Ok(())
        }
    }
}

fn report(command: &str, config: Value, result: Value) -> Value {
    json!({ "command": command, "config": config, "result": result })
}

fn load_points(path: &Path) -> Result<PointSet, Failure> {
    input(read_points(path), path)
}

fn load_removal(path: &Path, n: usize) -> Result<RemovalSet, Failure> {
    let edges = input(read_edges(path), path)?;
    input(RemovalSet::for_points(edges, n), path)
}

fn load_optional_removal(path: Option<&PathBuf>, n: usize) -> Result<RemovalSet, Failure> {
    match path {
        Some(p) => load_removal(p, n),
        None => Ok(RemovalSet::new(Vec::new())?),
    }
}

fn edge_pairs(edges: &[EdgeRef]) -> Value {
    Value::from(edges.iter().map(|e| vec![e.i, e.j]).collect::<Vec<_>>())
}

fn path_value(p: Option<&PathBuf>) -> Value {
    p.map_or(Value::Null, |p| Value::from(p.display().to_string()))
}

fn oracle(a: &OracleArgs) -> Run {
    let ps = load_points(&a.points)?;
    let removal = load_optional_removal(a.removal.as_ref(), ps.len())?;
    let all = enumerate_ncpm(&ps)?;
    let kept: Vec<&Matching> = all.iter().filter(|m| m.edges().iter().all(|&e| !removal.contains(e))).collect();
    eprintln!("{} matchings ({} avoid the removal set)", all.len(), kept.len());
    let config = json!({ "points": a.points.display().to_string(), "removal": path_value(a.removal.as_ref()) });
    let result = json!({
        "total": all.len(),
        "count": kept.len(),
        "matchings": kept.iter().map(|m| edge_pairs(m.edges())).collect::<Vec<_>>(),
    });
    emit(a.out.as_deref(), &report("oracle", config, result))
}

fn solve(a: &SolveArgs) -> Run {
    let ps = load_points(&a.points)?;
    let removal = load_removal(&a.removal, ps.len())?;
    let threshold = a.threshold.unwrap_or_else(|| default_stop_threshold(ps.len()));
    let config = json!({
        "points": a.points.display().to_string(),
        "removal": a.removal.display().to_string(),
        "resilient": a.resilient,
        "threshold": a.resilient.then_some(threshold),
    });
    let (matching, extra) = if a.resilient {
        let outcome = match_avoiding_resilient(&ps, &removal, threshold)?;
        let tree = outcome.tree();
        let extra = json!({
            "leaves": tree.leaves().len(),
            "depth": tree.depth(),
            "violations": tree.violations(),
        });
        match outcome {
            ResilientOutcome::Matched { matching, .. } => (matching, extra),
            ResilientOutcome::LeafFailed { members, active_edges, .. } => {
                let result = json!({ "found": false, "failed_leaf": { "members": members, "active_edges": edge_pairs(&active_edges) }, "tree": extra });
                emit(a.out.as_deref(), &report("solve", config, result))?;
                return Err(Failure::Input(format!("no matching found in the cell {members:?}")));
            }
        }
    } else {
        (match_avoiding_few(&ps, &removal)?, Value::Null)
    };
    if let Err(d) = matching.validate(&ps, removal.edges()) {
        return Err(Failure::Verification(format!("internal check failed: {d}")));
    }
    if let Some(p) = &a.matching {
        write_file(p, &format_edges(matching.edges()))?;
    }
    if let Some(p) = &a.svg {
        write_file(p, &render::svg(&ps, Some(&matching), Some(&removal), None))?;
    }
    let result = json!({ "found": true, "matching": edge_pairs(matching.edges()), "tree": extra });
    emit(a.out.as_deref(), &report("solve", config, result))
}

fn verify(a: &VerifyArgs) -> Run {
    let ps = load_points(&a.points)?;
    let config = json!({
        "points": a.points.display().to_string(),
        "matching": path_value(a.matching.as_ref()),
        "structure": a.structure,
        "removal": path_value(a.removal.as_ref()),
    });
    if let Some(mp) = &a.matching {
        let removal = load_optional_removal(a.removal.as_ref(), ps.len())?;
        let edges = input(read_edges(mp), mp)?;
        let matching = Matching::new(edges);
        let verdict = matching.validate(&ps, removal.edges());
        let result = json!({ "valid": verdict.is_ok(), "defect": verdict.err().map(|d| d.to_string()) });
        emit(a.out.as_deref(), &report("verify", config, result))?;
        return match verdict {
            Ok(()) => Ok(()),
            Err(d) => Err(Failure::Verification(format!("invalid matching: {d}"))),
        };
    }
    let rp = a.removal.as_ref().ok_or_else(|| Failure::Input("--structure needs --removal".into()))?;
    let removal = load_removal(rp, ps.len())?;
    let rep = verify_blocking_structure(&ps, &removal)?;
    let blocking = if ps.len() <= ORACLE_LIMIT { Some(is_blocking(&ps, &removal)?) } else { None };
    let result = json!({ "all_hold": rep.all_hold(), "blocking": blocking, "report": rep });
    emit(a.out.as_deref(), &report("verify", config, result))?;
    if rep.all_hold() {
        Ok(())
    } else {
        Err(Failure::Verification("structure claims fail for this removal set".into()))
    }
}

fn hmin(a: &HminArgs) -> Run {
    let ps = load_points(&a.points)?;
    let r = min_blocking_size(&ps)?;
    let config = json!({ "points": a.points.display().to_string() });
    let result = json!({
        "min_blocking_size": r.min_blocking_size,
        "h": r.h,
        "witness": edge_pairs(r.witness.edges()),
        "matching_count": r.matching_count,
    });
    emit(a.out.as_deref(), &report("hmin", config, result))
}

fn generate(a: &GenArgs) -> Run {
    let config = json!({ "kind": a.kind, "n": a.n, "hull": a.hull, "seed": a.seed });
    let named: Option<NamedConfig> = match a.kind {
        GenKind::Convex => Some(gen_convex(a.n)?),
        GenKind::Example1 => Some(gen_example1(a.n)?),
        GenKind::Example2 => Some(gen_example2(a.n)?),
        GenKind::G2 => Some(gen_g2(a.n)?),
        GenKind::SmallHull => None,
    };
    let (ps, result) = match named {
        Some(cfg) => {
            let result = json!({
                "points": cfg.points.points().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
                "removal": cfg.removal.as_ref().map(|r| edge_pairs(r.edges())),
                "matchings": cfg.matchings.iter().map(|m| edge_pairs(m.edges())).collect::<Vec<_>>(),
                "certificate": cfg.certificate,
            });
            if let (Some(p), Some(r)) = (&a.removal, &cfg.removal) {
                write_file(p, &format_edges(r.edges()))?;
            }
            if !cfg.certificate.all_ok() {
                emit(a.out.as_deref(), &report("gen", config, result))?;
                return Err(Failure::Verification(format!("certificate fails: {}", cfg.certificate.failures())));
            }
            if let Some(p) = &a.svg {
                write_file(p, &render::svg(&cfg.points, cfg.matchings.first(), cfg.removal.as_ref(), None))?;
            }
            (cfg.points, result)
        }
        None => {
            let hull = a.hull.ok_or_else(|| Failure::Input("small-hull needs --hull".into()))?;
            let ps = gen_small_hull(a.n, hull, a.seed)?;
            let result = json!({ "points": ps.points().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>() });
            if let Some(p) = &a.svg {
                write_file(p, &render::svg(&ps, None, None, None))?;
            }
            (ps, result)
        }
    };
    if let Some(p) = &a.points {
        write_file(p, &format_points(ps.points()))?;
    }
    emit(a.out.as_deref(), &report("gen", config, result))
}

fn parse_region(words: &[String]) -> Result<SampleRegion, Failure> {
    match words {
        [w] if w == "square" => Ok(SampleRegion::square()),
        [w] if w == "disk" => Ok(SampleRegion::disk()),
        [w, file] if w == "poly" => {
            let path = Path::new(file);
            let ps = load_points(path)?;
            input(SampleRegion::polygon(ps.into_points()), path)
        }
        _ => Err(Failure::Input(format!("bad --region {words:?}: expected square, disk, or poly FILE"))),
    }
}

fn run_lab(a: &LabArgs) -> Run {
    let region = parse_region(&a.region)?;
    let rep = match a.experiment {
        Experiment::Resilience => {
            let size = a.removal_size.map_or(RemovalSize::Default, RemovalSize::Fixed);
            lab::resilience_experiment(&region, a.n, size, a.model.into(), a.trials, a.seed)?
        }
        Experiment::Convexprob => lab::convex_position_probability(&region, a.n, a.trials, a.seed)?,
        Experiment::Emptykgon => lab::empty_kgon_experiment(&region, a.n, a.k, a.trials, a.seed)?,
        Experiment::Hullcount => lab::hull_count_expectation(&region, a.n, a.trials, a.seed)?,
        Experiment::Oddsplit => lab::odd_split_statistics(&region, a.n, a.trials, a.seed)?,
    };
    if let Some(p) = &a.csv {
        write_file(p, &rep.to_csv())?;
    }
    for (k, s) in &rep.aggregates {
        eprintln!("{k}: {:.6} ± {:.6} (n = {})", s.mean, s.half_width, s.count);
    }
    let text = rep.to_json();
    match &a.out {
        Some(p) => write_file(p, &(text + "\n")),
        None => {
            print_stdout(&text);
            Ok(())
        }
    }
}

fn triangle_json(t: &LatticeTriangle) -> Value {
    json!({
        "m": t.m,
        "numerators": t.numerators,
        "area": t.area().to_string(),
    })
}

fn lattice(a: &LatticeArgs) -> Run {
    let text = fs::read_to_string(&a.body).map_err(|e| Failure::Input(format!("{}: {e}", a.body.display())))?;
    let body = input(parse_rational_points(&text).and_then(body_from_pairs), &a.body)?;
    let config = json!({ "op": a.op, "body": a.body.display().to_string(), "m": a.m });
    let (corners, result) = match a.op {
        LatticeOp::Bound => {
            let tr = bounding_triangle_traced(&body, a.m)?;
            let t = &tr.triangle;
            let ok = t.contains_body(&body);
            let result = json!({
                "triangle": triangle_json(t),
                "small_case": tr.small_case,
                "body_area": tr.body_area.to_string(),
                "contains_body": ok,
            });
            (t.vertices(), result)
        }
        LatticeOp::Inscribe => {
            let t = contained_triangle(&body, a.m)?;
            let inside = t.vertices().iter().all(|p| body.contains(p));
            let result = json!({
                "triangle": triangle_json(&t),
                "body_area": body.area().to_string(),
                "inside_body": inside,
            });
            (t.vertices(), result)
        }
        LatticeOp::Square => {
            let sq = bounding_square(&body, a.m)?;
            let result = json!({ "square": sq });
            (sq.corners().to_vec(), result)
        }
    };
    if let Some(p) = &a.triangle {
        let pairs: Vec<_> = corners.into_iter().map(|q| (q.x, q.y)).collect();
        write_file(p, &format_rational_points(&pairs))?;
    }
    emit(a.out.as_deref(), &report("lattice", config, result))
}

fn run_render(a: &RenderArgs) -> Run {
    let ps = load_points(&a.points)?;
    let removal = a.removal.as_ref().map(|p| load_removal(p, ps.len())).transpose()?;
    let matching = match &a.matching {
        Some(p) => Some(Matching::new(input(read_edges(p), p)?)),
        None => None,
    };
    let tree = if a.subdivision {
        let forbidden = removal.as_ref().map_or(&[][..], |r| r.edges());
        let t = a.threshold.unwrap_or_else(|| default_stop_threshold(ps.len()));
        Some(recursive_subdivision(&ps, forbidden, t)?)
    } else {
        None
    };
    write_file(&a.svg, &render::svg(&ps, matching.as_ref(), removal.as_ref(), tree.as_ref()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Oracle(a) => oracle(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Hmin(a) => hmin(a),
        Command::Gen(a) => generate(a),
        Command::Lab(a) => run_lab(a),
        Command::Lattice(a) => lattice(a),
        Command::Render(a) => run_render(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
