//! The `stablevol` command line tool.
//!
//! Exit codes: 0 success, 1 other failure, 2 unparsable input or flags,
//! 3 degenerate geometry, 4 missing or ambiguous pair, 5 pair never dies.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alpha::{alpha_filtration, AlphaError, PointCloud};
use crate::baselines::{
    bandwidth_k_index, default_k_index, reconstructed_shortest_cycle, statistical_frequencies,
    EdgeWeight, NoiseModel, StatError,
};
use crate::complex::OrderWithLevel;
use crate::dualgraph::{
    build_dual_graph, compute_tree, optimal_volume_tree, stable_volume_tree, sweep_sizes,
    DualGraphError, PersistenceTree,
};
use crate::fixtures;
use crate::io::{
    format_pointcloud, format_sweep, parse_complex, parse_grid, parse_pointcloud, FrequencyDocument,
    IoError, VolumeDocument,
};
use crate::optvol::{
    lp_volume, make_problem, round_support, solve_lp, OptVolError, VolumeMode, DEFAULT_THRESHOLD,
};
use crate::persistence::{diagram, reduce, Diagram, PersistencePair};

#[derive(Parser, Debug)]
#[command(name = "stablevol", version, about = "Persistence diagrams, optimal and stable volumes")]
pub struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "STABLEVOL_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Persistence diagrams of an alpha filtration or a filtered complex.
    Pd(PdArgs),
    /// Optimal, stable or sub-volume of one pair.
    Vol(VolArgs),
    /// Stable volume size over a grid of epsilon values (TSV).
    Sweep(SweepArgs),
    /// Point frequencies on optimal cycles under resampled noise.
    Stat(StatArgs),
    /// Reconstructed shortest cycle of a degree-1 pair.
    Rsc(RscArgs),
    /// Write a built-in point cloud.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Point cloud (2 or 3 columns, whitespace or comma separated) or a
    /// complex as `.json` with `simplices` and `levels`.
    pub input: PathBuf,
    /// Use squared alpha radii as levels.
    #[arg(long)]
    pub squared: bool,
    /// Output file; stdout when absent.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Homology degree; defaults to one less than the top dimension.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Index into the degree's diagram, sorted by (birth, death).
    #[arg(long)]
    pub pair_index: Option<usize>,
    /// Birth level of the pair (with --death).
    #[arg(long, requires = "death")]
    pub birth: Option<f64>,
    /// Death level of the pair (with --birth).
    #[arg(long, requires = "birth")]
    pub death: Option<f64>,
    /// Match tolerance for --birth/--death.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// The pair of largest persistence.
    #[arg(long)]
    pub largest: bool,
}

#[derive(Args, Debug)]
pub struct PdArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Degrees to report; all when absent.
    #[arg(long)]
    pub degree: Vec<usize>,
    /// Also write `degree<TAB>birth<TAB>death` rows here.
    #[arg(long)]
    pub tsv: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolMethod {
    /// Tree volume for codimension-one pairs, LP otherwise.
    Optimal,
    OptimalLp,
    StableTree,
    StableLp,
    Sub,
}

#[derive(Args, Debug)]
pub struct VolArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = VolMethod::Optimal)]
    pub method: VolMethod,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// LP coefficients at or below this are rounded to zero.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMethod {
    StableTree,
    StableLp,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Grid as `start:stop:step`.
    #[arg(long)]
    pub epsilon_grid: String,
    #[arg(long, value_enum, default_value_t = SweepMethod::StableTree)]
    pub method: SweepMethod,
}

#[derive(Args, Debug)]
pub struct StatArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Half width of the uniform noise per coordinate.
    #[arg(long, default_value_t = 0.03)]
    pub noise: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RscArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Rank of the last simplex of the complex the loop lives in.
    #[arg(long, conflicts_with = "bandwidth")]
    pub k_index: Option<usize>,
    /// Use the last rank with level at most birth + this value.
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Weigh edges by length instead of counting them.
    #[arg(long)]
    pub euclidean: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// One of fig1-five-points, lattice-3x3x3, lattice-2d-defects,
    /// hexagon, annulus.
    pub name: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match &e {
            IoError::Alpha(a) => alpha_code(a, e.to_string()),
            _ => CliError::new(2, e.to_string()),
        }
    }
}

fn alpha_code(a: &AlphaError, msg: String) -> CliError {
    match a {
        AlphaError::Degenerate(_) | AlphaError::NotDelaunay(_) => CliError::new(3, msg),
        AlphaError::UnsupportedDimension(_) | AlphaError::NonFinite { .. } => CliError::new(2, msg),
        AlphaError::Order(_) => CliError::new(1, msg),
    }
}

impl From<AlphaError> for CliError {
    fn from(e: AlphaError) -> Self {
        let msg = e.to_string();
        alpha_code(&e, msg)
    }
}

impl From<DualGraphError> for CliError {
    fn from(e: DualGraphError) -> Self {
        let code = match e {
            DualGraphError::Condition { .. } | DualGraphError::Empty => 3,
            DualGraphError::StarPair => 5,
            DualGraphError::PairNotFound => 4,
            DualGraphError::BadEpsilon(_) => 2,
            DualGraphError::Degree { .. } => 1,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<OptVolError> for CliError {
    fn from(e: OptVolError) -> Self {
        let code = match e {
            OptVolError::StarPair => 5,
            OptVolError::BadEpsilon(_) => 2,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<StatError> for CliError {
    fn from(e: StatError) -> Self {
        match e {
            StatError::Alpha(a) => a.into(),
            StatError::StarTarget => CliError::new(5, e.to_string()),
            _ => CliError::new(2, e.to_string()),
        }
    }
}

/// The loaded filtration and, for point clouds, the points.
struct Loaded {
    order: OrderWithLevel,
    points: Option<PointCloud>,
}

impl Loaded {
    fn top_dim(&self) -> usize {
        self.order.complex().dim().unwrap_or(0)
    }
}

fn load(args: &InputArgs) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::new(1, format!("{}: {e}", args.input.display())))?;
    let is_json = args.input.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let (order, points) = if is_json {
        (parse_complex(&text)?, None)
    } else {
        let pts = parse_pointcloud(&text)?;
        (alpha_filtration(&pts)?.order, Some(pts))
    };
    if order.is_empty() {
        return Err(CliError::new(2, "input is empty"));
    }
    let order = if args.squared {
        order
            .with_levels(order.levels().iter().map(|x| x * x).collect())
            .map_err(|e| CliError::new(1, e.to_string()))?
    } else {
        order
    };
    Ok(Loaded { order, points })
}

/// A command's result and where it goes.
struct Rendered {
    path: Option<PathBuf>,
    body: String,
}

fn emit(path: Option<&Path>, body: &str) -> Result<Rendered, CliError> {
    Ok(Rendered {
        path: path.map(Path::to_path_buf),
        body: body.to_string(),
    })
}

fn write_out(out: &mut dyn Write, r: &Rendered) -> Result<(), CliError> {
    match r.path.as_deref() {
        Some(p) => std::fs::write(p, &r.body)
            .map_err(|e| CliError::new(1, format!("{}: {e}", p.display()))),
        None => out
            .write_all(r.body.as_bytes())
            .map_err(|e| CliError::new(1, e.to_string())),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

/// Resolves the selected pair within the degree's diagram.
fn select_pair(
    loaded: &Loaded,
    sel: &PairArgs,
    default_degree: usize,
) -> Result<PersistencePair, CliError> {
    let picked = [sel.pair_index.is_some(), sel.birth.is_some(), sel.largest]
        .iter()
        .filter(|&&b| b)
        .count();
    if picked != 1 {
        return Err(CliError::new(
            2,
            "give exactly one of --pair-index, --birth/--death, --largest",
        ));
    }
    let k = sel.degree.unwrap_or(default_degree);
    let order = &loaded.order;
    let pairs = reduce(order);
    let d: Diagram = diagram(&pairs, order, k);
    let point = if let Some(i) = sel.pair_index {
        *d.pairs
            .get(i)
            .ok_or_else(|| CliError::new(4, format!("degree {k} has {} pairs, no index {i}", d.len())))?
    } else if let (Some(b), Some(de)) = (sel.birth, sel.death) {
        let hits: Vec<_> = d
            .pairs
            .iter()
            .filter(|p| {
                (p.birth - b).abs() <= sel.tolerance
                    && (p.death == de || (p.death - de).abs() <= sel.tolerance)
            })
            .collect();
        match hits.as_slice() {
            [one] => **one,
            [] => return Err(CliError::new(4, format!("no degree-{k} pair near ({b}, {de})"))),
            many => {
                return Err(CliError::new(
                    4,
                    format!("{} degree-{k} pairs near ({b}, {de}); tighten --tolerance", many.len()),
                ))
            }
        }
    } else {
        let finite = d.pairs.iter().filter(|p| !p.is_essential());
        let best = finite.fold(None, |acc: Option<&crate::persistence::DiagramPoint>, p| match acc {
            Some(a) if a.persistence() >= p.persistence() => Some(a),
            _ => Some(p),
        });
        *best.ok_or_else(|| CliError::new(4, format!("degree {k} has no finite pairs")))?
    };
    Ok(PersistencePair::new(order, k, point.birth_simplex, point.death_simplex))
}

fn tree(loaded: &Loaded) -> Result<PersistenceTree, CliError> {
    let g = build_dual_graph(&loaded.order)?;
    Ok(compute_tree(g, &loaded.order))
}

fn require_finite(pair: &PersistencePair) -> Result<(), CliError> {
    if pair.death.is_none() {
        Err(CliError::new(5, "the selected pair never dies"))
    } else {
        Ok(())
    }
}

fn cmd_pd(a: &PdArgs) -> Result<Rendered, CliError> {
    let loaded = load(&a.io)?;
    let pairs = reduce(&loaded.order);
    let degrees: Vec<usize> = if a.degree.is_empty() {
        (0..=loaded.top_dim()).collect()
    } else {
        a.degree.clone()
    };
    let diagrams: Vec<Diagram> = degrees
        .iter()
        .map(|&k| diagram(&pairs, &loaded.order, k))
        .collect();
    if let Some(path) = &a.tsv {
        let mut tsv = String::from("degree\tbirth\tdeath\n");
        for d in &diagrams {
            for p in &d.pairs {
                tsv.push_str(&format!("{}\t{}\t{}\n", d.degree, p.birth, p.death));
            }
        }
        std::fs::write(path, tsv).map_err(|e| CliError::new(1, format!("{}: {e}", path.display())))?;
    }
    emit(a.io.output.as_deref(), &to_json(&diagrams))
}

fn cmd_vol(a: &VolArgs) -> Result<Rendered, CliError> {
    let loaded = load(&a.io)?;
    let n = loaded.top_dim();
    let pair = select_pair(&loaded, &a.pair, n.saturating_sub(1))?;
    require_finite(&pair)?;
    let order = &loaded.order;
    let pts = loaded.points.as_ref();
    let use_tree = match a.method {
        VolMethod::Optimal => pair.degree + 1 == n,
        VolMethod::StableTree => true,
        _ => false,
    };
    let doc = if use_tree {
        let t = tree(&loaded)?;
        if a.method == VolMethod::Optimal {
            let cells = optimal_volume_tree(&t, &pair)?;
            let bd = crate::chain::z2_boundary(order.complex(), &cells);
            VolumeDocument::new("tree-optimal", order, &pair, None, &cells, &bd, pts)
        } else {
            let sv = stable_volume_tree(&t, order, &pair, a.epsilon)?;
            VolumeDocument::new("tree-stable", order, &pair, Some(a.epsilon), &sv.cells, &sv.boundary, pts)
        }
    } else {
        let (mode, eps) = match a.method {
            VolMethod::StableLp => (VolumeMode::Stable, a.epsilon),
            VolMethod::Sub => (VolumeMode::Sub, a.epsilon),
            _ => (VolumeMode::Optimal, 0.0),
        };
        let v = if mode == VolumeMode::Sub {
            lp_volume(order, &pair, mode, eps, a.threshold)?
        } else {
            let prob = make_problem(order, &pair, mode, eps, None)?;
            let raw = solve_lp(order, &prob)?;
            round_support(order, &prob, &raw, a.threshold)?
        };
        let eps = (mode != VolumeMode::Optimal).then_some(eps);
        let mut doc = VolumeDocument::new(mode.method_name(), order, &pair, eps, &v.cells, &v.boundary, pts);
        doc.objective = Some(v.objective);
        doc.status = Some("optimal".into());
        doc
    };
    emit(a.io.output.as_deref(), &to_json(&doc))
}

fn cmd_sweep(a: &SweepArgs) -> Result<Rendered, CliError> {
    let grid = parse_grid(&a.epsilon_grid).map_err(|e| CliError::new(2, e))?;
    let loaded = load(&a.io)?;
    let n = loaded.top_dim();
    let pair = select_pair(&loaded, &a.pair, n.saturating_sub(1))?;
    require_finite(&pair)?;
    let rows = match a.method {
        SweepMethod::StableTree => sweep_sizes(&tree(&loaded)?, &loaded.order, &pair, &grid)?,
        SweepMethod::StableLp => {
            use rayon::prelude::*;
            grid.par_iter()
                .map(|&eps| {
                    lp_volume(&loaded.order, &pair, VolumeMode::Stable, eps, DEFAULT_THRESHOLD)
                        .map(|v| (eps, v.cells.len()))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    emit(a.io.output.as_deref(), &format_sweep(&rows))
}

fn cmd_stat(a: &StatArgs) -> Result<Rendered, CliError> {
    let loaded = load(&a.io)?;
    let points = loaded
        .points
        .as_ref()
        .ok_or_else(|| CliError::new(2, "stat needs a point cloud input"))?;
    if a.io.squared {
        return Err(CliError::new(2, "stat matches pairs in radius units; drop --squared"));
    }
    let n = loaded.top_dim();
    let pair = select_pair(&loaded, &a.pair, n.saturating_sub(1))?;
    require_finite(&pair)?;
    let noise = NoiseModel::new(a.noise, a.seed)?;
    let m = statistical_frequencies(points, (&pair).into(), noise, a.trials)?;
    emit(a.io.output.as_deref(), &to_json(&FrequencyDocument::from(&m)))
}

fn cmd_rsc(a: &RscArgs) -> Result<Rendered, CliError> {
    let loaded = load(&a.io)?;
    let pair = select_pair(&loaded, &a.pair, 1)?;
    let order = &loaded.order;
    let k = match (a.k_index, a.bandwidth) {
        (Some(k), _) => k,
        (None, Some(b)) => bandwidth_k_index(order, &pair, b),
        (None, None) => default_k_index(order, &pair),
    };
    let weight = if a.euclidean {
        EdgeWeight::Euclidean(
            loaded
                .points
                .as_ref()
                .ok_or_else(|| CliError::new(2, "--euclidean needs a point cloud input"))?,
        )
    } else {
        EdgeWeight::Hops
    };
    let cycle = reconstructed_shortest_cycle(order, &pair, k, weight)
        .map_err(|e| CliError::new(1, e.to_string()))?;
    let doc = VolumeDocument::from_loop(order, &pair, &cycle, loaded.points.as_ref());
    emit(a.io.output.as_deref(), &to_json(&doc))
}

fn cmd_gen(a: &GenArgs) -> Result<Rendered, CliError> {
    let pts = fixtures::generate(&a.name, a.seed).map_err(|e| CliError::new(2, e.to_string()))?;
    emit(a.output.as_deref(), &format_pointcloud(&pts))
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Pd(a) => cmd_pd(a),
        Command::Vol(a) => cmd_vol(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Stat(a) => cmd_stat(a),
        Command::Rsc(a) => cmd_rsc(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            if !e.use_stderr() {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads.filter(|&t| t > 0) {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli)).and_then(|r| write_out(out, &r)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
