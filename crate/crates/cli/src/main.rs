//! `cuts`: minimum cuts, cactus of all minimum cuts, and dynamic replay on
//! METIS graphs.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use mincut_core::cactus::{min_conductance_cut, most_balanced_cut, AllCutsOptions, RecursionOptions};
use mincut_core::dynamic::{load_stream, replay_stream};
use mincut_core::generators::gen_clustered_er;
use mincut_core::graph::{is_connected, kcore, load_metis, save_metis};
use mincut_core::heuristic::LpOptions;
use mincut_core::oracle::{canonical, min_st_cut, oracle_mincut};
use mincut_core::{
    exact_mincut, find_all_mincuts, viecut, DynamicOptions, DynamicState, EdgeStrategy, ExactOptions, FlowNetwork,
    FlowOptions, QueueKind, StaticGraph, VieCutOptions, Weight,
};

use output::Report;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] mincut_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use mincut_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Core(E::Usage(_)) => 1,
            CliError::Write { .. } | CliError::Core(E::Io { .. } | E::Parse { .. } | E::Overflow) => 2,
            CliError::Core(E::Mismatch(_)) => 3,
            CliError::Core(E::Invariant(_)) => 4,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cuts", version, about = "Global minimum cuts in weighted undirected graphs")]
struct Cli {
    /// Print machine-readable key=value lines.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Also report wall-clock time as time_ms.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum cut value and one side.
    Mincut(MincutArgs),
    /// Cactus of all minimum cuts.
    Allcuts(AllcutsArgs),
    /// Most balanced minimum cut.
    Balanced(BalancedArgs),
    /// Replay an update stream with the dynamic maintainer.
    Dynamic(DynamicArgs),
    /// Maximum flow between a source and a sink set.
    Stcut(StcutArgs),
    /// Extract the k-core of a graph.
    Kcore(KcoreArgs),
    /// Generate a clustered random graph.
    GenCluster(GenClusterArgs),
    /// Exhaustive minimum cuts of a small graph.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Inexact,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Pq {
    Stack,
    Queue,
    Heap,
}

impl From<Pq> for QueueKind {
    fn from(pq: Pq) -> Self {
        match pq {
            Pq::Stack => QueueKind::BucketStack,
            Pq::Queue => QueueKind::BucketQueue,
            Pq::Heap => QueueKind::Heap,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bound {
    Viecut,
    Degree,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Random,
    Heavy,
    WeightedHeavy,
    Central,
}

impl From<Strategy> for EdgeStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Random => EdgeStrategy::Random,
            Strategy::Heavy => EdgeStrategy::Heavy,
            Strategy::WeightedHeavy => EdgeStrategy::WeightedHeavy,
            Strategy::Central => EdgeStrategy::Central,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Args)]
struct MincutArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    algo: Algo,
    /// Graphs this small go to the exact solver inside the heuristic.
    #[arg(long, default_value_t = 10_000)]
    n0: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Contract random edges down to this fraction instead of clustering.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    pq: Option<Pq>,
    /// Initial bound of the exact solver.
    #[arg(long, value_enum, default_value = "viecut")]
    bound: Bound,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Args)]
struct CactusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "heavy")]
    strategy: Strategy,
    /// Depth of the exact initial labeling in flows.
    #[arg(long, default_value_t = 1)]
    gamma: usize,
}

impl CactusArgs {
    fn options(&self) -> AllCutsOptions {
        AllCutsOptions {
            seed: self.seed,
            recursion: RecursionOptions {
                strategy: self.strategy.into(),
                gamma: self.gamma,
                seed: self.seed,
                ..Default::default()
            },
            kernelize: true,
        }
    }
}

#[derive(Debug, Args)]
struct AllcutsArgs {
    graph: PathBuf,
    /// Write the cactus here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    cactus: CactusArgs,
}

#[derive(Debug, Args)]
struct BalancedArgs {
    graph: PathBuf,
    /// Minimize conductance instead of maximizing the smaller side.
    #[arg(long)]
    conductance: bool,
    #[command(flatten)]
    cactus: CactusArgs,
}

#[derive(Debug, Args)]
struct DynamicArgs {
    stream: PathBuf,
    /// Initial graph; defaults to the edgeless graph of the stream header.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Check every batch against a static recomputation.
    #[arg(long)]
    validate: bool,
    #[arg(long, value_enum, default_value = "on")]
    cache: Switch,
    #[arg(long, default_value_t = 1)]
    gamma: usize,
    /// Cache reuse threshold: insertions per cactus node.
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct StcutArgs {
    graph: PathBuf,
    #[arg(short, long)]
    source: usize,
    /// Sink vertices, comma separated.
    #[arg(short = 't', long, value_delimiter = ',', required = true)]
    sinks: Vec<usize>,
    /// Stop once this much flow arrives.
    #[arg(long)]
    target: Option<Weight>,
    #[arg(long, default_value_t = 1)]
    gamma: usize,
}

#[derive(Debug, Args)]
struct KcoreArgs {
    graph: PathBuf,
    #[arg(short, long)]
    k: Weight,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenClusterArgs {
    #[arg(short, long)]
    n: usize,
    /// Edge density in percent of all pairs.
    #[arg(short, long, default_value_t = 10)]
    density: u32,
    #[arg(short = 'k', long, default_value_t = 2)]
    clusters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    graph: PathBuf,
}

fn load(path: &Path) -> CliResult<StaticGraph> {
    Ok(load_metis(path)?)
}

fn run(cli: Cli) -> CliResult<Report> {
    let mut report = Report::new(cli.porcelain);
    match cli.command {
        Command::Mincut(args) => mincut(args, &mut report)?,
        Command::Allcuts(args) => allcuts(args, &mut report)?,
        Command::Balanced(args) => balanced(args, &mut report)?,
        Command::Dynamic(args) => dynamic(args, &mut report)?,
        Command::Stcut(args) => stcut(args, &mut report)?,
        Command::Kcore(args) => kcore_cmd(args, &mut report)?,
        Command::GenCluster(args) => gen_cluster(args, &mut report)?,
        Command::Oracle(args) => oracle(args, &mut report)?,
    }
    Ok(report)
}

fn mincut(args: MincutArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    if args.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    if let Some(a) = args.alpha {
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::Usage("--alpha must lie in (0, 1)".into()));
        }
    }
    let (value, side) = match args.algo {
        Algo::Inexact => {
            let r = viecut(&g, &VieCutOptions { n0: args.n0, seed: args.seed, lp: LpOptions::default(), alpha: args.alpha });
            (r.value, r.side)
        }
        Algo::Exact => {
            let options = ExactOptions {
                use_viecut_bound: matches!(args.bound, Bound::Viecut),
                queue: args.pq.map(Into::into),
                workers: args.workers,
                seed: args.seed,
            };
            let r = exact_mincut(&g, &options);
            (r.value, r.side)
        }
    };
    report.lambda(value);
    report.side(&canonical(&side));
    Ok(())
}

fn allcuts(args: AllcutsArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    let (lambda, cactus) = find_all_mincuts(&g, &args.cactus.options())?;
    report.lambda(lambda);
    report.value("nstar", cactus.n_star());
    report.value("mstar", cactus.m_star());
    let text = cactus.to_text();
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })?,
        None if !report.porcelain() => report.raw(&text),
        None => {}
    }
    Ok(())
}

fn balanced(args: BalancedArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    let (lambda, cactus) = find_all_mincuts(&g, &args.cactus.options())?;
    report.lambda(lambda);
    report.value("nstar", cactus.n_star());
    let best = if args.conductance {
        let degrees: Vec<Weight> = (0..g.n()).map(|v| g.weighted_degree(v)).collect();
        min_conductance_cut(&cactus, &degrees)
    } else {
        most_balanced_cut(&cactus)
    };
    match best {
        Some(cut) => {
            report.value("balance", cut.smaller);
            report.side(&cut.side);
        }
        None => report.note("graph has no cut"),
    }
    Ok(())
}

fn dynamic(args: DynamicArgs, report: &mut Report) -> CliResult<()> {
    if !(args.delta >= 0.0) {
        return Err(CliError::Usage("--delta must be nonnegative".into()));
    }
    let stream = load_stream(&args.stream)?;
    let g = match &args.graph {
        Some(path) => load(path)?,
        None => StaticGraph::empty(stream.n),
    };
    let options = DynamicOptions { cache: args.cache == Switch::On, gamma: args.gamma, delta: args.delta, seed: args.seed };
    let mut state = DynamicState::new(&g, options)?;
    let trace = replay_stream(&mut state, &stream, args.validate)?;
    for (ts, lambda) in trace {
        report.raw(&format!("{ts} {}", output::weight(lambda)));
    }
    report.lambda(state.lambda());
    report.value("nstar", state.cactus().n_star());
    let stats = state.stats();
    report.note(&format!(
        "recomputations {}, cache restores {}, certified deletions {}",
        stats.recomputations, stats.cache_restores, stats.certified_deletions
    ));
    Ok(())
}

fn stcut(args: StcutArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    let mut net = FlowNetwork::from_static(&g);
    let r = net.max_flow(args.source, &args.sinks, FlowOptions { target: args.target, gamma: args.gamma })?;
    report.lambda(r.value);
    report.value("reached_target", r.reached_target);
    if let Some(side) = &r.source_side {
        report.side(side);
    }
    if g.n() <= mincut_core::oracle::ORACLE_MAX_N && r.source_side.is_some() {
        let expected = min_st_cut(&g, args.source, &args.sinks)?;
        if expected != r.value {
            return Err(mincut_core::Error::Invariant(format!("flow {} differs from enumeration {expected}", r.value)).into());
        }
    }
    Ok(())
}

fn kcore_cmd(args: KcoreArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    let core = kcore(&g, args.k);
    report.value("n", core.n());
    report.value("m", core.m());
    report.value("connected", is_connected(&core));
    if let Some(path) = &args.out {
        save_metis(&core, path)?;
    }
    Ok(())
}

fn gen_cluster(args: GenClusterArgs, report: &mut Report) -> CliResult<()> {
    let g = gen_clustered_er(args.n, args.density, args.clusters, args.seed)?;
    save_metis(&g, &args.out)?;
    report.value("n", g.n());
    report.value("m", g.m());
    Ok(())
}

fn oracle(args: OracleArgs, report: &mut Report) -> CliResult<()> {
    let g = load(&args.graph)?;
    let cuts = oracle_mincut(&g)?;
    report.lambda(cuts.lambda);
    report.value("cuts", cuts.sides.len());
    if !report.porcelain() {
        for side in &cuts.sides {
            report.side(side);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let timing = cli.timing;
    let start = Instant::now();
    match run(cli) {
        Ok(mut report) => {
            if timing {
                report.value("time_ms", start.elapsed().as_millis());
            }
            report.print();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            log::debug!("{e:?}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mincut_core::Error as E;

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Core(E::Overflow).exit_code(), 2);
        assert_eq!(CliError::Core(E::Mismatch("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(E::Invariant("x".into())).exit_code(), 4);
    }

    #[test]
    fn queue_flag_maps_to_every_kind() {
        assert_eq!(QueueKind::from(Pq::Stack), QueueKind::BucketStack);
        assert_eq!(QueueKind::from(Pq::Queue), QueueKind::BucketQueue);
        assert_eq!(QueueKind::from(Pq::Heap), QueueKind::Heap);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
