//! `giantlab`: forecasts, graph construction and percolation experiments.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Settings, Usage};

#[derive(Parser)]
#[command(name = "giantlab", version, about = "Giant components of percolated expanders")]
struct Cli {
    /// Worker threads for Monte Carlo trials (default: GIANTLAB_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the limiting giant and 2-core densities for the d-regular case
    Forecast {
        #[arg(short = 'd', long = "d", value_parser = parse_degree)]
        d: usize,
        #[arg(short = 'p', long = "p", value_parser = parse_probability)]
        p: f64,
        /// Emit JSON instead of key=value lines
        #[arg(long)]
        json: bool,
    },
    /// Build or load a graph and write it in the graph file format
    Build(Experiment),
    /// Run Monte Carlo percolation trials on one graph
    Percolate(Experiment),
    /// Run one block of trials per point of a p-grid or n-grid
    Sweep(Experiment),
    /// Compare local predictors with the measured giant over an R-grid
    Audit(Experiment),
}

/// Experiment settings. Every flag may also be given as `key = value` in
/// the file passed to `--config`; flags win.
#[derive(Args)]
struct Experiment {
    /// Flat key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph kind: regular, theorem2, theorem3 or file
    #[arg(long)]
    kind: Option<String>,
    /// Input graph file (implies --kind file)
    #[arg(long)]
    graph: Option<String>,
    /// Vertex count or target size; accepts 100000, 1e5, 10^5, 3*10^4
    #[arg(short = 'n', long = "n")]
    n: Option<String>,
    #[arg(short = 'd', long = "d")]
    d: Option<String>,
    /// Edge retention probability
    #[arg(short = 'p', long = "p")]
    p: Option<String>,
    /// Exponent of the second component (theorem2)
    #[arg(long)]
    alpha: Option<String>,
    /// Slack parameter (theorem3)
    #[arg(long)]
    eps: Option<String>,
    /// Fraction of H1 vertices on subdivided matching edges (theorem2)
    #[arg(long)]
    delta: Option<String>,
    /// Gadget order (theorem2; default: smallest feasible)
    #[arg(long = "gadget-m")]
    gadget_m: Option<String>,
    /// Gadget girth (theorem2)
    #[arg(long = "gadget-girth")]
    gadget_girth: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Predictor radius; enables the audit columns
    #[arg(short = 'R', long = "r")]
    r: Option<String>,
    /// Master seed for graph generation and trials
    #[arg(long)]
    seed: Option<String>,
    /// Vertex whose eccentricity is recorded
    #[arg(long = "ecc-vertex")]
    ecc_vertex: Option<String>,
    /// Output path (CSV, or the graph file for build)
    #[arg(short = 'o', long)]
    out: Option<String>,
    /// Summary JSON path (default: <out>.summary.json)
    #[arg(long)]
    summary: Option<String>,
    /// p values: a,b,c or start:stop:step
    #[arg(long = "p-grid")]
    p_grid: Option<String>,
    /// Graph sizes: a,b,c
    #[arg(long = "n-grid")]
    n_grid: Option<String>,
    /// Predictor radii for audit: a,b,c
    #[arg(long = "r-grid")]
    r_grid: Option<String>,
}

impl Experiment {
    fn settings(self) -> anyhow::Result<Settings> {
        let flags = [
            ("kind", self.kind),
            ("graph", self.graph),
            ("n", self.n),
            ("d", self.d),
            ("p", self.p),
            ("alpha", self.alpha),
            ("eps", self.eps),
            ("delta", self.delta),
            ("gadget-m", self.gadget_m),
            ("gadget-girth", self.gadget_girth),
            ("trials", self.trials),
            ("r", self.r),
            ("seed", self.seed),
            ("ecc-vertex", self.ecc_vertex),
            ("out", self.out),
            ("summary", self.summary),
            ("p-grid", self.p_grid),
            ("n-grid", self.n_grid),
            ("r-grid", self.r_grid),
        ];
        Settings::resolve(self.config.as_deref(), &flags)
    }
}

fn parse_degree(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if d >= 2 => Ok(d),
        _ => Err("expected an integer degree of at least 2".into()),
    }
}

fn parse_probability(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(p) if p > 0.0 && p <= 1.0 => Ok(p),
        _ => Err("expected a probability in (0, 1]".into()),
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let threads = cli.threads;
    match cli.command {
        Command::Forecast { d, p, json } => run::print_forecast(d, p, json),
        Command::Build(e) => run::build(e.settings()?),
        Command::Percolate(e) => run::percolate(e.settings()?, threads),
        Command::Sweep(e) => run::sweep(e.settings()?, threads),
        Command::Audit(e) => run::audit(e.settings()?, threads),
    }
}

/// Stable exit codes: 2 usage, 3 I/O, 4 generation failure.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<giantlab::Error>() {
            return match e {
                giantlab::Error::Parameter(_) | giantlab::Error::Budget(_) => 2,
                giantlab::Error::Io(_) | giantlab::Error::Parse { .. } | giantlab::Error::Format { .. } => 3,
                giantlab::Error::Generation(_) | giantlab::Error::Infeasible(_) => 4,
            };
        }
        if cause.is::<std::io::Error>() {
            return 3;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
