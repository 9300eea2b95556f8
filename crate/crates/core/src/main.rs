use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gnp_dense::analysis::{BoundReport, DEFAULT_TOL};
use gnp_dense::experiment::{
    default_k, run_density_sweep, run_experiment, write_report, write_sweep, ExperimentConfig, Format, Mode,
};
use gnp_dense::graph::{generate_gnp, read_edge_list, write_edge_list};
use gnp_dense::oracle::{count_dense_subgraphs, max_density_subgraph_exact, OracleBudget, OracleResult};
use gnp_dense::seed::partition_seed;
use gnp_dense::{greedy_dense, partition_vertices, Error, Graph, Result};

#[derive(Parser)]
#[command(name = "gnp-dense", version, about = "Dense subgraphs in G(n, 1/2): greedy search, bounds and exact oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it as an edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the partitioned greedy and print its trace.
    Greedy {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: Option<usize>,
        /// Defaults to the partition seed paired with --seed.
        #[arg(long)]
        partition_seed: Option<u64>,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every analytical bound for (n, k, delta).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0.049)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// json or text
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact densest k-subgraph, optionally with the count of dense subsets.
    Oracle {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: Option<f64>,
        /// Search-node budget.
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 100_000_000)]
        max_subsets: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded Monte Carlo experiment.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list file; otherwise G(n, p) is sampled from --n, --p, --seed.
    #[arg(long, conflicts_with = "n")]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphSource {
    fn load(&self) -> Result<Graph> {
        match (&self.graph, self.n) {
            (Some(path), _) => read_edge_list(BufReader::new(File::open(path)?)),
            (None, Some(n)) => generate_gnp(n, self.p, self.seed),
            (None, None) => Err(Error::arg("either --graph or --n is required")),
        }
    }
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    mode: Mode,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.049)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Search-node budget for the oracle modes.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0.9)]
    pass_rate: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Inclusive k range for threshold-scan, as LO:HI.
    #[arg(long)]
    scan: Option<String>,
    /// Emit (k, predicted_density, mean_observed_density) for k in LO:HI.
    #[arg(long)]
    sweep: Option<String>,
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Error::arg(format!("expected LO:HI, got {s:?}")))?;
    let parse = |x: &str| x.parse::<usize>().map_err(|e| Error::arg(format!("{x:?}: {e}")));
    Ok((parse(lo)?, parse(hi)?))
}

fn require_half(p: f64) -> Result<()> {
    if p != 0.5 {
        return Err(Error::arg(format!("the bounds hold only for p = 1/2, got p = {p}")));
    }
    Ok(())
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct OracleOutput {
    #[serde(flatten)]
    result: OracleResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    dense_count: Option<u64>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { n, p, seed, out } => write_edge_list(&generate_gnp(n, p, seed)?, sink(&out)?),
        Command::Greedy { source, k, partition_seed: pseed, format, out } => {
            let g = source.load()?;
            let k = k.unwrap_or_else(|| default_k(g.n()).min(g.n()));
            let partition = partition_vertices(g.n(), k, pseed.unwrap_or_else(|| partition_seed(source.seed)))?;
            let trace = greedy_dense(&g, &partition)?;
            let mut w = sink(&out)?;
            match format {
                Format::Json => writeln!(w, "{}", trace.to_json()?)?,
                Format::Csv => trace.write_csv(&mut w)?,
            }
            w.flush()?;
            Ok(())
        }
        Command::Bounds { n, k, delta, tol, p, format, out } => {
            require_half(p)?;
            let k = k.unwrap_or_else(|| default_k(n as usize) as u64);
            let report = BoundReport::compute(n, k, delta, tol)?;
            match format.as_str() {
                "json" => write_json(&report, &out),
                "text" => {
                    let mut w = sink(&out)?;
                    write!(w, "{report}")?;
                    w.flush()?;
                    Ok(())
                }
                other => Err(Error::arg(format!("unknown format {other:?} (json or text)"))),
            }
        }
        Command::Oracle { source, k, delta, budget, max_subsets, out } => {
            let g = source.load()?;
            let budget = OracleBudget { max_nodes: budget, max_subsets, ..OracleBudget::default() };
            let result = max_density_subgraph_exact(&g, k, &budget)?;
            let dense_count = delta.map(|d| count_dense_subgraphs(&g, k, d, &budget)).transpose()?;
            write_json(&OracleOutput { result, dense_count }, &out)
        }
        Command::Experiment(a) => {
            require_half(a.p)?;
            let config = ExperimentConfig {
                mode: a.mode,
                n: a.n,
                k: a.k.unwrap_or_else(|| default_k(a.n).min(a.n)),
                delta: a.delta,
                trials: a.trials,
                master_seed: a.seed,
                workers: a.workers,
                format: a.format,
                budget: OracleBudget { max_nodes: a.budget, ..OracleBudget::default() },
                pass_rate: a.pass_rate,
                density_tolerance: 0.02,
                scan: a.scan.as_deref().map(parse_range).transpose()?,
            };
            if let Some(range) = a.sweep.as_deref() {
                let (lo, hi) = parse_range(range)?;
                let points = run_density_sweep(&config, lo..=hi)?;
                return write_sweep(&points, config.format, sink(&a.out)?);
            }
            let report = run_experiment(&config)?;
            match &a.out {
                Some(path) => gnp_dense::experiment::emit_report(&report, config.format, Path::new(path)),
                None => write_report(&report, config.format, sink(&None)?),
            }
        }
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let line = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{line}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().lines().next().unwrap_or("invalid usage")),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}
