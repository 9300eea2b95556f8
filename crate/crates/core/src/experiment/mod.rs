//! Reproducible Monte Carlo harness.
//!
//! Trial `t` of a run with master seed `s` samples its graph from
//! `generate_gnp(n, 1/2, trial_seed(s, t))` and, where a partition is needed,
//! shuffles with `partition_seed(trial_seed(s, t))` (see [`crate::seed`]).
//! Records come back ordered by trial index whatever the worker count.

mod report;

pub use report::{emit_report, run_density_sweep, write_report, write_sweep, ExperimentReport, SweepPoint};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, required_edges};
use crate::error::{Error, Result};
use crate::graph::{generate_gnp, pairs, Graph};
use crate::greedy::{greedy_dense, partition_vertices, plain_greedy_clique, GreedyTrace};
use crate::oracle::{self, OracleBudget};
use crate::seed::{partition_seed, trial_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    GreedyDensity,
    Lemma1Rate,
    Lemma2Edges,
    CliqueBaseline,
    FirstMoment,
    ThresholdScan,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::GreedyDensity,
        Mode::Lemma1Rate,
        Mode::Lemma2Edges,
        Mode::CliqueBaseline,
        Mode::FirstMoment,
        Mode::ThresholdScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::GreedyDensity => "greedy-density",
            Mode::Lemma1Rate => "lemma1-rate",
            Mode::Lemma2Edges => "lemma2-edges",
            Mode::CliqueBaseline => "clique-baseline",
            Mode::FirstMoment => "first-moment",
            Mode::ThresholdScan => "threshold-scan",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::arg(format!("unknown mode {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::arg(format!("unknown format {s:?}"))),
        }
    }
}

/// `round(2 log2 n)`, at least 2.
pub fn default_k(n: usize) -> usize {
    ((2.0 * (n as f64).log2()).round() as usize).max(2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub workers: usize,
    pub format: Format,
    pub budget: OracleBudget,
    /// Desk-scale stand-in for "almost surely": required fraction of passing
    /// trials in lemma2-edges and threshold-scan.
    pub pass_rate: f64,
    /// Allowed gap between mean and predicted density in greedy-density.
    pub density_tolerance: f64,
    /// Inclusive k range for threshold-scan; defaults to the rounded-up
    /// threshold ± 2, clipped to `[2, n]`.
    pub scan: Option<(usize, usize)>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, n: usize) -> Self {
        ExperimentConfig {
            mode,
            n,
            k: default_k(n).min(n),
            delta: 0.049,
            trials: 100,
            master_seed: 0,
            workers: 1,
            format: Format::Csv,
            budget: OracleBudget::default(),
            pass_rate: 0.9,
            density_tolerance: 0.02,
            scan: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::arg("trials must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::arg("workers must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::arg("n must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.pass_rate) {
            return Err(Error::arg("pass rate must lie in [0, 1]"));
        }
        match self.mode {
            Mode::GreedyDensity | Mode::Lemma1Rate | Mode::Lemma2Edges | Mode::FirstMoment => {
                if self.k < 2 || self.k > self.n {
                    return Err(Error::arg(format!("need 2 <= k <= n, got k = {}, n = {}", self.k, self.n)));
                }
            }
            Mode::CliqueBaseline | Mode::ThresholdScan => {}
        }
        if !(0.0..=0.5).contains(&self.delta) {
            return Err(Error::arg(format!("delta {} outside [0, 1/2]", self.delta)));
        }
        let seeds: HashSet<u64> = (0..self.trials).map(|t| trial_seed(self.master_seed, t)).collect();
        if seeds.len() as u64 != self.trials {
            return Err(Error::arg("per-trial seeds collide"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    /// greedy-density: final density; lemma1-rate: steps meeting their
    /// target; lemma2-edges: final edges; clique-baseline: clique size;
    /// first-moment: dense-subgraph count; threshold-scan: largest scanned k
    /// with a dense subgraph (0 if none).
    pub observed: f64,
    pub predicted: f64,
    pub pass: bool,
    /// Per-step gains for the greedy modes, clique members for
    /// clique-baseline, best edge count per scanned k for threshold-scan.
    pub detail: Vec<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRate {
    pub i: u64,
    pub target: u64,
    pub successes: u64,
    pub rate: f64,
    pub bound: f64,
    /// Three binomial standard errors at the bound.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: u64,
    pub completed: u64,
    pub failed: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub pass_rate: f64,
    pub predicted: f64,
    pub criterion: String,
    pub aggregate_pass: bool,
    pub steps: Option<Vec<StepRate>>,
    /// `1 - 1 / log2(n)^2`, the asymptotic per-step target (lemma1-rate only).
    pub step_target: Option<f64>,
}

/// Rounds to 12 significant digits so emitted values parse back exactly.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Per-config quantities shared by all trials.
enum Context {
    Density { predicted: f64 },
    Steps { targets: Vec<u64>, bounds: Vec<f64> },
    Edges { predicted: f64 },
    Clique { log2n: f64 },
    Count { expected: f64 },
    Scan { threshold: usize, lo: usize, hi: usize },
}

impl Context {
    fn new(c: &ExperimentConfig) -> Result<Self> {
        let (n, k) = (c.n as u64, c.k as u64);
        Ok(match c.mode {
            Mode::GreedyDensity => Context::Density { predicted: analysis::predicted_density(n, k)?.discrete },
            Mode::Lemma1Rate => {
                let schedule = analysis::delta_schedule(n, k)?;
                let bounds = schedule
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| analysis::lemma1_success_bound(n, k, i as u64, d))
                    .collect::<Result<_>>()?;
                Context::Steps { targets: analysis::step_targets(&schedule), bounds }
            }
            Mode::Lemma2Edges => Context::Edges { predicted: analysis::predicted_edges_lower_bound(n, k)? },
            Mode::CliqueBaseline => Context::Clique { log2n: (c.n as f64).log2() },
            Mode::FirstMoment => {
                Context::Count { expected: analysis::expected_dense_subgraph_count(n, k, c.delta)?.exp2() }
            }
            Mode::ThresholdScan => {
                if c.delta >= 0.5 {
                    return Err(Error::DegenerateThreshold(c.delta));
                }
                let threshold = analysis::size_threshold(c.delta, n)?.size.ceil() as usize;
                let (lo, hi) = c.scan.unwrap_or((threshold.saturating_sub(2).max(2), threshold + 2));
                let (lo, hi) = (lo.max(2), hi.min(c.n));
                if lo > hi {
                    return Err(Error::arg(format!("empty scan range for n = {} (threshold {threshold})", c.n)));
                }
                Context::Scan { threshold, lo, hi }
            }
        })
    }

    fn predicted(&self) -> f64 {
        match self {
            Context::Density { predicted } | Context::Edges { predicted } => *predicted,
            Context::Steps { bounds, .. } => bounds.iter().sum(),
            Context::Clique { log2n } => *log2n,
            Context::Count { expected } => *expected,
            Context::Scan { threshold, .. } => *threshold as f64,
        }
    }
}

fn greedy_trace(g: &Graph, k: usize, seed: u64) -> Result<GreedyTrace> {
    greedy_dense(g, &partition_vertices(g.n(), k, partition_seed(seed))?)
}

fn steps_met(gained: &[u64], targets: &[u64]) -> Vec<bool> {
    gained.iter().zip(targets).map(|(g, t)| g >= t).collect()
}

fn clique_band(log2n: f64) -> (f64, f64) {
    (0.85 * log2n, 1.15 * log2n)
}

fn run_trial(c: &ExperimentConfig, ctx: &Context, g: &Graph, seed: u64) -> Result<(f64, bool, Vec<u64>)> {
    Ok(match ctx {
        Context::Density { predicted } => {
            let t = greedy_trace(g, c.k, seed)?;
            let pass = t.final_density >= predicted - c.density_tolerance;
            (t.final_density, pass, t.gained().map(|x| x as u64).collect())
        }
        Context::Steps { targets, .. } => {
            let t = greedy_trace(g, c.k, seed)?;
            let gained: Vec<u64> = t.gained().map(|x| x as u64).collect();
            let met = steps_met(&gained, targets);
            let hits = met.iter().filter(|&&m| m).count();
            (hits as f64, hits == met.len(), gained)
        }
        Context::Edges { predicted } => {
            let t = greedy_trace(g, c.k, seed)?;
            (t.final_edges as f64, t.final_edges as f64 >= *predicted, t.gained().map(|x| x as u64).collect())
        }
        Context::Clique { log2n } => {
            let clique = plain_greedy_clique(g);
            let size = clique.len() as f64;
            let (lo, hi) = clique_band(*log2n);
            (size, (lo..=hi).contains(&size), clique.members().iter().map(|&v| v as u64).collect())
        }
        Context::Count { .. } => {
            let count = oracle::count_dense_subgraphs(g, c.k, c.delta, &c.budget)?;
            (count as f64, true, Vec::new())
        }
        Context::Scan { threshold, lo, hi } => {
            let mut largest = 0usize;
            let mut detail = Vec::new();
            for k in *lo..=*hi {
                let best = oracle::max_density_subgraph_exact(g, k, &c.budget)?;
                if best.best_edges >= required_edges(c.delta, pairs(k)) {
                    largest = k;
                }
                detail.push(best.best_edges);
            }
            (largest as f64, largest < *threshold, detail)
        }
    })
}

/// Runs all trials, sampling each graph with `make_graph(trial_seed)`.
pub fn run_experiment_with<F>(c: &ExperimentConfig, make_graph: F) -> Result<ExperimentReport>
where
    F: Fn(u64) -> Result<Graph> + Sync,
{
    c.validate()?;
    let ctx = Context::new(c)?;
    let predicted = round12(ctx.predicted());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.workers)
        .build()
        .map_err(|e| Error::arg(format!("worker pool: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        (0..c.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = trial_seed(c.master_seed, trial);
                match make_graph(seed).and_then(|g| run_trial(c, &ctx, &g, seed)) {
                    Ok((observed, pass, detail)) => {
                        TrialRecord { trial, seed, observed: round12(observed), predicted, pass, detail, error: None }
                    }
                    Err(e) => TrialRecord {
                        trial,
                        seed,
                        observed: 0.0,
                        predicted,
                        pass: false,
                        detail: Vec::new(),
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    let summary = summarize_with(c, &ctx, &records);
    Ok(ExperimentReport { config: c.clone(), records, summary })
}

/// [`run_experiment_with`] on G(n, 1/2).
pub fn run_experiment(c: &ExperimentConfig) -> Result<ExperimentReport> {
    run_experiment_with(c, |seed| generate_gnp(c.n, 0.5, seed))
}

/// Recomputes the summary of `records` under `c`.
pub fn summarize(c: &ExperimentConfig, records: &[TrialRecord]) -> Result<Summary> {
    Ok(summarize_with(c, &Context::new(c)?, records))
}

fn summarize_with(c: &ExperimentConfig, ctx: &Context, records: &[TrialRecord]) -> Summary {
    let done: Vec<&TrialRecord> = records.iter().filter(|r| r.error.is_none()).collect();
    let values: Vec<f64> = done.iter().map(|r| r.observed).collect();
    let completed = values.len() as u64;
    let mean = if completed == 0 { 0.0 } else { values.iter().sum::<f64>() / completed as f64 };
    let std_dev = if completed < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (completed - 1) as f64).sqrt()
    };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let passes = records.iter().filter(|r| r.pass).count();
    let pass_rate = passes as f64 / records.len().max(1) as f64;
    let predicted = ctx.predicted();

    let mut steps = None;
    let mut step_target = None;
    let (criterion, aggregate) = match ctx {
        Context::Density { .. } => (
            format!("|mean final density - predicted| <= {}", c.density_tolerance),
            (mean - predicted).abs() <= c.density_tolerance,
        ),
        Context::Steps { targets, bounds } => {
            let mut rates = Vec::with_capacity(targets.len());
            for (i, (&target, &bound)) in targets.iter().zip(bounds).enumerate() {
                let successes = done.iter().filter(|r| r.detail.get(i).is_some_and(|&g| g >= target)).count() as u64;
                let rate = successes as f64 / completed.max(1) as f64;
                let slack = 3.0 * (bound * (1.0 - bound) / completed.max(1) as f64).sqrt();
                rates.push(StepRate {
                    i: i as u64,
                    target,
                    successes,
                    rate: round12(rate),
                    bound: round12(bound),
                    slack: round12(slack),
                    pass: rate >= bound - slack,
                });
            }
            let ok = rates.iter().all(|s| s.pass);
            steps = Some(rates);
            step_target = Some(round12(1.0 - 1.0 / (c.n as f64).log2().powi(2)));
            ("per-step success rate >= step bound - 3 standard errors".to_string(), ok)
        }
        Context::Edges { .. } => {
            (format!("final edges >= predicted lower bound in >= {} of trials", c.pass_rate), pass_rate >= c.pass_rate)
        }
        Context::Clique { log2n } => {
            let (lo, hi) = clique_band(*log2n);
            (format!("mean clique size in [{}, {}]", round12(lo), round12(hi)), (lo..=hi).contains(&mean))
        }
        Context::Count { expected } => {
            let se = std_dev / (completed.max(1) as f64).sqrt();
            ("|mean count - expectation| <= 3 standard errors".to_string(), (mean - expected).abs() <= 3.0 * se)
        }
        Context::Scan { threshold, .. } => (
            format!("no dense subgraph of size >= {threshold} in >= {} of trials", c.pass_rate),
            pass_rate >= c.pass_rate,
        ),
    };
    Summary {
        trials: records.len() as u64,
        completed,
        failed: records.len() as u64 - completed,
        mean: round12(mean),
        std_dev: round12(std_dev),
        min: if completed == 0 { 0.0 } else { min },
        max: if completed == 0 { 0.0 } else { max },
        pass_rate: round12(pass_rate),
        predicted: round12(predicted),
        criterion,
        aggregate_pass: aggregate && completed == records.len() as u64,
        steps,
        step_target,
    }
}
