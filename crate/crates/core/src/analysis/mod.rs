//! Analytical quantities for the partitioned greedy in G(n, 1/2).

mod binomial;
mod bounds;
mod entropy;
mod quadrature;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use binomial::{binomial_tail, log2_binomial, TailProbability, EXACT_LIMIT};
pub use bounds::{
    clique_number_estimate, delta_schedule, density_integral, density_integrand, expected_dense_subgraph_count,
    gap_ratio, lemma1_success_bound, log2_m, predicted_density, predicted_density_with_tol,
    predicted_edges_lower_bound, schedule_for_log2_m, size_threshold, step_targets, DensityPrediction, SizeThreshold,
    DEFAULT_TOL, EXACT_PAIRS_LIMIT,
};
pub use entropy::{entropy, inverse_entropy, INVERSE_TOL};
pub use quadrature::adaptive_simpson;

use crate::error::{Error, Result};
use crate::graph::pairs;

/// Minimum edge count for "at least a `1 - δ` fraction of `total`":
/// `ceil((1 - δ) * total)`, with a `1e-9` allowance so that products such as
/// `0.9 * 10` are not pushed past an integer by rounding.
pub fn required_edges(delta: f64, total: u64) -> u64 {
    let x = (1.0 - delta) * total as f64 - 1e-9;
    if x <= 0.0 {
        0
    } else {
        (x.ceil() as u64).min(total)
    }
}

/// Every analytical quantity for one `(n, k, δ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub delta: f64,
    pub m: f64,
    pub log2_m: f64,
    pub delta_schedule: Vec<f64>,
    pub step_targets: Vec<u64>,
    pub step_success_bounds: Vec<f64>,
    pub predicted_edges: f64,
    pub predicted_density: f64,
    pub predicted_density_integral: f64,
    pub alpha: f64,
    pub integral_value: f64,
    pub size_threshold: f64,
    pub size_coefficient: f64,
    /// log2 of the expected number of size-`k` subsets with density ≥ 1 − δ.
    pub expected_count: f64,
    pub clique_number_estimate: Option<u64>,
}

impl BoundReport {
    pub fn compute(n: u64, k: u64, delta: f64, tol: f64) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::arg(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
        }
        let lm = log2_m(n, k)?;
        let schedule = schedule_for_log2_m(lm, k);
        let success = schedule
            .iter()
            .enumerate()
            .map(|(i, &d)| lemma1_success_bound(n, k, i as u64, d))
            .collect::<Result<Vec<_>>>()?;
        let prediction = predicted_density_with_tol(n, k, tol)?;
        let threshold = size_threshold(delta, n)?;
        let predicted_edges = prediction.discrete * pairs(k as usize) as f64;
        Ok(BoundReport {
            n,
            k,
            delta,
            m: lm.exp2(),
            log2_m: lm,
            step_targets: step_targets(&schedule),
            delta_schedule: schedule,
            step_success_bounds: success,
            predicted_edges,
            predicted_density: prediction.discrete,
            predicted_density_integral: prediction.integral,
            alpha: prediction.alpha,
            integral_value: prediction.integral_value,
            size_threshold: threshold.size,
            size_coefficient: threshold.coefficient,
            expected_count: expected_dense_subgraph_count(n, k, delta)?,
            clique_number_estimate: clique_number_estimate(n).ok(),
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: [(&str, String); 14] = [
            ("n", self.n.to_string()),
            ("k", self.k.to_string()),
            ("delta", self.delta.to_string()),
            ("m", format!("{:.6}", self.m)),
            ("log2 m", format!("{:.6}", self.log2_m)),
            ("predicted edges", format!("{:.6}", self.predicted_edges)),
            ("predicted density", format!("{:.6}", self.predicted_density)),
            ("predicted density (integral)", format!("{:.6}", self.predicted_density_integral)),
            ("alpha", format!("{:.6}", self.alpha)),
            ("integral", format!("{:.10}", self.integral_value)),
            ("size threshold", format!("{:.6}", self.size_threshold)),
            ("size coefficient", format!("{:.6}", self.size_coefficient)),
            ("log2 expected count", format!("{:.6}", self.expected_count)),
            ("clique number estimate", self.clique_number_estimate.map_or("-".into(), |c| c.to_string())),
        ];
        for (name, value) in &rows {
            writeln!(f, "{name:<30} {value}")?;
        }
        writeln!(f)?;
        writeln!(f, "{:>4} {:>14} {:>6} {:>14}", "i", "delta_i", "target", "step bound")?;
        for (i, ((d, t), b)) in
            self.delta_schedule.iter().zip(&self.step_targets).zip(&self.step_success_bounds).enumerate()
        {
            writeln!(f, "{i:>4} {d:>14.10} {t:>6} {b:>14.10}")?;
        }
        Ok(())
    }
}
