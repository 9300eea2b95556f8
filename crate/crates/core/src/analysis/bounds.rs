//! Closed-form and numerical bounds for G(n, 1/2).
//!
//! `log` is base 2 throughout; the only natural logarithm is the `ln` in
//! `m = n / (2k ln(log2 n))`. Vanishing `o(1)` terms are dropped.

use serde::{Deserialize, Serialize};

use super::binomial::{binomial_big, binomial_tail, log2_big, log2_binomial, tail_numerator_big};
use super::entropy::{h, h_inv};
use super::quadrature::adaptive_simpson;
use super::required_edges;
use crate::error::{Error, Result};
use crate::graph::pairs;

/// Default absolute tolerance for [`density_integral`].
pub const DEFAULT_TOL: f64 = 1e-8;

/// Largest `C(k, 2)` for which the first-moment expectation is computed with
/// big integers.
pub const EXACT_PAIRS_LIMIT: u64 = 400;

/// `log2 m` with `m = n / (2k ln(log2 n))`; fails unless `m > 1`.
pub fn log2_m(n: u64, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::arg("k must be positive"));
    }
    let lnlog = (n as f64).log2().ln();
    let m = if lnlog > 0.0 { n as f64 / (2.0 * k as f64 * lnlog) } else { f64::INFINITY };
    if !(m > 1.0 && m.is_finite()) {
        return Err(Error::NTooSmall { n, m });
    }
    Ok(m.log2())
}

/// δ_i for a given `log2 m`: zero while `i <= log2 m`, else `H^{-1}(1 - log2 m / i)`.
pub fn schedule_for_log2_m(log2_m: f64, k: u64) -> Vec<f64> {
    (0..k)
        .map(|i| {
            if i == 0 {
                return 0.0;
            }
            let y = 1.0 - log2_m / i as f64;
            if y <= 0.0 {
                0.0
            } else {
                h_inv(y)
            }
        })
        .collect()
}

/// Smallest δ_i per step for which a vertex with `(1 - δ_i) i` edges into
/// the current set is likely to exist among the `n / k` candidates.
pub fn delta_schedule(n: u64, k: u64) -> Result<Vec<f64>> {
    Ok(schedule_for_log2_m(log2_m(n, k)?, k))
}

/// Per-step edge targets `ceil((1 - δ_i) i)`.
pub fn step_targets(schedule: &[f64]) -> Vec<u64> {
    schedule.iter().enumerate().map(|(i, &d)| required_edges(d, i as u64)).collect()
}

/// `1 - (1 - P[Bin(i,1/2) >= ceil((1-d) i)])^{floor(n/k)}`: the chance that
/// the best of `n / k` fresh candidates reaches the step-`i` target.
pub fn lemma1_success_bound(n: u64, k: u64, i: u64, d: f64) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::arg(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if i >= k {
        return Err(Error::arg(format!("step {i} out of range for k = {k}")));
    }
    if !(0.0..=0.5).contains(&d) {
        return Err(Error::arg(format!("delta {d} outside [0, 1/2]")));
    }
    let q = binomial_tail(i, required_edges(d, i))?.value;
    if q >= 1.0 {
        return Ok(1.0);
    }
    let candidates = (n / k) as f64;
    Ok(-(candidates * (-q).ln_1p()).exp_m1())
}

/// `sum_{i<k} (1 - δ_i) i`.
pub fn predicted_edges_lower_bound(n: u64, k: u64) -> Result<f64> {
    Ok(edges_from_schedule(&delta_schedule(n, k)?))
}

pub(crate) fn edges_from_schedule(schedule: &[f64]) -> f64 {
    schedule.iter().enumerate().map(|(i, d)| (1.0 - d) * i as f64).sum()
}

/// The integrand `(1 + x) H^{-1}(1 - 1/(1 + x))`.
pub fn density_integrand(x: f64) -> f64 {
    (1.0 + x) * h_inv(1.0 - 1.0 / (1.0 + x))
}

/// `∫_0^α (1 + x) H^{-1}(1 - 1/(1 + x)) dx` by adaptive Simpson.
pub fn density_integral(alpha: f64, tol: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::arg(format!("alpha must be a finite value >= 0, got {alpha}")));
    }
    adaptive_simpson(density_integrand, 0.0, alpha, tol)
}

/// Both density predictions for the greedy output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPrediction {
    /// `predicted_edges_lower_bound / C(k, 2)`.
    pub discrete: f64,
    /// `1 - (log2 m)^2 / C(k, 2) * integral(α)`.
    pub integral: f64,
    /// `(k - 1) / log2 m - 1`.
    pub alpha: f64,
    pub integral_value: f64,
}

pub fn predicted_density(n: u64, k: u64) -> Result<DensityPrediction> {
    predicted_density_with_tol(n, k, DEFAULT_TOL)
}

pub fn predicted_density_with_tol(n: u64, k: u64, tol: f64) -> Result<DensityPrediction> {
    if k < 2 {
        return Err(Error::arg("density needs k >= 2"));
    }
    let lm = log2_m(n, k)?;
    let total = pairs(k as usize) as f64;
    let discrete = edges_from_schedule(&schedule_for_log2_m(lm, k)) / total;
    let alpha = (k - 1) as f64 / lm - 1.0;
    let (integral, integral_value) = if alpha <= 0.0 {
        (1.0, 0.0)
    } else {
        let value = density_integral(alpha, tol)?;
        (1.0 - lm * lm / total * value, value)
    };
    Ok(DensityPrediction { discrete, integral, alpha, integral_value })
}

/// `ceil(2 log2 n - 2 log2 log2 n - 1)`.
pub fn clique_number_estimate(n: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::arg(format!("clique number estimate needs n >= 4, got {n}")));
    }
    let l = (n as f64).log2();
    Ok((2.0 * l - 2.0 * l.log2() - 1.0).ceil() as u64)
}

/// `log2 E[#{S : |S| = k, S has at least ceil((1-δ) C(k,2)) edges}]`
/// `= log2( C(n, k) * P[Bin(C(k,2), 1/2) >= ceil((1-δ) C(k,2))] )`.
pub fn expected_dense_subgraph_count(n: u64, k: u64, delta: f64) -> Result<f64> {
    if k < 2 || k > n {
        return Err(Error::arg(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
    }
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::arg(format!("delta {delta} outside [0, 1/2]")));
    }
    let total = pairs(k as usize);
    let need = required_edges(delta, total);
    if total <= EXACT_PAIRS_LIMIT {
        let count = binomial_big(n, k) * tail_numerator_big(total, need);
        Ok(log2_big(&count) - total as f64)
    } else {
        Ok(log2_binomial(n, k) + binomial_tail(total, need)?.log2_value)
    }
}

/// Size above which no subgraph of density `1 - δ` is expected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeThreshold {
    /// `(2 log2 n + 2 log2 e) / (1 - H(δ)) + 1`.
    pub size: f64,
    /// `2 / (1 - H(δ))`, the multiplier of `log2 n`.
    pub coefficient: f64,
}

pub fn size_threshold(delta: f64, n: u64) -> Result<SizeThreshold> {
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::DegenerateThreshold(delta));
    }
    if n < 2 {
        return Err(Error::arg(format!("size threshold needs n >= 2, got {n}")));
    }
    let gap = 1.0 - h(delta);
    let size = (2.0 * (n as f64).log2() + 2.0 * std::f64::consts::LOG2_E) / gap + 1.0;
    Ok(SizeThreshold { size, coefficient: 2.0 / gap })
}

/// Ratio between the non-existence size and the greedy's `2 log2 n`.
pub fn gap_ratio(delta: f64) -> Result<f64> {
    Ok(size_threshold(delta, 2)?.coefficient / 2.0)
}
