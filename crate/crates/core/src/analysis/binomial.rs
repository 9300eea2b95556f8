//! Upper tails of Binomial(i, 1/2) and related binomial-coefficient helpers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `i` evaluated in exact integer arithmetic.
pub const EXACT_LIMIT: u64 = 64;

/// `P[Bin(i, 1/2) >= t] = sum_{j=t}^{i} C(i, j) / 2^i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailProbability {
    pub trials: u64,
    pub threshold: u64,
    pub value: f64,
    pub log2_value: f64,
    exact_numerator: Option<u128>,
}

impl TailProbability {
    /// `(numerator, e)` with the tail equal to `numerator / 2^e`, when `i` is
    /// within [`EXACT_LIMIT`].
    pub fn exact(&self) -> Option<(u128, u32)> {
        self.exact_numerator.map(|num| (num, self.trials as u32))
    }
}

pub fn binomial_tail(i: u64, t: u64) -> Result<TailProbability> {
    if t > i {
        return Err(Error::arg(format!("tail threshold {t} exceeds trial count {i}")));
    }
    if i <= EXACT_LIMIT {
        let mut c: u128 = 1;
        let mut num: u128 = if t == 0 { 1 } else { 0 };
        for j in 0..i as u128 {
            c = c * (i as u128 - j) / (j + 1);
            if j + 1 >= t as u128 {
                num += c;
            }
        }
        let value = num as f64 * 0.5f64.powi(i as i32);
        return Ok(TailProbability {
            trials: i,
            threshold: t,
            value,
            log2_value: (num as f64).log2() - i as f64,
            exact_numerator: Some(num),
        });
    }
    let (value, log2_value) = log_domain_tail(i, t);
    Ok(TailProbability { trials: i, threshold: t, value, log2_value, exact_numerator: None })
}

/// Sum of `C(i, j) / C(i, t)` for `j >= t`, valid when the terms decrease
/// from `j = t` on (`2t + 1 >= i`).
fn decreasing_ratio_sum(i: u64, t: u64) -> f64 {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for j in t..i {
        term *= (i - j) as f64 / (j + 1) as f64;
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    sum
}

fn log_domain_tail(i: u64, t: u64) -> (f64, f64) {
    if t == 0 {
        return (1.0, 0.0);
    }
    if 2 * t + 1 >= i {
        let log2 = log2_binomial(i, t) + decreasing_ratio_sum(i, t).log2() - i as f64;
        (log2.exp2(), log2)
    } else {
        // P[X >= t] = 1 - P[X >= i - t + 1] by symmetry; the latter is < 1/2.
        let s = i - t + 1;
        let upper = (log2_binomial(i, s) + decreasing_ratio_sum(i, s).log2() - i as f64).exp2();
        let value = 1.0 - upper;
        (value, value.log2())
    }
}

/// `log2 C(n, k)` as a sum of `log2((n - j) / (j + 1))`.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|j| ((n - j) as f64 / (j + 1) as f64).log2()).sum()
}

pub(crate) fn binomial_big(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for j in 0..k {
        c = c * (n - j) / (j + 1);
    }
    c
}

/// `sum_{j=t}^{i} C(i, j)` exactly.
pub(crate) fn tail_numerator_big(i: u64, t: u64) -> BigUint {
    let mut c = BigUint::one();
    let mut num = if t == 0 { BigUint::one() } else { BigUint::zero() };
    for j in 0..i {
        c = c * (i - j) / (j + 1);
        if j + 1 >= t {
            num += &c;
        }
    }
    num
}

pub(crate) fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in u64") as f64).log2();
    }
    let top = (x >> (bits - 64)).to_u64().expect("64 bits");
    (top as f64).log2() + (bits - 64) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_values() {
        for i in 0..80 {
            assert_eq!(binomial_tail(i, 0).unwrap().value, 1.0);
        }
        let t = binomial_tail(2, 1).unwrap();
        assert_eq!(t.exact(), Some((3, 2)));
        assert_eq!(t.value, 0.75);
        assert!(binomial_tail(3, 4).is_err());
    }

    #[test]
    fn twenty_trials_by_enumeration() {
        let hits = (0u32..1 << 20).filter(|x| x.count_ones() >= 15).count() as u128;
        assert_eq!(binomial_tail(20, 15).unwrap().exact(), Some((hits, 20)));
    }

    #[test]
    fn log2_big_values() {
        assert_eq!(log2_big(&BigUint::from(1u32)), 0.0);
        assert_eq!(log2_big(&(BigUint::one() << 300u32)), 300.0);
        let x = BigUint::from(3u32) << 200u32;
        assert!((log2_big(&x) - (200.0 + 3f64.log2())).abs() < 1e-13);
    }

    #[test]
    fn log_domain_matches_exact_beyond_limit() {
        for i in [65u64, 100, 177, 256, 400] {
            for t in 0..=i {
                let exact = log2_big(&tail_numerator_big(i, t)) - i as f64;
                let got = binomial_tail(i, t).unwrap();
                // relative error of the value = ln 2 * absolute error of log2
                assert!(
                    (got.log2_value - exact).abs() * std::f64::consts::LN_2 <= 1e-10,
                    "i={i} t={t}: {} vs {exact}",
                    got.log2_value
                );
            }
        }
    }

    proptest! {
        #[test]
        fn exact_and_big_agree(i in 0u64..=64, tf in 0.0f64..=1.0) {
            let t = (i as f64 * tf) as u64;
            let (num, e) = binomial_tail(i, t).unwrap().exact().unwrap();
            prop_assert_eq!(BigUint::from(num), tail_numerator_big(i, t));
            prop_assert_eq!(e as u64, i);
        }

        #[test]
        fn binomial_big_matches_log(n in 1u64..500, kf in 0.0f64..=1.0) {
            let k = (n as f64 * kf) as u64;
            prop_assert!((log2_big(&binomial_big(n, k)) - log2_binomial(n, k)).abs() < 1e-10);
        }
    }
}
