//! Binary Shannon entropy (base 2) and its inverse on `[0, 1/2]`.

use crate::error::{Error, Result};

/// Absolute tolerance of [`inverse_entropy`].
pub const INVERSE_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn h(d: f64) -> f64 {
    if d <= 0.0 || d >= 1.0 {
        0.0
    } else {
        -d * d.log2() - (1.0 - d) * (1.0 - d).log2()
    }
}

/// `H(d) = -d log2 d - (1-d) log2 (1-d)`, with `0 log 0 = 0`.
pub fn entropy(d: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::arg(format!("entropy argument {d} outside [0, 1]")));
    }
    Ok(h(d))
}

pub(crate) fn h_inv(y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > INVERSE_TOL {
        let mid = 0.5 * (lo + hi);
        if h(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `d` in `[0, 1/2]` with `H(d) = y`, by bisection.
pub fn inverse_entropy(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::arg(format!("inverse entropy argument {y} outside [0, 1]")));
    }
    Ok(h_inv(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_points() {
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        assert_eq!(entropy(0.5).unwrap(), 1.0);
        let quarter = 2.0 - 0.75 * 3f64.log2();
        assert!((entropy(0.25).unwrap() - quarter).abs() < 1e-15);
        assert!((quarter - 0.811_278_124_459_132_9).abs() < 1e-15);
        assert_eq!(inverse_entropy(0.0).unwrap(), 0.0);
        assert_eq!(inverse_entropy(1.0).unwrap(), 0.5);
    }

    #[test]
    fn rejects_out_of_range() {
        for x in [-1e-9, 1.0 + 1e-9, f64::NAN] {
            assert!(entropy(x).is_err());
            assert!(inverse_entropy(x).is_err());
        }
    }

    #[test]
    fn known_inverse() {
        // H^{-1}(1/2), from a 30-digit bisection.
        assert!((inverse_entropy(0.5).unwrap() - 0.110_027_864_438_359_55).abs() < 1e-12);
        assert!((inverse_entropy(entropy(0.3).unwrap()).unwrap() - 0.3).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn symmetric(d in 0.0f64..=1.0) {
            prop_assert!((entropy(d).unwrap() - entropy(1.0 - d).unwrap()).abs() < 1e-14);
        }

        #[test]
        fn increasing_on_lower_half(a in 0.0f64..0.5, b in 0.0f64..0.5) {
            prop_assume!(a < b);
            prop_assert!(entropy(a).unwrap() < entropy(b).unwrap());
        }

        #[test]
        fn round_trip(d in 0.0f64..=0.5) {
            prop_assert!((inverse_entropy(entropy(d).unwrap()).unwrap() - d).abs() <= 1e-9);
        }
    }
}
