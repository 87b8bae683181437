//! Closed-form lower bounds and their comparison with enumerated counts.

use serde::Serialize;

use crate::census::{is_k_neighborly, neighborliness};
use crate::enumeration::{cyclic_inseparable_realization, enumerate_regular_with, EnumOptions};
use crate::error::{Error, Result};
use crate::lifting::contraction;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `prod_{m=d}^{n-1} C(m - d + k, k)`: regular triangulations of `n` points
/// in `R^d` built by inseparable splits over a `k`-neighborly vertex figure.
pub fn product_bound(d: usize, n: usize, k: usize) -> u128 {
    (d..n).map(|m| binomial(m - d + k, k)).product()
}

/// `n! / (d + 2)!`: labeled types from double lifts of an `n`-point
/// neighborly configuration in even dimension `d`.
pub fn census_bound(n: usize, d: usize) -> u128 {
    if n < d + 2 {
        return 1;
    }
    (d as u128 + 3..=n as u128).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub construction: String,
    pub d: usize,
    pub n: usize,
    /// Neighborliness of the vertex figure at the last point.
    pub k: usize,
    pub bound: u128,
    pub count: usize,
    pub budget_hit: bool,
    pub status: &'static str,
}

/// Builds the inseparable cyclic realization, measures the neighborliness
/// of its vertex figure at `q`, and compares the product bound with the
/// enumerated number of regular triangulations.
pub fn verify_cyclic(d: usize, n: usize, opts: &EnumOptions) -> Result<BoundsReport> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d >= 2, got {d}")));
    }
    let real = cyclic_inseparable_realization(d, n)?;
    let figure = contraction(&real.config, n)?;
    let k = neighborliness(&figure)?;
    debug_assert!(is_k_neighborly(&figure, k)?.holds);
    let bound = product_bound(d, n, k);
    let e = enumerate_regular_with(&real.config, opts)?;
    let pass = e.count() as u128 >= bound;
    Ok(BoundsReport {
        construction: "cyclic".into(),
        d,
        n,
        k,
        bound,
        count: e.count(),
        budget_hit: e.budget_hit,
        status: if pass { "PASS" } else { "FAIL" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(product_bound(3, 6, 1), 6);
        assert_eq!(product_bound(3, 7, 1), 24);
        assert_eq!(product_bound(5, 8, 2), 1 * 3 * 6);
        assert_eq!(census_bound(6, 2), 30);
        assert_eq!(census_bound(4, 2), 1);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn cyclic_three_six() {
        let r = verify_cyclic(3, 6, &EnumOptions::default()).unwrap();
        assert_eq!((r.k, r.bound, r.count, r.status), (1, 6, 6, "PASS"));
    }
}
