//! Small descriptive-statistics helpers shared by the entropy and analysis code.
//!
//! Population moments (divide by `n`) are used everywhere except
//! [`sample_variance`], which backs the Hedges' g effect size.

use crate::{Error, Result};

/// Checks the `Signal` invariants on a borrowed slice: non-empty, all finite.
pub fn validate_samples(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptySignal);
    }
    match x.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFiniteSample { index }),
        None => Ok(()),
    }
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Population variance, two-pass.
pub fn population_variance(x: &[f64]) -> f64 {
    let mu = mean(x);
    x.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / x.len() as f64
}

pub fn population_sd(x: &[f64]) -> f64 {
    population_variance(x).sqrt()
}

/// Unbiased (n - 1) variance. Returns 0 for fewer than two values.
pub fn sample_variance(x: &[f64]) -> f64 {
    if x.len() < 2 {
        return 0.0;
    }
    let mu = mean(x);
    x.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (x.len() - 1) as f64
}

/// Median of a non-empty slice (mean of the two central values for even length).
pub fn median(x: &[f64]) -> f64 {
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Mean square of the samples.
pub fn power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_small_sets() {
        assert_eq!(mean(&[1.0, 3.0]), 2.0);
        assert_eq!(population_sd(&[-1.0, 1.0]), 1.0);
        assert_eq!(sample_variance(&[-1.0, 1.0]), 2.0);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(matches!(validate_samples(&[]), Err(Error::EmptySignal)));
        assert!(matches!(
            validate_samples(&[1.0, f64::NAN]),
            Err(Error::NonFiniteSample { index: 1 })
        ));
        assert!(matches!(
            validate_samples(&[f64::INFINITY]),
            Err(Error::NonFiniteSample { index: 0 })
        ));
    }
}
