use crate::stats::{mean, population_sd, sample_variance};
use crate::{Error, Result};

/// Mean and population SD over the defined values of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    /// Number of defined values that entered the summary.
    pub n: usize,
}

impl Summary {
    /// Single-pass (Welford) accumulation; `None` entries are skipped.
    pub fn of<I>(values: I) -> Self
    where
        I: IntoIterator<Item = Option<f64>>,
    {
        let (mut n, mut mu, mut m2) = (0usize, 0.0f64, 0.0f64);
        for v in values.into_iter().flatten() {
            n += 1;
            let delta = v - mu;
            mu += delta / n as f64;
            m2 += delta * (v - mu);
        }
        if n == 0 {
            return Summary {
                mean: None,
                sd: None,
                n,
            };
        }
        Summary {
            mean: Some(mu),
            sd: Some((m2 / n as f64).max(0.0).sqrt()),
            n,
        }
    }
}

/// Coefficient of variation, population SD over mean.
pub fn cv(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySignal);
    }
    let mu = mean(values);
    if mu == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(population_sd(values) / mu)
}

/// Hedges' g: standardized mean difference `(mean(a) - mean(b)) / s_pooled`
/// with sample variances, times the correction `1 - 3 / (4 (n_a + n_b) - 9)`.
pub fn hedges_g(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() < 2 {
        return Err(Error::GroupTooSmall(a.len()));
    }
    if b.len() < 2 {
        return Err(Error::GroupTooSmall(b.len()));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let pooled_var =
        ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / (na + nb - 2.0);
    if pooled_var == 0.0 {
        return Err(Error::ZeroPooledVariance);
    }
    let correction = 1.0 - 3.0 / (4.0 * (na + nb) - 9.0);
    Ok((mean(a) - mean(b)) / pooled_var.sqrt() * correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cv_examples() {
        assert_eq!(cv(&[2.0, 2.0, 2.0]).unwrap(), 0.0);
        assert_eq!(cv(&[1.0, 3.0]).unwrap(), 0.5);
        assert!(matches!(cv(&[-1.0, 1.0]), Err(Error::ZeroMean)));
    }

    #[test]
    fn hedges_examples() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(hedges_g(&a, &a).unwrap(), 0.0);

        // b = a shifted by one pooled SD (= 1): |g| = J
        let b = [2.0, 3.0, 4.0];
        let j = 1.0 - 3.0 / (4.0 * 6.0 - 9.0);
        assert!((hedges_g(&a, &b).unwrap().abs() - j).abs() < 1e-12);

        let a = [10.0, 12.0, 14.0, 16.0];
        let b = [20.0, 22.0, 24.0, 26.0];
        let expected = -10.0 / (20.0f64 / 3.0).sqrt() * (1.0 - 3.0 / 23.0);
        let g = hedges_g(&a, &b).unwrap();
        assert!((g - expected).abs() < 1e-12);
        assert!((g + 3.368).abs() < 1e-3);

        assert!(matches!(hedges_g(&[1.0], &b), Err(Error::GroupTooSmall(1))));
        assert!(matches!(
            hedges_g(&[1.0, 1.0], &[1.0, 1.0]),
            Err(Error::ZeroPooledVariance)
        ));
    }

    #[test]
    fn summary_skips_missing() {
        let s = Summary::of([Some(1.0), None, Some(3.0)]);
        assert_eq!((s.mean, s.sd, s.n), (Some(2.0), Some(1.0), 2));
        let empty = Summary::of([None, None]);
        assert_eq!((empty.mean, empty.sd, empty.n), (None, None, 0));
    }

    proptest! {
        #[test]
        fn summary_matches_two_pass(values in prop::collection::vec(-1e3f64..1e3, 1..200)) {
            let s = Summary::of(values.iter().map(|&v| Some(v)));
            let mu = values.iter().sum::<f64>() / values.len() as f64;
            let var = values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / values.len() as f64;
            let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            prop_assert!((s.mean.unwrap() - mu).abs() <= 1e-12 * scale);
            prop_assert!((s.sd.unwrap() - var.sqrt()).abs() <= 1e-12 * scale);
        }

        #[test]
        fn hedges_is_antisymmetric(
            a in prop::collection::vec(-10.0f64..10.0, 2..20),
            b in prop::collection::vec(-10.0f64..10.0, 2..20),
        ) {
            if let (Ok(ab), Ok(ba)) = (hedges_g(&a, &b), hedges_g(&b, &a)) {
                prop_assert_eq!(ab, -ba);
            }
        }
    }
}
