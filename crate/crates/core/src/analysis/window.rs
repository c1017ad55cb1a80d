use std::ops::Range;

use crate::entropy::{EntropyResult, Method};
use crate::{Error, Result};

/// Sliding window length and fractional overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    length: usize,
    overlap: f64,
}

impl WindowSpec {
    pub fn new(length: usize, overlap: f64) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidParameter(
                "window length must be positive".into(),
            ));
        }
        if !(0.0..1.0).contains(&overlap) {
            return Err(Error::InvalidParameter(format!(
                "window overlap must lie in [0, 1), got {overlap}"
            )));
        }
        let spec = WindowSpec { length, overlap };
        if spec.step() == 0 {
            return Err(Error::InvalidParameter(format!(
                "window step rounds to zero for length {length} and overlap {overlap}"
            )));
        }
        Ok(spec)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// `round(length * (1 - overlap))`.
    pub fn step(&self) -> usize {
        (self.length as f64 * (1.0 - self.overlap)).round() as usize
    }

    /// `floor((n - length) / step) + 1`; a trailing partial window is dropped.
    pub fn count(&self, n: usize) -> Result<usize> {
        if self.length > n {
            return Err(Error::WindowTooLong {
                window: self.length,
                signal: n,
            });
        }
        Ok((n - self.length) / self.step() + 1)
    }

    /// Sample ranges of every full window.
    pub fn ranges(&self, n: usize) -> Result<impl Iterator<Item = Range<usize>>> {
        let count = self.count(n)?;
        let (step, length) = (self.step(), self.length);
        Ok((0..count).map(move |w| w * step..w * step + length))
    }
}

/// Entropy of one window. `result` is `None` when the window's entropy is
/// undefined (flat window under a sigmoidal mapping, SampEn without matches).
#[derive(Debug, Clone, PartialEq)]
pub struct WindowEntropy {
    pub index: usize,
    pub start: usize,
    pub result: Option<EntropyResult>,
}

impl WindowEntropy {
    pub fn value(&self) -> Option<f64> {
        self.result.map(|r| r.value())
    }
}

fn is_undefined(err: &Error) -> bool {
    matches!(
        err,
        Error::ConstantSignal | Error::UndefinedSampEn | Error::ZeroSd
    )
}

/// Entropy of every window. Mapping statistics are computed per window.
pub fn windowed_entropy(
    x: &[f64],
    spec: &WindowSpec,
    method: &Method,
) -> Result<Vec<WindowEntropy>> {
    crate::stats::validate_samples(x)?;
    spec.ranges(x.len())?
        .enumerate()
        .map(|(index, range)| {
            let start = range.start;
            match method.compute(&x[range]) {
                Ok(r) => Ok(WindowEntropy {
                    index,
                    start,
                    result: Some(r),
                }),
                Err(e) if is_undefined(&e) => Ok(WindowEntropy {
                    index,
                    start,
                    result: None,
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Per-window ratio `entropy(noisy) / entropy(clean)`.
///
/// Windows whose clean entropy is zero or undefined, or whose noisy entropy
/// is undefined, yield `None`.
pub fn nrm_ent_n(
    clean: &[f64],
    noisy: &[f64],
    spec: &WindowSpec,
    method: &Method,
) -> Result<Vec<Option<f64>>> {
    if clean.len() != noisy.len() {
        return Err(Error::LengthMismatch {
            left: clean.len(),
            right: noisy.len(),
        });
    }
    let reference = windowed_entropy(clean, spec, method)?;
    let test = windowed_entropy(noisy, spec, method)?;
    Ok(reference
        .iter()
        .zip(&test)
        .map(|(r, t)| match (r.value(), t.value()) {
            (Some(r), Some(t)) if r > 0.0 => Some(t / r),
            _ => None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::DispersionParams;
    use crate::mapping::MappingKind;
    use proptest::prelude::*;

    #[test]
    fn window_counts() {
        assert_eq!(
            WindowSpec::new(1500, 0.5).unwrap().count(15_000).unwrap(),
            19
        );
        assert_eq!(WindowSpec::new(100, 0.9).unwrap().count(2000).unwrap(), 191);
        assert!(matches!(
            WindowSpec::new(10, 0.0).unwrap().count(5),
            Err(Error::WindowTooLong { .. })
        ));
        assert!(WindowSpec::new(10, 1.0).is_err());
        assert!(WindowSpec::new(2, 0.9).is_err());
    }

    #[test]
    fn constant_signal_windows_are_zero() {
        let x = vec![3.0; 500];
        let method = Method::DispEn(DispersionParams::new(2, 6, 1, MappingKind::Linear));
        let w = windowed_entropy(&x, &WindowSpec::new(100, 0.5).unwrap(), &method).unwrap();
        assert_eq!(w.len(), 9);
        assert!(w.iter().all(|e| e.value() == Some(0.0)));
    }

    #[test]
    fn flat_window_under_logsig_is_missing() {
        let mut x = vec![0.0; 200];
        for (i, v) in x.iter_mut().enumerate().skip(100) {
            *v = (i as f64 * 0.7).sin();
        }
        let method = Method::DispEn(DispersionParams::dispen_default());
        let w = windowed_entropy(&x, &WindowSpec::new(100, 0.0).unwrap(), &method).unwrap();
        assert_eq!(w[0].result, None);
        assert!(w[1].result.is_some());
    }

    #[test]
    fn nrm_ent_n_of_identical_signals_is_one() {
        let x: Vec<f64> = (0..600).map(|i| ((i * 37 % 101) as f64).sin()).collect();
        let method = Method::DispEn(DispersionParams::dispen_default());
        let spec = WindowSpec::new(150, 0.5).unwrap();
        let r = nrm_ent_n(&x, &x, &spec, &method).unwrap();
        assert!(r.iter().all(|v| *v == Some(1.0)));
        assert!(matches!(
            nrm_ent_n(&x, &x[1..], &spec, &method),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn zero_clean_entropy_is_flagged() {
        let clean = vec![1.0; 100];
        let noisy: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let method = Method::DispEn(DispersionParams::new(2, 4, 1, MappingKind::Linear));
        let r = nrm_ent_n(&clean, &noisy, &WindowSpec::new(50, 0.0).unwrap(), &method).unwrap();
        assert_eq!(r, vec![None, None]);
    }

    proptest! {
        #[test]
        fn count_matches_enumeration(n in 1usize..3000, length in 1usize..400, overlap in 0.0f64..0.95) {
            let Ok(spec) = WindowSpec::new(length, overlap) else { return Ok(()) };
            match spec.count(n) {
                Ok(count) => {
                    let mut enumerated = 0;
                    let mut start = 0;
                    while start + length <= n {
                        enumerated += 1;
                        start += spec.step();
                    }
                    prop_assert_eq!(count, enumerated);
                    prop_assert_eq!(spec.ranges(n).unwrap().count(), count);
                }
                Err(_) => prop_assert!(length > n),
            }
        }
    }
}
