//! Shannon entropies over pattern histograms, plus sample entropy.
//!
//! All logarithms are natural. Pattern entropies carry a normalized value in
//! `[0, 1]`, obtained by dividing by the log of the alphabet size: `ln(c^m)`
//! for dispersion patterns, `ln((2c-1)^(m-1))` for frequency-based
//! dispersion patterns and `ln(m!)` for ordinal patterns.

use std::fmt;

use crate::mapping::MappingKind;
use crate::patterns::{
    dispersion_alphabet, dispersion_histogram, freq_dispersion_alphabet, freq_dispersion_histogram,
    permutation_alphabet, permutation_histogram, EmbeddingParams, PatternHistogram,
};
use crate::stats::{population_sd, validate_samples};
use crate::{Error, Result};

/// `-sum p ln p` over the occupied cells.
pub fn shannon(hist: &PatternHistogram) -> f64 {
    let h: f64 = hist.probabilities().map(|p| -p * p.ln()).sum();
    h.max(0.0)
}

/// Parameters shared by DispEn and FDispEn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DispersionParams {
    pub m: usize,
    pub c: usize,
    pub d: usize,
    pub mapping: MappingKind,
}

impl DispersionParams {
    pub fn new(m: usize, c: usize, d: usize, mapping: MappingKind) -> Self {
        DispersionParams { m, c, d, mapping }
    }

    /// `m = 2, c = 6, d = 1`, log-sigmoid mapping.
    pub fn dispen_default() -> Self {
        Self::new(2, 6, 1, MappingKind::LogSig)
    }

    /// `m = 3, c = 5, d = 1`, log-sigmoid mapping.
    pub fn fdispen_default() -> Self {
        Self::new(3, 5, 1, MappingKind::LogSig)
    }

    pub fn embedding(&self) -> Result<EmbeddingParams> {
        EmbeddingParams::new(self.m, self.d)
    }
}

/// Sample entropy parameters; `r` is a multiple of the signal SD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampEnParams {
    pub m: usize,
    pub r: f64,
}

impl SampEnParams {
    pub fn new(m: usize, r: f64) -> Self {
        SampEnParams { m, r }
    }
}

impl Default for SampEnParams {
    fn default() -> Self {
        SampEnParams { m: 2, r: 0.2 }
    }
}

/// An entropy method together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    DispEn(DispersionParams),
    FDispEn(DispersionParams),
    PerEn(EmbeddingParams),
    SampEn(SampEnParams),
}

impl Method {
    pub fn compute(&self, x: &[f64]) -> Result<EntropyResult> {
        match self {
            Method::DispEn(p) => dispen(x, p),
            Method::FDispEn(p) => fdispen(x, p),
            Method::PerEn(p) => peren(x, p),
            Method::SampEn(p) => sampen(x, p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::DispEn(_) => "dispen",
            Method::FDispEn(_) => "fdispen",
            Method::PerEn(_) => "peren",
            Method::SampEn(_) => "sampen",
        }
    }

    pub fn mapping(&self) -> Option<MappingKind> {
        match self {
            Method::DispEn(p) | Method::FDispEn(p) => Some(p.mapping),
            _ => None,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Method::DispEn(p) | Method::FDispEn(p) => p.m,
            Method::PerEn(p) => p.m,
            Method::SampEn(p) => p.m,
        }
    }

    pub fn c(&self) -> Option<usize> {
        match self {
            Method::DispEn(p) | Method::FDispEn(p) => Some(p.c),
            _ => None,
        }
    }

    pub fn d(&self) -> Option<usize> {
        match self {
            Method::DispEn(p) | Method::FDispEn(p) => Some(p.d),
            Method::PerEn(p) => Some(p.d),
            Method::SampEn(_) => None,
        }
    }

    pub fn r(&self) -> Option<f64> {
        match self {
            Method::SampEn(p) => Some(p.r),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::DispEn(p) | Method::FDispEn(p) => write!(
                f,
                "{}(m={}, c={}, d={}, {})",
                self.name(),
                p.m,
                p.c,
                p.d,
                p.mapping
            ),
            Method::PerEn(p) => write!(f, "peren(m={}, d={})", p.m, p.d),
            Method::SampEn(p) => write!(f, "sampen(m={}, r={})", p.m, p.r),
        }
    }
}

/// Raw entropy (nats), its normalized value where defined, and the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    pub raw: f64,
    pub normalized: Option<f64>,
    pub method: Method,
}

impl EntropyResult {
    fn from_histogram(hist: &PatternHistogram, alphabet: usize, method: Method) -> Self {
        let raw = shannon(hist);
        let normalized = if alphabet > 1 {
            (raw / (alphabet as f64).ln()).clamp(0.0, 1.0)
        } else {
            0.0
        };
        EntropyResult {
            raw,
            normalized: Some(normalized),
            method,
        }
    }

    /// Normalized value for pattern entropies, raw value for SampEn.
    pub fn value(&self) -> f64 {
        self.normalized.unwrap_or(self.raw)
    }
}

/// Dispersion entropy: mapping, dispersion patterns, histogram, Shannon entropy.
pub fn dispen(x: &[f64], params: &DispersionParams) -> Result<EntropyResult> {
    let embedding = params.embedding()?;
    let alphabet = dispersion_alphabet(params.m, params.c)?;
    let u = params.mapping.map(x, params.c)?;
    let hist = dispersion_histogram(&u, &embedding)?;
    Ok(EntropyResult::from_histogram(
        &hist,
        alphabet,
        Method::DispEn(*params),
    ))
}

/// Frequency-based dispersion entropy over adjacent class differences.
pub fn fdispen(x: &[f64], params: &DispersionParams) -> Result<EntropyResult> {
    let embedding = params.embedding()?;
    let alphabet = freq_dispersion_alphabet(params.m, params.c)?;
    let u = params.mapping.map(x, params.c)?;
    let hist = freq_dispersion_histogram(&u, &embedding)?;
    Ok(EntropyResult::from_histogram(
        &hist,
        alphabet,
        Method::FDispEn(*params),
    ))
}

/// Permutation entropy over ordinal patterns, normalized by `ln(m!)`.
pub fn peren(x: &[f64], params: &EmbeddingParams) -> Result<EntropyResult> {
    let alphabet = permutation_alphabet(params.m)?;
    let hist = permutation_histogram(x, params)?;
    Ok(EntropyResult::from_histogram(
        &hist,
        alphabet,
        Method::PerEn(*params),
    ))
}

/// Template match counts `(B, A)` at lengths `m` and `m + 1`.
///
/// Both lengths use the same `N - m` template start positions; pairs `i < j`
/// are counted once and a pair is similar when its Chebyshev distance is at
/// most `tolerance`.
pub fn sampen_counts(x: &[f64], m: usize, tolerance: f64) -> (u64, u64) {
    let n = x.len();
    if n <= m {
        return (0, 0);
    }
    let templates = n - m;
    let (mut b, mut a) = (0u64, 0u64);
    for i in 0..templates {
        for j in i + 1..templates {
            if (0..m).all(|k| (x[i + k] - x[j + k]).abs() <= tolerance) {
                b += 1;
                if (x[i + m] - x[j + m]).abs() <= tolerance {
                    a += 1;
                }
            }
        }
    }
    (b, a)
}

/// Sample entropy `-ln(A / B)` with tolerance `r * SD` (population SD).
pub fn sampen(x: &[f64], params: &SampEnParams) -> Result<EntropyResult> {
    validate_samples(x)?;
    if params.m < 1 {
        return Err(Error::InvalidParameter(
            "SampEn m must be at least 1".into(),
        ));
    }
    if !(params.r > 0.0 && params.r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "SampEn r must be positive, got {}",
            params.r
        )));
    }
    if x.len() <= params.m + 1 {
        return Err(Error::InsufficientSamples {
            needed: params.m + 2,
            got: x.len(),
        });
    }
    let sd = population_sd(x);
    if sd == 0.0 {
        return Err(Error::ZeroSd);
    }
    let (b, a) = sampen_counts(x, params.m, params.r * sd);
    if a == 0 || b == 0 {
        return Err(Error::UndefinedSampEn);
    }
    let raw = (b as f64).ln() - (a as f64).ln();
    Ok(EntropyResult {
        raw,
        normalized: None,
        method: Method::SampEn(*params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::histogram;
    use proptest::prelude::*;

    const FIG1: [f64; 10] = [3.6, 4.2, 1.2, 3.1, 4.2, 2.1, 3.3, 4.6, 6.8, 8.4];
    const FDISP_EXAMPLE: [f64; 10] = [3.0, 4.5, 6.2, 5.1, 3.2, 1.2, 3.5, 5.6, 4.9, 8.4];

    #[test]
    fn shannon_examples() {
        // 2/9 x3 and 1/9 x3
        let hist = histogram(vec![0, 0, 1, 1, 2, 2, 3, 4, 5], 9).unwrap();
        assert!((shannon(&hist) - 1.7351).abs() < 1e-4);
        let single = histogram(vec![3; 10], 9).unwrap();
        assert_eq!(shannon(&single), 0.0);
        let uniform = histogram(0..7, 7).unwrap();
        assert!((shannon(&uniform) - 7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn dispen_worked_example() {
        let r = dispen(&FIG1, &DispersionParams::new(2, 3, 1, MappingKind::Linear)).unwrap();
        assert!((r.raw - 1.7351).abs() < 1e-4, "{}", r.raw);
        assert!((r.normalized.unwrap() - 1.7351 / 9f64.ln()).abs() < 1e-4);
        assert!((r.normalized.unwrap() - 0.7897).abs() < 1e-4);
    }

    #[test]
    fn fdispen_worked_example() {
        let r = fdispen(
            &FDISP_EXAMPLE,
            &DispersionParams::new(3, 2, 1, MappingKind::Linear),
        )
        .unwrap();
        assert!((r.raw - 1.5596).abs() < 1e-4, "{}", r.raw);
    }

    #[test]
    fn constant_signals_have_zero_entropy() {
        let x = [4.0; 20];
        let p = DispersionParams::new(2, 6, 1, MappingKind::Linear);
        assert_eq!(dispen(&x, &p).unwrap().raw, 0.0);
        assert_eq!(fdispen(&x, &p).unwrap().raw, 0.0);
    }

    #[test]
    fn monotone_staircase_has_single_fdisp_pattern() {
        let x: Vec<f64> = (0..6).map(f64::from).collect();
        let r = fdispen(&x, &DispersionParams::new(3, 6, 1, MappingKind::Sorting)).unwrap();
        assert_eq!(r.raw, 0.0);
    }

    #[test]
    fn peren_examples() {
        let x: Vec<f64> = (0..50).map(f64::from).collect();
        for m in 2..6 {
            assert_eq!(
                peren(&x, &EmbeddingParams::new(m, 1).unwrap()).unwrap().raw,
                0.0
            );
        }
        let r = peren(
            &[1.0, 2.0, 3.0, 2.1, 1.0, 4.0],
            &EmbeddingParams::new(3, 1).unwrap(),
        )
        .unwrap();
        assert!((r.raw - 4f64.ln()).abs() < 1e-12);
        assert!((r.raw - 1.3863).abs() < 1e-4);
    }

    #[test]
    fn sampen_periodic_is_zero() {
        let x: Vec<f64> = (0..40).map(|i| (i % 2) as f64).collect();
        let r = sampen(&x, &SampEnParams::new(2, 0.2)).unwrap();
        assert_eq!(r.raw, 0.0);
        assert!(r.normalized.is_none());
    }

    #[test]
    fn sampen_error_paths() {
        assert!(matches!(
            sampen(&[3.0; 30], &SampEnParams::new(2, 0.2)),
            Err(Error::ZeroSd)
        ));
        // strictly increasing with a tiny tolerance: no template pairs match
        let x: Vec<f64> = (0..30).map(|i| (i * i) as f64).collect();
        assert!(matches!(
            sampen(&x, &SampEnParams::new(2, 0.001)),
            Err(Error::UndefinedSampEn)
        ));
        assert!(sampen(&[1.0, 2.0, 3.0], &SampEnParams::new(2, 0.2)).is_err());
        assert!(sampen(&[1.0, 2.0, 3.0, 4.0], &SampEnParams::new(2, 0.0)).is_err());
    }

    #[test]
    fn propagates_mapping_errors() {
        let p = DispersionParams::new(2, 6, 1, MappingKind::LogSig);
        assert!(matches!(dispen(&[1.0; 10], &p), Err(Error::ConstantSignal)));
        assert!(matches!(
            dispen(
                &[1.0, 2.0],
                &DispersionParams::new(3, 6, 1, MappingKind::Linear)
            ),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn method_accessors() {
        let m = Method::DispEn(DispersionParams::dispen_default());
        assert_eq!(m.name(), "dispen");
        assert_eq!((m.m(), m.c(), m.d()), (2, Some(6), Some(1)));
        assert_eq!(m.mapping(), Some(MappingKind::LogSig));
        let s = Method::SampEn(SampEnParams::default());
        assert_eq!((s.m(), s.c(), s.r()), (2, None, Some(0.2)));
        assert_eq!(s.to_string(), "sampen(m=2, r=0.2)");
    }

    fn signal() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0f64..100.0, 12..150)
    }

    proptest! {
        #[test]
        fn pattern_entropies_are_bounded(
            x in signal(), m in 2usize..4, c in 2usize..7, mapping in 0usize..5
        ) {
            let mapping = MappingKind::ALL[mapping];
            let params = DispersionParams::new(m, c, 1, mapping);
            for result in [dispen(&x, &params), fdispen(&x, &params)] {
                let r = result.unwrap();
                let alphabet = match r.method {
                    Method::DispEn(_) => (c as f64).powi(m as i32),
                    _ => ((2 * c - 1) as f64).powi(m as i32 - 1),
                };
                prop_assert!(r.raw >= 0.0 && r.raw <= alphabet.ln() + 1e-12);
                let n = r.normalized.unwrap();
                prop_assert!((0.0..=1.0).contains(&n));
            }
            let r = peren(&x, &EmbeddingParams::new(m, 1).unwrap()).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.normalized.unwrap()));
        }

        #[test]
        fn peren_invariant_under_monotone_transform(x in signal(), m in 2usize..5) {
            let params = EmbeddingParams::new(m, 1).unwrap();
            let y: Vec<f64> = x.iter().map(|v| (v / 50.0).exp() * 3.0 - 1.0).collect();
            // exp can merge values that were distinct; only compare when the transform kept them apart
            let distinct = |s: &[f64]| {
                let mut t = s.to_vec();
                t.sort_by(f64::total_cmp);
                t.windows(2).filter(|w| w[0] == w[1]).count()
            };
            prop_assume!(distinct(&x) == distinct(&y));
            prop_assert_eq!(peren(&x, &params).unwrap().raw, peren(&y, &params).unwrap().raw);
        }

        #[test]
        fn results_are_deterministic(x in signal()) {
            let p = DispersionParams::dispen_default();
            let a = dispen(&x, &p).unwrap();
            let b = dispen(&x, &p).unwrap();
            prop_assert_eq!(a.raw.to_bits(), b.raw.to_bits());
        }
    }
}
