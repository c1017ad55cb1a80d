//! Pattern encoders and histograms.
//!
//! Three pattern families are supported, each encoded as a dense integer code
//! so that counting is a single array increment:
//!
//! * dispersion patterns: the `m` class labels of an embedded vector, read as
//!   a base-`c` number (alphabet `c^m`);
//! * frequency-based dispersion patterns: the `m - 1` adjacent differences of
//!   a dispersion pattern, each shifted into `0..2c-1` and read in base
//!   `2c - 1` (alphabet `(2c-1)^(m-1)`);
//! * ordinal patterns: the permutation that sorts an embedded window of the
//!   raw signal, as a Lehmer code (alphabet `m!`).

use std::collections::BTreeMap;

use crate::mapping::ClassSeries;
use crate::stats::validate_samples;
use crate::{Error, Result};

/// Above this many cells a histogram switches to sparse storage.
pub const DENSE_ALPHABET_LIMIT: usize = 10_000_000;

/// Embedding dimension `m` and time delay `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EmbeddingParams {
    pub m: usize,
    pub d: usize,
}

impl EmbeddingParams {
    pub fn new(m: usize, d: usize) -> Result<Self> {
        let params = EmbeddingParams { m, d };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!(
                "embedding dimension must be at least 2, got {}",
                self.m
            )));
        }
        if self.d < 1 {
            return Err(Error::InvalidParameter(
                "time delay must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Span of one embedded vector, `(m - 1) d + 1`.
    pub fn span(&self) -> usize {
        (self.m - 1) * self.d + 1
    }

    /// Number of embedded vectors `N - (m - 1) d` for a series of length `n`.
    pub fn windows(&self, n: usize) -> Result<usize> {
        self.validate()?;
        let span = self.span();
        if n < span {
            return Err(Error::InsufficientSamples {
                needed: span,
                got: n,
            });
        }
        Ok(n - span + 1)
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::InvalidParameter(format!("alphabet {base}^{exp} overflows")))
}

/// `c^m`.
pub fn dispersion_alphabet(m: usize, c: usize) -> Result<usize> {
    checked_pow(c, m)
}

/// `(2c - 1)^(m - 1)`.
pub fn freq_dispersion_alphabet(m: usize, c: usize) -> Result<usize> {
    checked_pow(2 * c - 1, m.saturating_sub(1))
}

/// `m!`.
pub fn permutation_alphabet(m: usize) -> Result<usize> {
    (1..=m)
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .ok_or_else(|| Error::InvalidParameter(format!("{m}! overflows the pattern alphabet")))
}

/// A dispersion pattern, stored as its base-`c` code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DispersionPattern(pub usize);

impl DispersionPattern {
    /// Code of the digit vector `v_0..v_{m-1}`, each in `1..=c`.
    pub fn from_digits(digits: &[u32], c: usize) -> Self {
        let code = digits
            .iter()
            .fold(0usize, |acc, &v| acc * c + (v as usize - 1));
        DispersionPattern(code)
    }

    pub fn code(self) -> usize {
        self.0
    }

    pub fn digits(self, m: usize, c: usize) -> Vec<u32> {
        let mut out = vec![0u32; m];
        let mut code = self.0;
        for slot in out.iter_mut().rev() {
            *slot = (code % c) as u32 + 1;
            code /= c;
        }
        out
    }
}

/// A frequency-based dispersion pattern, stored as its base-`(2c - 1)` code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreqDispersionPattern(pub usize);

impl FreqDispersionPattern {
    /// Code of the difference vector `delta_1..delta_{m-1}`, each in `-(c-1)..=c-1`.
    pub fn from_differences(deltas: &[i32], c: usize) -> Self {
        let base = 2 * c - 1;
        let shift = c as i64 - 1;
        let code = deltas.iter().fold(0usize, |acc, &delta| {
            acc * base + (delta as i64 + shift) as usize
        });
        FreqDispersionPattern(code)
    }

    pub fn code(self) -> usize {
        self.0
    }

    pub fn differences(self, m: usize, c: usize) -> Vec<i32> {
        let base = 2 * c - 1;
        let mut out = vec![0i32; m - 1];
        let mut code = self.0;
        for slot in out.iter_mut().rev() {
            *slot = (code % base) as i32 - (c as i32 - 1);
            code /= base;
        }
        out
    }
}

/// An ordinal pattern, stored as the Lehmer code of its sorting permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalPattern(pub usize);

impl OrdinalPattern {
    pub fn code(self) -> usize {
        self.0
    }

    /// The permutation `p` with `window[p[0]] <= window[p[1]] <= ...`.
    pub fn permutation(self, m: usize) -> Vec<usize> {
        let mut remaining: Vec<usize> = (0..m).collect();
        let mut code = self.0;
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let f = factorial(m - 1 - i);
            let k = code / f;
            code %= f;
            out.push(remaining.remove(k));
        }
        out
    }

    /// One-based rank of each window position (the inverse of [`Self::permutation`]).
    pub fn ranks(self, m: usize) -> Vec<usize> {
        let perm = self.permutation(m);
        let mut ranks = vec![0; m];
        for (rank, &pos) in perm.iter().enumerate() {
            ranks[pos] = rank + 1;
        }
        ranks
    }

    /// Code of a permutation of `0..m`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        OrdinalPattern(lehmer_code(perm))
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn lehmer_code(perm: &[usize]) -> usize {
    let m = perm.len();
    let mut code = 0;
    for i in 0..m {
        let smaller_after = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count();
        code = code * (m - i) + smaller_after;
    }
    code
}

/// Dispersion patterns of every embedded vector, in order.
///
/// With `d = 1` the code is updated in place (drop the leading digit, shift,
/// append) so the cost is independent of `m`.
pub fn encode_dispersion(
    u: &ClassSeries,
    params: &EmbeddingParams,
) -> Result<Vec<DispersionPattern>> {
    let count = params.windows(u.len())?;
    let c = u.class_count();
    let classes = u.classes();
    let m = params.m;
    dispersion_alphabet(m, c)?;
    let mut out = Vec::with_capacity(count);
    if params.d == 1 {
        let high = c.pow(m as u32 - 1);
        let mut code = classes[..m - 1]
            .iter()
            .fold(0usize, |acc, &v| acc * c + (v as usize - 1));
        for &v in &classes[m - 1..] {
            code = (code % high) * c + (v as usize - 1);
            out.push(DispersionPattern(code));
        }
    } else {
        let d = params.d;
        for i in 0..count {
            let code = (0..m).fold(0usize, |acc, k| acc * c + (classes[i + k * d] as usize - 1));
            out.push(DispersionPattern(code));
        }
    }
    Ok(out)
}

/// Frequency-based dispersion patterns: adjacent differences
/// `u[i + (k+1) d] - u[i + k d]` of every embedded vector.
pub fn encode_freq_dispersion(
    u: &ClassSeries,
    params: &EmbeddingParams,
) -> Result<Vec<FreqDispersionPattern>> {
    let count = params.windows(u.len())?;
    let c = u.class_count();
    let classes = u.classes();
    let (m, d) = (params.m, params.d);
    freq_dispersion_alphabet(m, c)?;
    let base = 2 * c - 1;
    let shift = c - 1;
    let digit = |i: usize| classes[i + d] as usize + shift - classes[i] as usize;
    let mut out = Vec::with_capacity(count);
    if d == 1 {
        let high = base.pow(m as u32 - 2);
        let mut code = (0..m - 2).fold(0usize, |acc, k| acc * base + digit(k));
        for i in 0..count {
            code = (code % high) * base + digit(i + m - 2);
            out.push(FreqDispersionPattern(code));
        }
    } else {
        for i in 0..count {
            let code = (0..m - 1).fold(0usize, |acc, k| acc * base + digit(i + k * d));
            out.push(FreqDispersionPattern(code));
        }
    }
    Ok(out)
}

/// Ordinal patterns of every embedded window of `x`.
///
/// Each window is argsorted ascending with a stable sort, so equal values
/// rank in their order of appearance.
pub fn encode_permutation(x: &[f64], params: &EmbeddingParams) -> Result<Vec<OrdinalPattern>> {
    validate_samples(x)?;
    let count = params.windows(x.len())?;
    let (m, d) = (params.m, params.d);
    permutation_alphabet(m)?;
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        order.clear();
        order.extend(0..m);
        order.sort_by(|&a, &b| x[i + a * d].total_cmp(&x[i + b * d]));
        out.push(OrdinalPattern(lehmer_code(&order)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Counts {
    Dense(Vec<u64>),
    Sparse(BTreeMap<usize, u64>),
}

/// Occurrence counts over a finite pattern alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternHistogram {
    counts: Counts,
    total: u64,
    alphabet_size: usize,
}

impl PatternHistogram {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn count(&self, code: usize) -> u64 {
        match &self.counts {
            Counts::Dense(v) => v.get(code).copied().unwrap_or(0),
            Counts::Sparse(map) => map.get(&code).copied().unwrap_or(0),
        }
    }

    /// `(code, count)` for every occupied cell, in ascending code order.
    pub fn occupied(&self) -> Vec<(usize, u64)> {
        match &self.counts {
            Counts::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(code, &k)| (code, k))
                .collect(),
            Counts::Sparse(map) => map.iter().map(|(&code, &k)| (code, k)).collect(),
        }
    }

    pub fn occupied_count(&self) -> usize {
        match &self.counts {
            Counts::Dense(v) => v.iter().filter(|&&k| k > 0).count(),
            Counts::Sparse(map) => map.len(),
        }
    }

    /// Relative frequencies of the occupied cells.
    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        let total = self.total as f64;
        let iter: Box<dyn Iterator<Item = u64> + '_> = match &self.counts {
            Counts::Dense(v) => Box::new(v.iter().copied().filter(|&k| k > 0)),
            Counts::Sparse(map) => Box::new(map.values().copied()),
        };
        iter.map(move |k| k as f64 / total)
    }
}

/// Counts pattern codes into a histogram over `0..alphabet_size`.
pub fn histogram<I>(codes: I, alphabet_size: usize) -> Result<PatternHistogram>
where
    I: IntoIterator<Item = usize>,
{
    let mut total = 0u64;
    let counts = if alphabet_size <= DENSE_ALPHABET_LIMIT {
        let mut v = vec![0u64; alphabet_size];
        for code in codes {
            let slot = v.get_mut(code).ok_or(Error::PatternOutOfRange {
                code,
                alphabet_size,
            })?;
            *slot += 1;
            total += 1;
        }
        Counts::Dense(v)
    } else {
        let mut map = BTreeMap::new();
        for code in codes {
            if code >= alphabet_size {
                return Err(Error::PatternOutOfRange {
                    code,
                    alphabet_size,
                });
            }
            *map.entry(code).or_insert(0) += 1;
            total += 1;
        }
        Counts::Sparse(map)
    };
    if total == 0 {
        return Err(Error::EmptyPatterns);
    }
    Ok(PatternHistogram {
        counts,
        total,
        alphabet_size,
    })
}

/// Fraction of the alphabet that never occurs.
pub fn forbidden_fraction(hist: &PatternHistogram) -> f64 {
    let missing = hist.alphabet_size - hist.occupied_count();
    missing as f64 / hist.alphabet_size as f64
}

/// Histogram of the dispersion patterns of `u`.
pub fn dispersion_histogram(u: &ClassSeries, params: &EmbeddingParams) -> Result<PatternHistogram> {
    let alphabet = dispersion_alphabet(params.m, u.class_count())?;
    let codes = encode_dispersion(u, params)?;
    histogram(codes.into_iter().map(DispersionPattern::code), alphabet)
}

/// Histogram of the frequency-based dispersion patterns of `u`.
pub fn freq_dispersion_histogram(
    u: &ClassSeries,
    params: &EmbeddingParams,
) -> Result<PatternHistogram> {
    let alphabet = freq_dispersion_alphabet(params.m, u.class_count())?;
    let codes = encode_freq_dispersion(u, params)?;
    histogram(codes.into_iter().map(FreqDispersionPattern::code), alphabet)
}

/// Histogram of the ordinal patterns of `x`.
pub fn permutation_histogram(x: &[f64], params: &EmbeddingParams) -> Result<PatternHistogram> {
    let alphabet = permutation_alphabet(params.m)?;
    let codes = encode_permutation(x, params)?;
    histogram(codes.into_iter().map(OrdinalPattern::code), alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn classes(v: &[u32], c: usize) -> ClassSeries {
        ClassSeries::new(v.to_vec(), c).unwrap()
    }

    fn emb(m: usize, d: usize) -> EmbeddingParams {
        EmbeddingParams::new(m, d).unwrap()
    }

    #[test]
    fn dispersion_worked_example_counts() {
        let u = classes(&[2, 2, 1, 1, 2, 1, 1, 2, 3, 3], 3);
        let pats = encode_dispersion(&u, &emb(2, 1)).unwrap();
        assert_eq!(pats.len(), 9);
        let hist = histogram(pats.iter().map(|p| p.code()), 9).unwrap();
        let count = |a: u32, b: u32| hist.count(DispersionPattern::from_digits(&[a, b], 3).code());
        assert_eq!(count(2, 2), 1);
        assert_eq!(count(2, 1), 2);
        assert_eq!(count(1, 1), 2);
        assert_eq!(count(1, 2), 2);
        assert_eq!(count(2, 3), 1);
        assert_eq!(count(3, 3), 1);
        assert_eq!(hist.occupied_count(), 6);
        assert!((forbidden_fraction(&hist) - 1.0 / 3.0).abs() < 1e-15);
        let mut p: Vec<f64> = hist.probabilities().collect();
        p.sort_by(f64::total_cmp);
        let expected = [
            1.0 / 9.0,
            1.0 / 9.0,
            1.0 / 9.0,
            2.0 / 9.0,
            2.0 / 9.0,
            2.0 / 9.0,
        ];
        for (a, b) in p.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn dispersion_small_cases() {
        // N - (m - 1) d = 4 - 2 windows
        let pats = encode_dispersion(&classes(&[1, 1, 1, 1], 2), &emb(3, 1)).unwrap();
        assert_eq!(pats.len(), 2);
        assert!(pats.iter().all(|p| p.digits(3, 2) == vec![1, 1, 1]));

        let pats = encode_dispersion(&classes(&[1, 2, 3, 4], 4), &emb(2, 2)).unwrap();
        let digits: Vec<Vec<u32>> = pats.iter().map(|p| p.digits(2, 4)).collect();
        assert_eq!(digits, vec![vec![1, 3], vec![2, 4]]);

        assert!(matches!(
            encode_dispersion(&classes(&[1, 2], 2), &emb(3, 1)),
            Err(Error::InsufficientSamples { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn freq_dispersion_worked_example() {
        let u = classes(&[1, 1, 2, 2, 1, 1, 1, 2, 2, 2], 2);
        let pats = encode_freq_dispersion(&u, &emb(3, 1)).unwrap();
        let diffs: Vec<Vec<i32>> = pats.iter().map(|p| p.differences(3, 2)).collect();
        let expected: Vec<Vec<i32>> = vec![
            vec![0, 1],
            vec![1, 0],
            vec![0, -1],
            vec![-1, 0],
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 0],
        ];
        assert_eq!(diffs, expected);
        let hist = histogram(pats.iter().map(|p| p.code()), 9).unwrap();
        let mut counts: Vec<u64> = hist.occupied().into_iter().map(|(_, k)| k).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn freq_dispersion_extremes_and_constant() {
        let pats = encode_freq_dispersion(&classes(&[1, 3, 1, 3], 3), &emb(2, 1)).unwrap();
        let diffs: Vec<Vec<i32>> = pats.iter().map(|p| p.differences(2, 3)).collect();
        assert_eq!(diffs, vec![vec![2], vec![-2], vec![2]]);
        assert_eq!(pats[0].code(), 4);
        assert_eq!(pats[1].code(), 0);

        let pats = encode_freq_dispersion(&classes(&[2; 7], 3), &emb(4, 1)).unwrap();
        assert!(pats.iter().all(|p| p.differences(4, 3) == vec![0, 0, 0]));
    }

    #[test]
    fn permutation_examples() {
        let p = encode_permutation(&[1.0, 2.0, 3.0], &emb(3, 1)).unwrap();
        assert_eq!(p, vec![OrdinalPattern(0)]);

        let p = encode_permutation(&[3.0, 1.0, 2.0], &emb(3, 1)).unwrap();
        assert_eq!(p[0].permutation(3), vec![1, 2, 0]);

        let x = [1.0, 2.0, 3.0, 2.1, 1.0, 4.0];
        let hist = permutation_histogram(&x, &emb(3, 1)).unwrap();
        assert_eq!(hist.total(), 4);
        assert_eq!(hist.occupied_count(), 4);
        let present: Vec<Vec<usize>> = hist
            .occupied()
            .into_iter()
            .map(|(code, _)| OrdinalPattern(code).ranks(3))
            .collect();
        assert!(!present.contains(&vec![2, 3, 1]));
        assert!(!present.contains(&vec![3, 1, 2]));
    }

    #[test]
    fn permutation_ties_rank_by_appearance() {
        let p = encode_permutation(&[5.0, 5.0, 5.0], &emb(3, 1)).unwrap();
        assert_eq!(p[0].permutation(3), vec![0, 1, 2]);
        let p = encode_permutation(&[2.0, 1.0, 2.0], &emb(3, 1)).unwrap();
        assert_eq!(p[0].permutation(3), vec![1, 0, 2]);
    }

    #[test]
    fn lehmer_round_trip_all_permutations_of_four() {
        let mut seen = std::collections::HashSet::new();
        for code in 0..24 {
            let perm = OrdinalPattern(code).permutation(4);
            assert_eq!(OrdinalPattern::from_permutation(&perm).code(), code);
            seen.insert(perm);
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn histogram_errors() {
        assert!(matches!(
            histogram(Vec::new(), 9),
            Err(Error::EmptyPatterns)
        ));
        assert!(matches!(
            histogram(vec![9], 9),
            Err(Error::PatternOutOfRange {
                code: 9,
                alphabet_size: 9
            })
        ));
    }

    #[test]
    fn forbidden_fraction_edges() {
        let full = histogram(0..9, 9).unwrap();
        assert_eq!(forbidden_fraction(&full), 0.0);
        let single = histogram(vec![4; 20], 9).unwrap();
        assert!((forbidden_fraction(&single) - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn sparse_storage_matches_dense() {
        let codes = [0usize, 5, 5, 7, 3, 5];
        let dense = histogram(codes.iter().copied(), 8).unwrap();
        let sparse = histogram(codes.iter().copied(), DENSE_ALPHABET_LIMIT + 1).unwrap();
        assert!(matches!(sparse.counts, Counts::Sparse(_)));
        assert_eq!(dense.occupied(), sparse.occupied());
        assert_eq!(dense.total(), sparse.total());
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(dispersion_alphabet(5, 6).unwrap(), 7776);
        assert_eq!(freq_dispersion_alphabet(3, 5).unwrap(), 81);
        assert_eq!(permutation_alphabet(4).unwrap(), 24);
        assert!(dispersion_alphabet(100, 6).is_err());
        assert!(permutation_alphabet(30).is_err());
    }

    fn class_vec() -> impl Strategy<Value = (Vec<u32>, usize)> {
        (2usize..7).prop_flat_map(|c| (prop::collection::vec(1..=c as u32, 1..120), Just(c)))
    }

    proptest! {
        #[test]
        fn window_count_and_fdisp_from_disp(
            (v, c) in class_vec(), m in 2usize..5, d in 1usize..4
        ) {
            let u = ClassSeries::new(v.clone(), c).unwrap();
            let params = emb(m, d);
            let disp = encode_dispersion(&u, &params);
            let freq = encode_freq_dispersion(&u, &params);
            let span = (m - 1) * d + 1;
            if v.len() < span {
                prop_assert!(disp.is_err() && freq.is_err());
                return Ok(());
            }
            let disp = disp.unwrap();
            let freq = freq.unwrap();
            prop_assert_eq!(disp.len(), v.len() - span + 1);
            prop_assert_eq!(freq.len(), disp.len());
            for (dp, fp) in disp.iter().zip(&freq) {
                let digits = dp.digits(m, c);
                let diffs: Vec<i32> = digits.windows(2).map(|w| w[1] as i32 - w[0] as i32).collect();
                prop_assert_eq!(fp.differences(m, c), diffs);
            }
        }

        #[test]
        fn fdisp_is_translation_invariant(
            c in 3usize..8, m in 2usize..5, seed in prop::collection::vec(0u32..1000, 4..100)
        ) {
            // classes in 1..=c-shift so that adding shift stays within 1..=c
            let shift = (seed[0] % (c as u32 - 1)) + 1;
            let top = c as u32 - shift;
            let v: Vec<u32> = seed.iter().map(|s| s % top + 1).collect();
            prop_assume!(v.len() >= m);
            let params = emb(m, 1);
            let a = encode_freq_dispersion(&ClassSeries::new(v.clone(), c).unwrap(), &params).unwrap();
            let shifted: Vec<u32> = v.iter().map(|x| x + shift).collect();
            let b = encode_freq_dispersion(&ClassSeries::new(shifted, c).unwrap(), &params).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn digits_round_trip(code in 0usize..7776) {
            let digits = DispersionPattern(code).digits(5, 6);
            prop_assert_eq!(DispersionPattern::from_digits(&digits, 6).code(), code);
            let fcode = code % 6561;
            let diffs = FreqDispersionPattern(fcode).differences(5, 5);
            prop_assert_eq!(FreqDispersionPattern::from_differences(&diffs, 5).code(), fcode);
        }
    }
}
