//! Seedable synthetic signals and signal-file loading.
//!
//! Every generator is a pure function of its parameters and a [`Seed`].
//! Independent realizations come from [`Seed::derive`], which mixes the base
//! seed with the realization index through SplitMix64; the mixed value keys a
//! ChaCha8 stream.

use std::fmt;
use std::fs;
use std::io::Write;
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution, StandardNormal, Uniform};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::stats::{mean, population_sd, power, validate_samples};
use crate::{Error, Result};

/// A finite, non-empty real-valued series with optional sampling-rate metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: Option<f64>,
}

impl Signal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        validate_samples(&samples)?;
        Ok(Signal {
            samples,
            sample_rate_hz: None,
        })
    }

    pub fn with_sample_rate(mut self, hz: f64) -> Result<Self> {
        if !(hz > 0.0 && hz.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample rate must be positive, got {hz}"
            )));
        }
        self.sample_rate_hz = Some(hz);
        Ok(self)
    }

    pub fn sample_rate_hz(&self) -> Option<f64> {
        self.sample_rate_hz
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

impl Deref for Signal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.samples
    }
}

impl AsRef<[f64]> for Signal {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}

/// Base seed for a deterministic random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    /// Seed used when none is given.
    pub const DEFAULT: Seed = Seed(20_170_101);

    /// Sub-seed for stream `k`: `splitmix64(seed + (k + 1) * GOLDEN)`.
    pub fn derive(self, k: u64) -> Seed {
        Seed(splitmix64(self.0.wrapping_add(
            k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        )))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Noise colour, by power-spectral-density exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    White,
    Pink,
    Brown,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [NoiseKind::White, NoiseKind::Pink, NoiseKind::Brown];

    /// `gamma` in `S(f) ~ 1 / f^gamma`.
    pub fn psd_exponent(self) -> u32 {
        match self {
            NoiseKind::White => 0,
            NoiseKind::Pink => 1,
            NoiseKind::Brown => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::White => "white",
            NoiseKind::Pink => "pink",
            NoiseKind::Brown => "brown",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "white" => Ok(NoiseKind::White),
            "pink" => Ok(NoiseKind::Pink),
            "brown" | "brownian" | "red" => Ok(NoiseKind::Brown),
            other => Err(Error::InvalidParameter(format!(
                "unknown noise kind `{other}`"
            ))),
        }
    }
}

fn gaussian(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect()
}

fn standardize(x: &mut [f64]) {
    let mu = mean(x);
    let sd = population_sd(x);
    for v in x.iter_mut() {
        *v = (*v - mu) / sd;
    }
}

/// White, pink or brown noise of length `n`.
///
/// White noise is i.i.d. standard Gaussian. Pink noise shapes a complex
/// Gaussian spectrum by `1/sqrt(f)` and inverts it. Brown noise is a random
/// walk. Pink and brown outputs are standardized to zero mean, unit variance.
pub fn gen_noise(kind: NoiseKind, n: usize, seed: Seed) -> Result<Signal> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "noise length must be at least 2, got {n}"
        )));
    }
    let mut rng = seed.rng();
    let samples = match kind {
        NoiseKind::White => gaussian(&mut rng, n),
        NoiseKind::Pink => {
            let mut spectrum = vec![Complex::new(0.0, 0.0); n];
            for k in 1..=n / 2 {
                let amp = 1.0 / (k as f64).sqrt();
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                if 2 * k == n {
                    spectrum[k] = Complex::new(re * amp, 0.0);
                } else {
                    spectrum[k] = Complex::new(re * amp, im * amp);
                    spectrum[n - k] = spectrum[k].conj();
                }
            }
            FftPlanner::new().plan_fft_inverse(n).process(&mut spectrum);
            let mut x: Vec<f64> = spectrum.iter().map(|z| z.re).collect();
            standardize(&mut x);
            x
        }
        NoiseKind::Brown => {
            let mut acc = 0.0;
            let mut x: Vec<f64> = gaussian(&mut rng, n)
                .into_iter()
                .map(|w| {
                    acc += w;
                    acc
                })
                .collect();
            standardize(&mut x);
            x
        }
    };
    Signal::new(samples)
}

/// Logistic map `x_j = alpha_j x_{j-1} (1 - x_{j-1})` with `alpha` ramped
/// linearly from `alpha_start` (first sample) to `alpha_end` (last sample).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub alpha_start: f64,
    pub alpha_end: f64,
    pub n: usize,
    pub x0: f64,
    /// Iterations at `alpha_start` discarded before the first output sample.
    pub burn_in: usize,
}

impl LogisticParams {
    pub fn fixed(alpha: f64, n: usize) -> Self {
        LogisticParams {
            alpha_start: alpha,
            alpha_end: alpha,
            ..Default::default()
        }
        .with_len(n)
    }

    pub fn ramp(alpha_start: f64, alpha_end: f64, n: usize) -> Self {
        LogisticParams {
            alpha_start,
            alpha_end,
            ..Default::default()
        }
        .with_len(n)
    }

    pub fn with_len(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_x0(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }
}

impl Default for LogisticParams {
    /// 100 s at 150 Hz, `alpha` from 3.5 to 3.99, `x0 = 0.23`.
    fn default() -> Self {
        LogisticParams {
            alpha_start: 3.5,
            alpha_end: 3.99,
            n: 15_000,
            x0: 0.23,
            burn_in: 0,
        }
    }
}

/// Iterates the logistic map. No randomness is involved.
pub fn gen_logistic(params: &LogisticParams) -> Result<Signal> {
    let LogisticParams {
        alpha_start,
        alpha_end,
        n,
        x0,
        burn_in,
    } = *params;
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "logistic x0 must lie in (0, 1), got {x0}"
        )));
    }
    for alpha in [alpha_start, alpha_end] {
        if !(0.0..=4.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "logistic alpha must lie in [0, 4], got {alpha}"
            )));
        }
    }
    if n == 0 {
        return Err(Error::EmptySignal);
    }
    let mut x = x0;
    for _ in 0..burn_in {
        x = alpha_start * x * (1.0 - x);
    }
    let step = if n > 1 {
        (alpha_end - alpha_start) / (n - 1) as f64
    } else {
        0.0
    };
    let samples = (0..n)
        .map(|j| {
            let alpha = alpha_start + step * j as f64;
            x = alpha * x * (1.0 - x);
            x
        })
        .collect();
    Signal::new(samples)
}

/// MIX process parameters: switching probability `p`, ramped linearly from
/// `p_start` to `p_end` across the signal (equal for a constant `p`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixParams {
    pub p_start: f64,
    pub p_end: f64,
    pub n: usize,
}

impl MixParams {
    pub fn constant(p: f64, n: usize) -> Self {
        MixParams {
            p_start: p,
            p_end: p,
            n,
        }
    }

    pub fn ramp(p_start: f64, p_end: f64, n: usize) -> Self {
        MixParams { p_start, p_end, n }
    }
}

/// `MIX_k = (1 - z_k) x_k + z_k y_k` with `z_k ~ Bernoulli(p_k)`,
/// `x_k = sqrt(2) sin(2 pi k / 12)` and `y_k ~ U[-sqrt(3), sqrt(3)]`, `k = 1..=n`.
pub fn gen_mix(params: &MixParams, seed: Seed) -> Result<Signal> {
    for p in [params.p_start, params.p_end] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "MIX probability must lie in [0, 1], got {p}"
            )));
        }
    }
    if params.n == 0 {
        return Err(Error::EmptySignal);
    }
    let n = params.n;
    let mut rng = seed.rng();
    let bound = 3f64.sqrt();
    let uniform = Uniform::new_inclusive(-bound, bound)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let step = if n > 1 {
        (params.p_end - params.p_start) / (n - 1) as f64
    } else {
        0.0
    };
    let samples = (0..n)
        .map(|j| {
            let p = (params.p_start + step * j as f64).clamp(0.0, 1.0);
            let k = (j + 1) as f64;
            let periodic = std::f64::consts::SQRT_2 * (2.0 * std::f64::consts::PI * k / 12.0).sin();
            let noise = uniform.sample(&mut rng);
            // both draws happen every sample so the stream layout does not depend on p
            let switch = Bernoulli::new(p)
                .expect("p clamped to [0, 1]")
                .sample(&mut rng);
            if switch {
                noise
            } else {
                periodic
            }
        })
        .collect();
    Signal::new(samples)
}

/// Impulse-in-noise test signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeParams {
    pub n: usize,
    /// One-based index of the impulse.
    pub spike_pos: usize,
    pub spike_amp: f64,
    pub noise_sd: f64,
}

impl Default for SpikeParams {
    fn default() -> Self {
        SpikeParams {
            n: 2000,
            spike_pos: 1000,
            spike_amp: 10.0,
            noise_sd: 1.0,
        }
    }
}

/// Gaussian noise with SD `noise_sd` plus a single-sample impulse at `spike_pos`.
pub fn gen_spike_signal(params: &SpikeParams, seed: Seed) -> Result<Signal> {
    let SpikeParams {
        n,
        spike_pos,
        spike_amp,
        noise_sd,
    } = *params;
    if spike_pos < 1 || spike_pos > n {
        return Err(Error::InvalidParameter(format!(
            "spike position {spike_pos} outside 1..={n}"
        )));
    }
    if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise SD must be non-negative, got {noise_sd}"
        )));
    }
    let mut rng = seed.rng();
    let mut samples: Vec<f64> = gaussian(&mut rng, n)
        .into_iter()
        .map(|g| g * noise_sd)
        .collect();
    samples[spike_pos - 1] += spike_amp;
    Signal::new(samples)
}

/// Adds white Gaussian noise at `snr_db` (per-sample mean-square power ratio).
/// An infinite SNR returns the input unchanged.
pub fn add_wgn_snr(x: &[f64], snr_db: f64, seed: Seed) -> Result<Signal> {
    validate_samples(x)?;
    if snr_db.is_nan() {
        return Err(Error::InvalidParameter("SNR must not be NaN".into()));
    }
    let signal_power = power(x);
    if signal_power == 0.0 {
        return Err(Error::ZeroPower);
    }
    if snr_db == f64::INFINITY {
        return Signal::new(x.to_vec());
    }
    let noise_sd = (signal_power / 10f64.powf(snr_db / 10.0)).sqrt();
    let mut rng = seed.rng();
    let samples = x
        .iter()
        .map(|&v| v + noise_sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Signal::new(samples)
}

/// On-disk layout of a signal file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalFormat {
    /// One value per line; blank lines are skipped.
    Plain,
    /// One-based column of a comma-separated file. A first row whose
    /// selected cell is not numeric is treated as a header.
    Csv { column: usize },
}

fn parse_value(path: &Path, line: usize, text: &str) -> Result<f64> {
    let value: f64 = text.trim().parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("not a number: `{}`", text.trim()),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("non-finite value `{}`", text.trim()),
        });
    }
    Ok(value)
}

pub fn load_signal(path: impl AsRef<Path>, format: SignalFormat) -> Result<Signal> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let samples = match format {
        SignalFormat::Plain => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_value(path, i + 1, l))
            .collect::<Result<Vec<f64>>>()?,
        SignalFormat::Csv { column } => {
            if column == 0 {
                return Err(Error::InvalidParameter("CSV columns are 1-indexed".into()));
            }
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(text.as_bytes());
            let mut out = Vec::new();
            for (i, record) in reader.records().enumerate() {
                let record = record?;
                let line = record.position().map_or(i + 1, |p| p.line() as usize);
                let cell = record.get(column - 1).ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("missing column {column}"),
                })?;
                if i == 0 && cell.parse::<f64>().is_err() {
                    continue;
                }
                out.push(parse_value(path, line, cell)?);
            }
            out
        }
    };
    if samples.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "empty file".into(),
        });
    }
    Signal::new(samples)
}

/// Writes one value per line, full precision.
pub fn write_signal(out: &mut impl Write, x: &[f64]) -> std::io::Result<()> {
    for v in x {
        writeln!(out, "{v:?}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{population_variance, sample_variance};

    #[test]
    fn seeds_are_reproducible_and_split() {
        let s = Seed(7);
        assert_eq!(s.derive(3), s.derive(3));
        assert_ne!(s.derive(3), s.derive(4));
        assert_ne!(Seed(8).derive(3), s.derive(3));
        let a = gen_noise(NoiseKind::White, 100, s.derive(0)).unwrap();
        let b = gen_noise(NoiseKind::White, 100, s.derive(0)).unwrap();
        let c = gen_noise(NoiseKind::White, 100, s.derive(1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn white_noise_moments() {
        let x = gen_noise(NoiseKind::White, 100_000, Seed(1)).unwrap();
        assert!(mean(&x).abs() < 0.02);
        assert!((population_variance(&x) - 1.0).abs() < 0.05);
    }

    fn lag1_autocorrelation(x: &[f64]) -> f64 {
        let mu = mean(x);
        let num: f64 = x.windows(2).map(|w| (w[0] - mu) * (w[1] - mu)).sum();
        let den: f64 = x.iter().map(|v| (v - mu) * (v - mu)).sum();
        num / den
    }

    #[test]
    fn brown_noise_is_a_standardized_random_walk() {
        let seed = Seed(11);
        let x = gen_noise(NoiseKind::Brown, 10_000, seed).unwrap();
        assert!(lag1_autocorrelation(&x) > 0.99);
        // oracle: cumulative sum of the same white draws, standardized by hand
        let w = gaussian(&mut seed.rng(), 10_000);
        let walk: Vec<f64> = w
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        let (mu, sd) = (mean(&walk), population_sd(&walk));
        for (a, b) in x.iter().zip(&walk) {
            assert!((a - (b - mu) / sd).abs() < 1e-9);
        }
    }

    #[test]
    fn pink_noise_psd_slope() {
        let n = 1 << 14;
        let x = gen_noise(NoiseKind::Pink, n, Seed(5)).unwrap();
        assert!(mean(&x).abs() < 1e-9);
        assert!((population_variance(&x) - 1.0).abs() < 1e-9);
        // direct DFT periodogram averaged in log-spaced bands
        let mut log_f = Vec::new();
        let mut log_p = Vec::new();
        let mut lo = 4usize;
        while lo < n / 4 {
            let hi = (lo as f64 * 1.25).ceil() as usize;
            let mut acc = 0.0;
            for k in lo..hi {
                let w = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let (mut re, mut im) = (0.0, 0.0);
                for (t, v) in x.iter().enumerate() {
                    re += v * (w * t as f64).cos();
                    im -= v * (w * t as f64).sin();
                }
                acc += re * re + im * im;
            }
            log_f.push((0.5 * (lo + hi - 1) as f64).ln());
            log_p.push((acc / (hi - lo) as f64).ln());
            lo = hi;
        }
        let fm = mean(&log_f);
        let pm = mean(&log_p);
        let cov: f64 = log_f
            .iter()
            .zip(&log_p)
            .map(|(f, p)| (f - fm) * (p - pm))
            .sum();
        let var: f64 = log_f.iter().map(|f| (f - fm) * (f - fm)).sum();
        let slope = cov / var;
        assert!((-1.2..=-0.8).contains(&slope), "slope {slope}");
    }

    #[test]
    fn noise_rejects_short_length() {
        assert!(gen_noise(NoiseKind::Pink, 1, Seed(0)).is_err());
    }

    #[test]
    fn logistic_period_four() {
        let x = gen_logistic(&LogisticParams::fixed(3.5, 400).with_burn_in(1000)).unwrap();
        let mut distinct: Vec<f64> = Vec::new();
        for &v in x.iter() {
            if !distinct.iter().any(|d| (d - v).abs() < 1e-9) {
                distinct.push(v);
            }
        }
        assert_eq!(distinct.len(), 4, "{distinct:?}");
    }

    #[test]
    fn logistic_chaotic_stays_in_unit_interval() {
        let x = gen_logistic(&LogisticParams::fixed(4.0, 10_000).with_x0(0.2)).unwrap();
        assert!(x.iter().all(|&v| v > 0.0 && v < 1.0));
    }

    #[test]
    fn logistic_degenerate_orbit() {
        let x = gen_logistic(&LogisticParams::fixed(4.0, 5).with_x0(0.5)).unwrap();
        assert_eq!(x.samples(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(gen_logistic(&LogisticParams::fixed(4.0, 5).with_x0(1.0)).is_err());
        assert!(gen_logistic(&LogisticParams::fixed(4.0, 5).with_x0(0.0)).is_err());
    }

    #[test]
    fn logistic_defaults() {
        let p = LogisticParams::default();
        assert_eq!(
            (p.n, p.x0, p.alpha_start, p.alpha_end),
            (15_000, 0.23, 3.5, 3.99)
        );
        let x = gen_logistic(&p).unwrap();
        assert_eq!(x.len(), 15_000);
        assert_eq!(x, gen_logistic(&p).unwrap());
    }

    #[test]
    fn mix_branches() {
        let x = gen_mix(&MixParams::constant(0.0, 48), Seed(3)).unwrap();
        for (j, v) in x.iter().enumerate() {
            let k = (j + 1) as f64;
            let expected = 2f64.sqrt() * (2.0 * std::f64::consts::PI * k / 12.0).sin();
            assert_eq!(*v, expected);
        }
        let y = gen_mix(&MixParams::constant(1.0, 15_000), Seed(3)).unwrap();
        let bound = 3f64.sqrt();
        assert!(y.iter().all(|v| v.abs() <= bound));
        assert!((population_variance(&y) - 1.0).abs() < 0.05);
    }

    #[test]
    fn mix_variance_is_near_one_for_any_p() {
        for (i, p) in [0.1, 0.5, 0.9].into_iter().enumerate() {
            let x = gen_mix(&MixParams::constant(p, 15_000), Seed(i as u64)).unwrap();
            assert!((population_variance(&x) - 1.0).abs() < 0.05, "p={p}");
        }
    }

    #[test]
    fn spike_signal() {
        let params = SpikeParams {
            noise_sd: 0.0,
            ..Default::default()
        };
        let x = gen_spike_signal(&params, Seed(1)).unwrap();
        assert_eq!(x.iter().filter(|v| **v != 0.0).count(), 1);
        assert_eq!(x[999], 10.0);

        let x = gen_spike_signal(&SpikeParams::default(), Seed(1)).unwrap();
        let argmax = x
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap()
            .0;
        assert_eq!(argmax + 1, 1000);

        let bad = SpikeParams {
            spike_pos: 0,
            ..Default::default()
        };
        assert!(gen_spike_signal(&bad, Seed(1)).is_err());
    }

    #[test]
    fn wgn_snr() {
        let clean = gen_logistic(&LogisticParams::default()).unwrap();
        let same = add_wgn_snr(&clean, f64::INFINITY, Seed(1)).unwrap();
        assert_eq!(same.samples(), clean.samples());

        let noisy = add_wgn_snr(&clean, 0.0, Seed(2)).unwrap();
        let noise: Vec<f64> = noisy.iter().zip(clean.iter()).map(|(a, b)| a - b).collect();
        let ratio = power(&noise) / power(&clean);
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");

        let noisy = add_wgn_snr(&clean, 50.0, Seed(3)).unwrap();
        let noise: Vec<f64> = noisy.iter().zip(clean.iter()).map(|(a, b)| a - b).collect();
        let expected = 10f64.powf(-2.5) * power(&clean).sqrt();
        let sd = sample_variance(&noise).sqrt();
        assert!((sd / expected - 1.0).abs() < 0.05, "{sd} vs {expected}");

        assert!(matches!(
            add_wgn_snr(&[0.0; 4], 10.0, Seed(1)),
            Err(Error::ZeroPower)
        ));
    }

    #[test]
    fn load_plain_and_csv() {
        let dir = tempfile::tempdir().unwrap();
        let plain = dir.path().join("x.txt");
        fs::write(&plain, "1.0\n2.0\n3.0\n").unwrap();
        assert_eq!(
            load_signal(&plain, SignalFormat::Plain).unwrap().samples(),
            &[1.0, 2.0, 3.0]
        );

        let csv = dir.path().join("x.csv");
        fs::write(&csv, "t,v\n0,5\n1,6\n").unwrap();
        let s = load_signal(&csv, SignalFormat::Csv { column: 2 }).unwrap();
        assert_eq!(s.samples(), &[5.0, 6.0]);

        let bad = dir.path().join("bad.txt");
        fs::write(&bad, "1.0\nnan\n").unwrap();
        let err = load_signal(&bad, SignalFormat::Plain)
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 2"), "{err}");

        let empty = dir.path().join("empty.txt");
        fs::write(&empty, "\n").unwrap();
        assert!(load_signal(&empty, SignalFormat::Plain).is_err());

        let missing = dir.path().join("nope.txt");
        let err = load_signal(&missing, SignalFormat::Plain)
            .unwrap_err()
            .to_string();
        assert!(err.contains("nope.txt"));
    }

    #[test]
    fn written_signal_reloads_exactly() {
        let x = gen_noise(NoiseKind::Pink, 64, Seed(9)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pink.txt");
        let mut f = fs::File::create(&path).unwrap();
        write_signal(&mut f, &x).unwrap();
        drop(f);
        assert_eq!(load_signal(&path, SignalFormat::Plain).unwrap(), x);
    }
}
