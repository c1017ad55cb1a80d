//! The synthetic experiments. Each takes a config (defaults live in the
//! registry file) and returns an [`ExperimentResult`].
//!
//! Realizations run in parallel on the current rayon pool; values are
//! collected per realization in grid order and reduced afterwards, so the
//! output does not depend on the number of worker threads.

use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use crate::entropy::{EntropyResult, Method};
use crate::patterns::{
    dispersion_histogram, forbidden_fraction, freq_dispersion_histogram, permutation_histogram,
};
use crate::signals::{
    add_wgn_snr, gen_logistic, gen_mix, gen_noise, gen_spike_signal, LogisticParams, MixParams,
    NoiseKind, Seed, SpikeParams,
};
use crate::stats::{median, population_sd};
use crate::{Error, Result};

use super::registry::MethodSpec;
use super::result::{CellKey, ExperimentResult};
use super::summary::Summary;
use super::window::{nrm_ent_n, windowed_entropy, WindowSpec};

/// Entropy value of a computation, with undefined outcomes (too short,
/// flat input under a sigmoidal mapping, SampEn without matches) as `None`.
fn defined(result: Result<EntropyResult>) -> Result<Option<f64>> {
    match result {
        Ok(r) => Ok(Some(r.value())),
        Err(
            Error::ConstantSignal
            | Error::UndefinedSampEn
            | Error::ZeroSd
            | Error::InsufficientSamples { .. },
        ) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_realizations(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "at least one realization is required".into(),
        ));
    }
    Ok(())
}

/// Runs `realization` for `0..k` in parallel and reduces each grid position
/// over realizations.
fn aggregate<F>(
    result: &mut ExperimentResult,
    keys: Vec<CellKey>,
    k: usize,
    realization: F,
) -> Result<()>
where
    F: Fn(u64) -> Result<Vec<Option<f64>>> + Sync,
{
    let per_realization: Vec<Vec<Option<f64>>> = (0..k as u64)
        .into_par_iter()
        .map(&realization)
        .collect::<Result<_>>()?;
    for (i, key) in keys.into_iter().enumerate() {
        let summary = Summary::of(per_realization.iter().map(|values| values[i]));
        result.push(key, summary);
    }
    Ok(())
}

fn methods(specs: &[MethodSpec]) -> Result<Vec<Method>> {
    specs.iter().map(MethodSpec::to_method).collect()
}

/// `c=<c>` for dispersion methods, `r=<r>` for SampEn, `m=<m>` for PerEn.
fn parameter_label(method: &Method) -> String {
    match (method.c(), method.r()) {
        (Some(c), _) => format!("c={c}"),
        (_, Some(r)) => format!("r={r}"),
        _ => format!("m={}", method.m()),
    }
}

/// Entropy of white noise against length, embedding dimension and class count.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSensitivityConfig {
    pub seed: u64,
    pub realizations: usize,
    pub lengths: Vec<usize>,
    pub methods: Vec<MethodSpec>,
}

/// Axes: `length`, unused second axis.
pub fn parameter_sensitivity_experiment(
    cfg: &ParameterSensitivityConfig,
) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let mut result = ExperimentResult::new("fig2", ("length", "-"), seed, cfg.realizations);
    let keys = methods
        .iter()
        .flat_map(|m| {
            cfg.lengths
                .iter()
                .map(move |&n| CellKey::for_method(m, n, ""))
        })
        .collect();
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let signals = cfg
            .lengths
            .iter()
            .map(|&n| gen_noise(NoiseKind::White, n, seed.derive(n as u64).derive(r)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for method in &methods {
            for x in &signals {
                out.push(defined(method.compute(x))?);
            }
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Noise sensitivity (NrmEntN) along a logistic map whose parameter ramps
/// from periodic to chaotic, with white Gaussian noise at several SNRs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSensitivityConfig {
    pub seed: u64,
    pub realizations: usize,
    pub snr_db: Vec<f64>,
    pub window_length: usize,
    pub overlap: f64,
    pub alpha_start: f64,
    pub alpha_end: f64,
    pub n: usize,
    pub x0: f64,
    pub methods: Vec<MethodSpec>,
}

/// Axes: one-based `window`, `snr_db`. Noise is drawn independently for
/// every (realization, SNR) pair and shared across methods.
pub fn noise_sensitivity_experiment(
    name: &str,
    cfg: &NoiseSensitivityConfig,
) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let spec = WindowSpec::new(cfg.window_length, cfg.overlap)?;
    let clean =
        gen_logistic(&LogisticParams::ramp(cfg.alpha_start, cfg.alpha_end, cfg.n).with_x0(cfg.x0))?;
    let windows = spec.count(clean.len())?;
    let mut result = ExperimentResult::new(name, ("window", "snr_db"), seed, cfg.realizations);
    let mut keys = Vec::new();
    for method in &methods {
        for &snr in &cfg.snr_db {
            for w in 0..windows {
                keys.push(CellKey::for_method(method, w + 1, snr));
            }
        }
    }
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let noisy = cfg
            .snr_db
            .iter()
            .enumerate()
            .map(|(s, &snr)| add_wgn_snr(&clean, snr, seed.derive(s as u64).derive(r)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(methods.len() * noisy.len() * windows);
        for method in &methods {
            for y in &noisy {
                out.extend(nrm_ent_n(&clean, y, &spec, method)?);
            }
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Entropy of coloured noise against signal length.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseOrderingConfig {
    pub seed: u64,
    pub realizations: usize,
    pub lengths: Vec<usize>,
    pub methods: Vec<MethodSpec>,
}

fn noise_seed(seed: Seed, kind: NoiseKind, n: usize, realization: u64) -> Seed {
    seed.derive(kind.psd_exponent() as u64)
        .derive(n as u64)
        .derive(realization)
}

/// Per-realization entropy of `kind` noise of length `n`, using the same
/// realization seeds as [`noise_ordering_experiment`].
pub fn noise_entropies(
    kind: NoiseKind,
    n: usize,
    realizations: usize,
    seed: Seed,
    method: &Method,
) -> Result<Vec<Option<f64>>> {
    (0..realizations as u64)
        .into_par_iter()
        .map(|r| {
            let x = gen_noise(kind, n, noise_seed(seed, kind, n, r))?;
            defined(method.compute(&x))
        })
        .collect()
}

/// Axes: `noise` (white, pink, brown), `length`.
pub fn noise_ordering_experiment(cfg: &NoiseOrderingConfig) -> Result<ExperimentResult> {
    if cfg.realizations < 2 {
        return Err(Error::InvalidParameter(
            "noise ordering needs at least 2 realizations".into(),
        ));
    }
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let mut result = ExperimentResult::new("fig5", ("noise", "length"), seed, cfg.realizations);
    let mut keys = Vec::new();
    for method in &methods {
        for kind in NoiseKind::ALL {
            for &n in &cfg.lengths {
                keys.push(CellKey::for_method(method, kind, n));
            }
        }
    }
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let mut signals = Vec::new();
        for kind in NoiseKind::ALL {
            for &n in &cfg.lengths {
                signals.push(gen_noise(kind, n, noise_seed(seed, kind, n, r))?);
            }
        }
        let mut out = Vec::new();
        for method in &methods {
            for x in &signals {
                out.push(defined(method.compute(x))?);
            }
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Fraction of the pattern alphabet that never occurs in `x`, for the
/// pattern family of `method` (SampEn has no pattern alphabet).
pub fn forbidden_fraction_of(x: &[f64], method: &Method) -> Result<f64> {
    let hist = match method {
        Method::DispEn(p) => dispersion_histogram(&p.mapping.map(x, p.c)?, &p.embedding()?)?,
        Method::FDispEn(p) => freq_dispersion_histogram(&p.mapping.map(x, p.c)?, &p.embedding()?)?,
        Method::PerEn(p) => permutation_histogram(x, p)?,
        Method::SampEn(_) => {
            return Err(Error::InvalidParameter(
                "sample entropy has no pattern alphabet".into(),
            ))
        }
    };
    Ok(forbidden_fraction(&hist))
}

/// Forbidden-pattern fractions of the chaotic logistic map (and white noise
/// for contrast) against signal length.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForbiddenConfig {
    pub seed: u64,
    pub realizations: usize,
    pub lengths: Vec<usize>,
    pub alpha: f64,
    pub burn_in: usize,
    pub include_white_noise: bool,
    pub methods: Vec<MethodSpec>,
}

/// Initial condition of realization `r`, uniform on `[0.05, 0.95]`.
fn logistic_x0(seed: Seed, r: u64) -> f64 {
    use rand::Rng;
    seed.derive(r).rng().random_range(0.05..=0.95)
}

/// Axes: `source` (logistic, white), `length`. The `method` column names the
/// pattern family: dispen (dispersion), fdispen (frequency-based), peren (ordinal).
pub fn forbidden_decay_experiment(cfg: &ForbiddenConfig) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    if methods.iter().any(|m| matches!(m, Method::SampEn(_))) {
        return Err(Error::InvalidParameter(
            "sample entropy has no pattern alphabet".into(),
        ));
    }
    let sources: &[&str] = if cfg.include_white_noise {
        &["logistic", "white"]
    } else {
        &["logistic"]
    };
    let mut result = ExperimentResult::new("fig6", ("source", "length"), seed, cfg.realizations);
    let mut keys = Vec::new();
    for method in &methods {
        for source in sources {
            for &n in &cfg.lengths {
                keys.push(CellKey::for_method(method, source, n));
            }
        }
    }
    let max_len = cfg.lengths.iter().copied().max().unwrap_or(0);
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let orbit = gen_logistic(
            &LogisticParams::fixed(cfg.alpha, max_len)
                .with_x0(logistic_x0(seed, r))
                .with_burn_in(cfg.burn_in),
        )?;
        let mut full = vec![orbit];
        if cfg.include_white_noise {
            full.push(gen_noise(
                NoiseKind::White,
                max_len.max(2),
                seed.derive(1 << 32).derive(r),
            )?);
        }
        let mut out = Vec::new();
        for method in &methods {
            for x in &full {
                for &n in &cfg.lengths {
                    let value = match forbidden_fraction_of(&x[..n], method) {
                        Ok(v) => Some(v),
                        Err(Error::InsufficientSamples { .. } | Error::ConstantSignal) => None,
                        Err(e) => return Err(e),
                    };
                    out.push(value);
                }
            }
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Windowed entropy profiles over an impulse-in-noise test signal.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpikeConfig {
    pub seed: u64,
    pub realizations: usize,
    pub n: usize,
    pub spike_pos: usize,
    pub spike_amp: f64,
    pub noise_sd: f64,
    pub window_length: usize,
    pub overlap: f64,
    pub methods: Vec<MethodSpec>,
}

impl SpikeConfig {
    pub fn spike_params(&self) -> SpikeParams {
        SpikeParams {
            n: self.n,
            spike_pos: self.spike_pos,
            spike_amp: self.spike_amp,
            noise_sd: self.noise_sd,
        }
    }
}

/// Axes: one-based `window`, one-based `start` sample of the window.
pub fn spike_experiment(cfg: &SpikeConfig) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let spec = WindowSpec::new(cfg.window_length, cfg.overlap)?;
    let starts: Vec<usize> = spec.ranges(cfg.n)?.map(|r| r.start).collect();
    let mut result = ExperimentResult::new("fig7", ("window", "start"), seed, cfg.realizations);
    let mut keys = Vec::new();
    for method in &methods {
        for (w, start) in starts.iter().enumerate() {
            keys.push(CellKey::for_method(method, w + 1, start + 1));
        }
    }
    let params = cfg.spike_params();
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let x = gen_spike_signal(&params, seed.derive(r))?;
        let mut out = Vec::new();
        for method in &methods {
            out.extend(
                windowed_entropy(&x, &spec, method)?
                    .iter()
                    .map(|w| w.value()),
            );
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Windowed entropy along a MIX process whose switching probability ramps
/// from randomness to order.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixSweepConfig {
    pub seed: u64,
    pub realizations: usize,
    pub n: usize,
    pub p_start: f64,
    pub p_end: f64,
    pub window_length: usize,
    pub overlap: f64,
    pub methods: Vec<MethodSpec>,
}

/// Axes: one-based `window`, `param` (`c=..` or `r=..`).
pub fn mix_sweep_experiment(cfg: &MixSweepConfig) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let spec = WindowSpec::new(cfg.window_length, cfg.overlap)?;
    let windows = spec.count(cfg.n)?;
    let mut result = ExperimentResult::new("fig10", ("window", "param"), seed, cfg.realizations);
    let mut keys = Vec::new();
    for method in &methods {
        for w in 0..windows {
            keys.push(CellKey::for_method(method, w + 1, parameter_label(method)));
        }
    }
    let params = MixParams::ramp(cfg.p_start, cfg.p_end, cfg.n);
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let x = gen_mix(&params, seed.derive(r))?;
        let mut out = Vec::new();
        for method in &methods {
            out.extend(
                windowed_entropy(&x, &spec, method)?
                    .iter()
                    .map(|w| w.value()),
            );
        }
        Ok(out)
    })?;
    Ok(result)
}

/// Spread of entropy estimates over MIX realizations at fixed `p`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CvConfig {
    pub seed: u64,
    pub realizations: usize,
    pub n: usize,
    pub p: f64,
    pub methods: Vec<MethodSpec>,
}

/// Axes: `length`, `param` (`c=..` or `r=..`). The coefficient of
/// variation of a cell is `sd / mean` (both population statistics).
pub fn cv_experiment(cfg: &CvConfig) -> Result<ExperimentResult> {
    check_realizations(cfg.realizations)?;
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let mut result = ExperimentResult::new("table2", ("length", "param"), seed, cfg.realizations);
    let keys = methods
        .iter()
        .map(|m| CellKey::for_method(m, cfg.n, parameter_label(m)))
        .collect();
    let params = MixParams::constant(cfg.p, cfg.n);
    aggregate(&mut result, keys, cfg.realizations, |r| {
        let x = gen_mix(&params, seed.derive(r))?;
        methods.iter().map(|m| defined(m.compute(&x))).collect()
    })?;
    Ok(result)
}

/// Wall-clock cost of each method against signal length.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingConfig {
    pub seed: u64,
    pub repeats: usize,
    pub lengths: Vec<usize>,
    pub methods: Vec<MethodSpec>,
}

/// Median seconds of `repeats` timed runs after one discarded warm-up run.
pub fn time_method(x: &[f64], method: &Method, repeats: usize) -> Result<(f64, f64)> {
    method.compute(x)?;
    let mut times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let r = method.compute(x)?;
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(r);
    }
    Ok((median(&times), population_sd(&times)))
}

/// Axes: `length`, unused second axis. `mean` holds the median run time in
/// seconds, `sd` the SD of the timed runs and `n_realizations` the repeat
/// count. Runs serially on the calling thread; the output is not
/// reproducible bit-for-bit.
pub fn timing_benchmark(cfg: &TimingConfig) -> Result<ExperimentResult> {
    if cfg.repeats < 3 {
        return Err(Error::InvalidParameter(format!(
            "timing needs at least 3 repeats, got {}",
            cfg.repeats
        )));
    }
    let seed = Seed(cfg.seed);
    let methods = methods(&cfg.methods)?;
    let mut result = ExperimentResult::new("table1", ("length", "-"), seed, cfg.repeats);
    let inputs = cfg
        .lengths
        .iter()
        .map(|&n| gen_noise(NoiseKind::White, n, seed.derive(n as u64)))
        .collect::<Result<Vec<_>>>()?;
    for method in &methods {
        for x in &inputs {
            let (median, sd) = time_method(x, method, cfg.repeats)?;
            result.push(
                CellKey::for_method(method, x.len(), ""),
                Summary {
                    mean: Some(median),
                    sd: Some(sd),
                    n: cfg.repeats,
                },
            );
        }
    }
    Ok(result)
}
