//! Conversion of real-valued samples into integer classes `1..=c`.
//!
//! Five mapping approaches are provided. `Linear` and the three sigmoidal
//! maps (`LogSig`, `TanSig`, `Ncdf`) first send every sample into the unit
//! interval and then discretize it with [`discretize_unit`]; `Sorting`
//! assigns classes by rank so that each class holds the same number of
//! samples (up to one).
//!
//! Statistics (mean, SD, min, max) are always computed on exactly the
//! samples passed in. Windowed callers therefore get per-window statistics.

use std::fmt;
use std::str::FromStr;

use crate::stats::validate_samples;
use crate::{Error, Result};

/// Mean, population SD and range of a signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalStats {
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

/// Population mean and SD (divide by `N`), exact min and max.
pub fn compute_stats(x: &[f64]) -> Result<SignalStats> {
    if x.is_empty() {
        return Err(Error::EmptySignal);
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let (min, max) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    // a constant signal can pick up rounding noise in the mean; pin it
    let (mean, sd) = if min == max {
        (min, 0.0)
    } else {
        (mean, var.sqrt())
    };
    Ok(SignalStats { mean, sd, min, max })
}

/// The five amplitude-to-class mapping approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MappingKind {
    Linear,
    Sorting,
    LogSig,
    TanSig,
    Ncdf,
}

impl MappingKind {
    pub const ALL: [MappingKind; 5] = [
        MappingKind::Linear,
        MappingKind::Sorting,
        MappingKind::LogSig,
        MappingKind::TanSig,
        MappingKind::Ncdf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MappingKind::Linear => "linear",
            MappingKind::Sorting => "sorting",
            MappingKind::LogSig => "logsig",
            MappingKind::TanSig => "tansig",
            MappingKind::Ncdf => "ncdf",
        }
    }

    /// Whether the mapping standardizes by mean and SD (and so rejects constant input).
    pub fn is_sigmoidal(self) -> bool {
        matches!(
            self,
            MappingKind::LogSig | MappingKind::TanSig | MappingKind::Ncdf
        )
    }

    pub fn map(self, x: &[f64], c: usize) -> Result<ClassSeries> {
        match self {
            MappingKind::Linear => map_linear(x, c),
            MappingKind::Sorting => map_sorting(x, c),
            MappingKind::LogSig => map_logsig(x, c),
            MappingKind::TanSig => map_tansig(x, c),
            MappingKind::Ncdf => map_ncdf(x, c),
        }
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MappingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(MappingKind::Linear),
            "sorting" | "sort" => Ok(MappingKind::Sorting),
            "logsig" => Ok(MappingKind::LogSig),
            "tansig" => Ok(MappingKind::TanSig),
            "ncdf" => Ok(MappingKind::Ncdf),
            other => Err(Error::InvalidParameter(format!(
                "unknown mapping `{other}` (expected linear, sorting, logsig, tansig or ncdf)"
            ))),
        }
    }
}

/// Integer class labels in `1..=c`, one per source sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSeries {
    classes: Vec<u32>,
    c: usize,
}

impl ClassSeries {
    /// Builds a class series, checking every label lies in `1..=c`.
    pub fn new(classes: Vec<u32>, c: usize) -> Result<Self> {
        check_class_count(c)?;
        if let Some(&bad) = classes.iter().find(|&&u| u == 0 || u as usize > c) {
            return Err(Error::InvalidParameter(format!(
                "class {bad} outside 1..={c}"
            )));
        }
        Ok(ClassSeries { classes, c })
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn check_class_count(c: usize) -> Result<()> {
    if c < 2 {
        return Err(Error::InvalidParameter(format!(
            "number of classes must be at least 2, got {c}"
        )));
    }
    if c > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("too many classes: {c}")));
    }
    Ok(())
}

#[inline]
fn unit_to_class(y: f64, c: usize) -> u32 {
    let z = c as f64 * y + 0.5;
    // round half up, then clamp; only y = 0 or y = 1 can land outside 1..=c
    let u = (z + 0.5).floor() as i64;
    u.clamp(1, c as i64) as u32
}

/// Sends unit-interval values to classes: `z = c*y + 0.5`, `u = round_half_up(z)`
/// clamped to `[1, c]`.
pub fn discretize_unit(y: &[f64], c: usize) -> Result<ClassSeries> {
    check_class_count(c)?;
    if let Some(&value) = y.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::OutOfUnitRange { value });
    }
    let classes = y.iter().map(|&v| unit_to_class(v, c)).collect();
    Ok(ClassSeries { classes, c })
}

/// Min-max rescaling to the unit interval, then [`discretize_unit`].
///
/// A constant signal maps every sample to the middle class `round_half_up(c/2 + 0.5)`.
pub fn map_linear(x: &[f64], c: usize) -> Result<ClassSeries> {
    validate_samples(x)?;
    check_class_count(c)?;
    let stats = compute_stats(x)?;
    let range = stats.max - stats.min;
    let classes = if range > 0.0 {
        x.iter()
            .map(|&v| unit_to_class(((v - stats.min) / range).clamp(0.0, 1.0), c))
            .collect()
    } else {
        vec![unit_to_class(0.5, c); x.len()]
    };
    Ok(ClassSeries { classes, c })
}

/// Rank-based mapping: class `ceil(r * c / N)` for ascending rank `r` in `1..=N`.
///
/// Ties keep their order of appearance.
pub fn map_sorting(x: &[f64], c: usize) -> Result<ClassSeries> {
    validate_samples(x)?;
    check_class_count(c)?;
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut classes = vec![0u32; n];
    for (rank0, &idx) in order.iter().enumerate() {
        let rank = rank0 + 1;
        classes[idx] = (rank * c).div_ceil(n) as u32;
    }
    Ok(ClassSeries { classes, c })
}

fn standardized(x: &[f64]) -> Result<(f64, f64)> {
    validate_samples(x)?;
    let stats = compute_stats(x)?;
    if stats.sd == 0.0 {
        return Err(Error::ConstantSignal);
    }
    Ok((stats.mean, stats.sd))
}

fn map_with(x: &[f64], c: usize, f: impl Fn(f64) -> f64) -> Result<ClassSeries> {
    check_class_count(c)?;
    let (mu, sigma) = standardized(x)?;
    let classes = x
        .iter()
        .map(|&v| unit_to_class(f((v - mu) / sigma), c))
        .collect();
    Ok(ClassSeries { classes, c })
}

/// Logistic sigmoid `1 / (1 + exp(-t))`.
pub fn logsig(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// Hyperbolic-tangent sigmoid `2 / (1 + exp(-2t)) - 1`, in `(-1, 1)`.
pub fn tansig(t: f64) -> f64 {
    2.0 / (1.0 + (-2.0 * t).exp()) - 1.0
}

/// Standard normal CDF via the complementary error function.
pub fn normal_cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t / std::f64::consts::SQRT_2)
}

/// `y = logsig((x - mu) / sigma)`, then [`discretize_unit`].
pub fn map_logsig(x: &[f64], c: usize) -> Result<ClassSeries> {
    map_with(x, c, logsig)
}

/// `y = tansig((x - mu) / sigma)` rescaled by `(y + 1) / 2`, then [`discretize_unit`].
pub fn map_tansig(x: &[f64], c: usize) -> Result<ClassSeries> {
    map_with(x, c, |t| (tansig(t) + 1.0) / 2.0)
}

/// `y = Phi((x - mu) / sigma)`, then [`discretize_unit`].
pub fn map_ncdf(x: &[f64], c: usize) -> Result<ClassSeries> {
    map_with(x, c, normal_cdf)
}
