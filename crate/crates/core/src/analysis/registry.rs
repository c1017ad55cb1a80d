//! Named experiments and their frozen defaults.
//!
//! The defaults live in `experiments.toml` (embedded at build time, schema
//! version [`REGISTRY_VERSION`]). Each experiment can be rerun exactly from
//! its name alone; [`Overrides`] changes the seed or the realization count.

use serde::Deserialize;

use crate::entropy::{DispersionParams, Method, SampEnParams};
use crate::mapping::MappingKind;
use crate::patterns::EmbeddingParams;
use crate::{Error, Result};

use super::experiments::{
    cv_experiment, forbidden_decay_experiment, mix_sweep_experiment, noise_ordering_experiment,
    noise_sensitivity_experiment, parameter_sensitivity_experiment, spike_experiment,
    timing_benchmark, CvConfig, ForbiddenConfig, MixSweepConfig, NoiseOrderingConfig,
    NoiseSensitivityConfig, ParameterSensitivityConfig, SpikeConfig, TimingConfig,
};
use super::result::ExperimentResult;

pub const REGISTRY_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../../experiments.toml");

/// Every experiment name, in registry order.
pub const EXPERIMENT_NAMES: [&str; 9] = [
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig10", "table1", "table2",
];

/// A method as written in the registry file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodSpec {
    pub method: String,
    #[serde(default)]
    pub mapping: Option<String>,
    pub m: usize,
    #[serde(default)]
    pub c: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub r: Option<f64>,
}

impl MethodSpec {
    pub fn to_method(&self) -> Result<Method> {
        let d = self.d.unwrap_or(1);
        let dispersion = || -> Result<DispersionParams> {
            let c = self.c.ok_or_else(|| {
                Error::Registry(format!("{} entry needs a class count `c`", self.method))
            })?;
            let mapping = match &self.mapping {
                Some(name) => name.parse()?,
                None => MappingKind::LogSig,
            };
            Ok(DispersionParams::new(self.m, c, d, mapping))
        };
        match self.method.as_str() {
            "dispen" => Ok(Method::DispEn(dispersion()?)),
            "fdispen" => Ok(Method::FDispEn(dispersion()?)),
            "peren" => Ok(Method::PerEn(EmbeddingParams::new(self.m, d)?)),
            "sampen" => Ok(Method::SampEn(SampEnParams::new(
                self.m,
                self.r.unwrap_or(0.2),
            ))),
            other => Err(Error::Registry(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub version: u32,
    pub fig2: ParameterSensitivityConfig,
    pub fig3: NoiseSensitivityConfig,
    pub fig4: NoiseSensitivityConfig,
    pub fig5: NoiseOrderingConfig,
    pub fig6: ForbiddenConfig,
    pub fig7: SpikeConfig,
    pub fig10: MixSweepConfig,
    pub table1: TimingConfig,
    pub table2: CvConfig,
}

/// Command-line style overrides applied on top of the registry defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    /// Realization count (repeat count for `table1`).
    pub realizations: Option<usize>,
}

fn apply(seed: &mut u64, realizations: &mut usize, o: &Overrides) {
    if let Some(s) = o.seed {
        *seed = s;
    }
    if let Some(k) = o.realizations {
        *realizations = k;
    }
}

impl Registry {
    /// The defaults shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("embedded experiments.toml is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let registry: Registry =
            toml::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        if registry.version != REGISTRY_VERSION {
            return Err(Error::Registry(format!(
                "unsupported registry version {} (expected {REGISTRY_VERSION})",
                registry.version
            )));
        }
        Ok(registry)
    }

    pub fn run(&self, name: &str, overrides: &Overrides) -> Result<ExperimentResult> {
        let mut reg = self.clone();
        let o = overrides;
        match name {
            "fig2" => {
                apply(&mut reg.fig2.seed, &mut reg.fig2.realizations, o);
                parameter_sensitivity_experiment(&reg.fig2)
            }
            "fig3" => {
                apply(&mut reg.fig3.seed, &mut reg.fig3.realizations, o);
                noise_sensitivity_experiment("fig3", &reg.fig3)
            }
            "fig4" => {
                apply(&mut reg.fig4.seed, &mut reg.fig4.realizations, o);
                noise_sensitivity_experiment("fig4", &reg.fig4)
            }
            "fig5" => {
                apply(&mut reg.fig5.seed, &mut reg.fig5.realizations, o);
                noise_ordering_experiment(&reg.fig5)
            }
            "fig6" => {
                apply(&mut reg.fig6.seed, &mut reg.fig6.realizations, o);
                forbidden_decay_experiment(&reg.fig6)
            }
            "fig7" => {
                apply(&mut reg.fig7.seed, &mut reg.fig7.realizations, o);
                spike_experiment(&reg.fig7)
            }
            "fig10" => {
                apply(&mut reg.fig10.seed, &mut reg.fig10.realizations, o);
                mix_sweep_experiment(&reg.fig10)
            }
            "table1" => {
                apply(&mut reg.table1.seed, &mut reg.table1.repeats, o);
                timing_benchmark(&reg.table1)
            }
            "table2" => {
                apply(&mut reg.table2.seed, &mut reg.table2.realizations, o);
                cv_experiment(&reg.table2)
            }
            other => Err(Error::UnknownExperiment {
                name: other.to_string(),
                valid: EXPERIMENT_NAMES.join(", "),
            }),
        }
    }
}
