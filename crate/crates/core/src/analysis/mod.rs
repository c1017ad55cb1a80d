//! Experiment orchestration.
//!
//! Sliding-window entropy profiles, noise-sensitivity ratios, summary
//! statistics, group comparison and the named experiments that regenerate
//! every synthetic result (see [`registry`]). Experiments produce an
//! [`ExperimentResult`], a long-format grid that serializes to CSV.

mod experiments;
mod group;
pub mod registry;
mod result;
mod summary;
mod window;

pub use experiments::{
    cv_experiment, forbidden_decay_experiment, forbidden_fraction_of, mix_sweep_experiment,
    noise_entropies, noise_ordering_experiment, noise_sensitivity_experiment,
    parameter_sensitivity_experiment, spike_experiment, time_method, timing_benchmark, CvConfig,
    ForbiddenConfig, MixSweepConfig, NoiseOrderingConfig, NoiseSensitivityConfig,
    ParameterSensitivityConfig, SpikeConfig, TimingConfig,
};
pub use group::{group_compare, GroupComparison, GroupSummary, SignalEntropy};
pub use registry::{MethodSpec, Overrides, Registry, EXPERIMENT_NAMES};
pub use result::{Cell, CellKey, ExperimentResult, CSV_HEADER};
pub use summary::{cv, hedges_g, Summary};
pub use window::{nrm_ent_n, windowed_entropy, WindowEntropy, WindowSpec};
