//! Irregularity measures for time series built on dispersion patterns.
//!
//! The crate computes amplitude-based dispersion entropy ([`entropy::dispen`]),
//! frequency-based dispersion entropy ([`entropy::fdispen`]), permutation
//! entropy ([`entropy::peren`]) and sample entropy ([`entropy::sampen`]).
//! Supporting modules turn real amplitudes into integer classes
//! ([`mapping`]), count patterns ([`patterns`]), generate the synthetic test
//! signals used to characterize the measures ([`signals`]) and run
//! parameterized, CSV-emitting experiments over them ([`analysis`]).
//!
//! ```
//! use dispen::entropy::{dispen, DispersionParams};
//! use dispen::mapping::MappingKind;
//!
//! let x = [3.6, 4.2, 1.2, 3.1, 4.2, 2.1, 3.3, 4.6, 6.8, 8.4];
//! let params = DispersionParams::new(2, 3, 1, MappingKind::Linear);
//! let result = dispen(&x, &params).unwrap();
//! assert!((result.raw - 1.7351).abs() < 1e-4);
//! ```

pub mod analysis;
pub mod cli;
pub mod entropy;
mod error;
pub mod mapping;
pub mod patterns;
pub mod signals;
pub mod stats;

pub use error::{Error, Result};
pub use signals::Signal;
