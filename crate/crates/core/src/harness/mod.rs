//! Parameter sweeps, fits and output files for the reported experiments.

pub mod bisect;
pub mod config;
pub mod experiments;
pub mod fit;
pub mod output;
pub mod svg;

pub use config::{ExperimentConfig, ExperimentKind};
pub use experiments::{execute, run_experiment};
