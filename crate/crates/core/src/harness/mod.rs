//! Experiment configs, reports and the reproduction scripts behind the CLI.

pub mod config;
pub mod report;
mod reproduce;
mod run;

pub use config::{DensitySet, ExperimentConfig, Task, Theorem};
pub use report::{emit_report, Assertion, Format, Report, Row, ValueKind};
pub use reproduce::{catalog, reproduce, reproduce_theorem, BIP_RATIO, CATALOG_EXPECTED, POSITIVE};
pub use run::run_config;
