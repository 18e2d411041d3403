//! Scenario files, artifact formats and the command-line front end for
//! `awgris-core`.
//!
//! A scenario is a JSON document (see [`config::Scenario`]). Running one
//! writes, into its output directory:
//!
//! - `effective_config.json`: the scenario with every default filled in;
//!   running it again reproduces the same artifacts
//! - `pattern.csv`, `control_<j>.csv`, `received.csv`, `target.csv`
//! - `spectrum.csv` and spectrogram PGM/CSV files when configured
//! - `summary.json` with headline numbers
//! - `manifest.json` with the SHA-256 of every file above
//!
//! Variants run in subdirectories named after them.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod manifest;
pub mod pgm;
pub mod runner;

pub use config::Scenario;
pub use error::{CliError, Result};
pub use runner::{run_scenario, RunReport, RunSummary, Task};
