//! Config parsing, scenario runs and CSV output behind the `hfsim` binary.

pub mod config;
pub mod output;
pub mod run;

pub use config::{echo_config, load_config, parse_config, ConfigError};
pub use run::{execute, run, RunError, RunManifest, Scenario};
