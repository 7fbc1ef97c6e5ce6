//! Scenario files, artifact writers and dispatch behind the `yeefdtd`
//! command.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::ScenarioConfig;
pub use error::{ConfigError, RunError};
