//! Command-line front end for `wignerkit`: configuration, run reports, curve
//! files, and the scenario runners behind the `wignerkit` binary.

pub mod config;
pub mod curve;
pub mod error;
pub mod report;
pub mod scenario;

pub use config::ScenarioConfig;
pub use error::RunError;
pub use report::Report;
pub use scenario::{run, RunOutput};
