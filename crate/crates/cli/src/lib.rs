//! Scenario runner, parameter sweeps and verification suites for the vortex models.

pub mod error;
pub mod fixtures;
pub mod runner;
pub mod scenario;
pub mod sweep;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult};
pub use runner::{run, run_file, RunOutput, RunSummary, Status};
pub use scenario::Scenario;
