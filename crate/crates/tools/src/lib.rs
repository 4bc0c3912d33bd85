//! Verification campaigns, JSON reports and the `hodiff` command line on
//! top of `hodiff-core`.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod sample;
pub mod systems;

pub use error::{CliError, CliResult};
