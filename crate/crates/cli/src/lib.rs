//! File formats, statistics and the command-line front end for
//! `nextbest-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod graph_doc;
pub mod parallel;
pub mod results;
pub mod stats;
pub mod trace_doc;
pub mod verify;

pub use error::{CliError, CliResult};
