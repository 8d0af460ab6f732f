//! Experiment harness around `qvint_core`: configuration parsing, domain
//! files, a parallel census driver, JSON/CSV reports and the property suite
//! run by `qvint verify`.

pub mod commands;
pub mod config;
pub mod domain_file;
pub mod error;
pub mod parallel;
pub mod report;
pub mod verify;

pub use error::{CliError, Result};
