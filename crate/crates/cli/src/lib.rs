//! Configuration, scenario execution and CSV emission for the
//! `qc-arrival` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;

pub use config::{RawConfig, Scenario, ScenarioConfig};
pub use error::{CliError, Result};
