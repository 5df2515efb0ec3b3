//! Scenario files, catalogs, sweeps, CSV and SVG output, and the CLI.

pub mod catalog;
pub mod cli;
pub mod outputs;
pub mod scenario_file;
pub mod svg;
pub mod sweep;
pub mod table;

pub use scenario_file::{parse_scenario, parse_scenario_str};
pub use sweep::{run_study, StudyDefinition};
