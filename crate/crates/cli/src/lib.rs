//! Command-line front end: reads a JSON configuration, runs the assembly
//! pipeline and writes a JSON report.

pub mod error;
pub mod report;
pub mod run;
pub mod schema;

pub use error::CliError;
pub use report::RunReport;
pub use run::{check, run, run_file, Flags, MethodChoice};
pub use schema::{emit_config, parse_config, parse_config_str};
