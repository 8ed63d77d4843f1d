//! Batch front end for `gramkit`: JSON run configurations in, a JSON report
//! and CSV tables out.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{generate_points, parse_config, RunConfig};
pub use error::CliError;
pub use report::ReportDocument;
pub use run::{analyze, run, run_file, Analysis, RunOptions, RunOutput};
