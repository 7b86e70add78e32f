//! File formats: problem files, optimizer configuration and run reports.

mod config;
mod problem_file;
mod report;

pub use config::{load_config, parse_config};
pub use problem_file::{parse_problem_file, read_problem_file, serialize_problem_file, ParseError, ParseErrorKind};
pub use report::{
    convergence_header, format_layout, format_result, format_stats, write_convergence_csv, ConvergenceRow, RunStats,
};
