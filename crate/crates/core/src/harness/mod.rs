//! Configuration, experiment runners and report files.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_assignment, parse_grid, parse_kv, read_kv_file, ExperimentConfig, Mode, SweepParam, SweepSpec};
pub use report::{emit_report, Envelope, ErrorRecord, ReportFormat, SCHEMA_VERSION};
pub use run::{pp_check, run, sweep, PpCheckReport, RunOutcome, SweepRow, EXIT_VIOLATION};
