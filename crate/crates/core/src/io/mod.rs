//! Input ingestion, run configuration, verification suites and report emission.

pub mod input;
pub mod report;
pub mod suites;
pub mod table;

pub use input::{ingest, parse_group, parse_input, parse_quantum, parse_subgroup, Input};
pub use report::{canonical_json, Check, Report};
pub use suites::RunConfig;
pub use table::{parse_table, LoadedTable};
