//! JSON front end for `qsys-core`: loading presentations and structures,
//! running the checkers and writing reports.
//!
//! The `qsys` binary is a thin clap wrapper over [`commands`].

pub mod commands;
pub mod error;
pub mod export;
pub mod load;
pub mod schema;

pub use commands::{
    cmd_check, cmd_complete, cmd_find_qsystems, cmd_validate, cmd_verify_theorems, Options,
    Outcome, Target,
};
pub use error::{CliError, CliResult};
pub use load::{parse_document, presentation_from_doc, read_document, Workspace};
pub use schema::{Document, ReportJson, SearchJson, SCHEMA_VERSION};

/// Exit status for a report that failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for bad usage or unreadable input.
pub const EXIT_USAGE: i32 = 2;
