//! Workspace documents and the subcommands of the `fole` binary.

pub mod commands;
pub mod doc;
pub mod workspace;

pub use commands::{CmdError, Report, Verdict};
pub use workspace::{parse_str, parse_workspace, serialize, LoadError, Workspace};
