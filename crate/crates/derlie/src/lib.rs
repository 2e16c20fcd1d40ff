//! Session files, reports and command dispatch for the `derlie` tool.

pub mod commands;
pub mod datafile;
pub mod error;
pub mod parse;
pub mod report;
pub mod session;

pub use commands::{run, Cli, Command, Format, Output};
pub use error::{CliError, Pos, Result};
pub use parse::{parse_dexpr, parse_rexpr, parse_session};
pub use report::{Batch, ReportDoc};
pub use session::Session;
