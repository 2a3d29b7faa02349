//! Command-line front end for `oddsmo-core`.
//!
//! The binary is a thin wrapper around [`commands::run`]; the modules are
//! public so tests and other tools can reuse the spec parser and formatter.

pub mod commands;
pub mod error;
pub mod format;
pub mod spec;

pub use commands::run;
pub use error::CliError;
pub use spec::{parse, DistSpec, SpecError};
