//! Command-line front end and file formats for the `fracairy-core` solver:
//! run configuration, CSV grids and sampled data, verification reports and
//! the named verification batteries.

// `!(x > y)` rejects NaN along with the ordered failures.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod batteries;
pub mod cli;
pub mod config;
pub mod csvio;
pub mod error;
pub mod format;
pub mod report;
pub mod run;

pub use cli::Cli;
pub use error::{CliError, Result};
