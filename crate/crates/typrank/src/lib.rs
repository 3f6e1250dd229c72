//! File formats, JSON reports, parallel samplers and the `typrank` command
//! line on top of `typrank-core`.

pub mod cli;
mod error;
pub mod formats;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
