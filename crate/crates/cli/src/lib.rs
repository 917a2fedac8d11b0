//! Command-line driver for `corecalc`.
//!
//! `run` reads a JSON problem file of named objects and queries and writes
//! a JSON report; `fuzz` runs seeded randomized campaigns that check the
//! calculus rules and the core characterizations instance by instance.

pub mod codec;
pub mod error;
pub mod expect;
pub mod fuzz;
pub mod ops;
pub mod problem;
pub mod run;

pub use error::{CliError, CliResult};
pub use fuzz::{cmd_fuzz, FuzzOptions, FuzzSummary};
pub use problem::ProblemFile;
pub use run::{cmd_run, run_problem, run_text, Exit, RunOptions};
