//! Command-line front end for `update-queues`: amplitude tables over Δ
//! grids, trajectory CSV for plotting, and simulation-versus-analytic
//! comparison reports.
//!
//! ```
//! use update_queues_cli::{execute, Command, RunConfig};
//!
//! let mut cfg = RunConfig::new(Command::Amplitude);
//! cfg.delta = Some(1.0);
//! let out = execute(&cfg).unwrap();
//! let amplitude = out.report.rows()[0][3].as_f64().unwrap();
//! assert!((amplitude - 2.2609).abs() < 5e-5);
//! ```

// `!(x > y)` comparisons are deliberate: NaN must fail validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod report;

pub use commands::{emit_table, execute, run, Outcome};
pub use config::{Cli, Command, MethodChoice, RunConfig};
pub use error::{CliError, Result};
pub use parse::{parse_grid, parse_perturbation};
pub use report::{Cell, Report};
