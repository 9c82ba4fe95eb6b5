//! Batch front-end: JSON run configurations in, JSON reports out.

pub mod catalog;
pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, RunConfig};
pub use report::{Report, TaskStatus};
pub use run::{run, Overrides};
