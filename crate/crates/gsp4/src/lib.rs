//! Command-line companion of `gsp4-core`: cached character tables, the
//! `Hom_N` and `Hom_R` dimension tables of `GSp(4, q)`, and the verification
//! suites, with JSON, CSV and text output.

pub mod cache;
pub mod config;
pub mod output;
pub mod run;

pub use config::{Command, Format, Model, RunConfig, Suite};
pub use run::{run, Outcome};
