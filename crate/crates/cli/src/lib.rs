//! Verification suites and file formats for the diffn grid calculus.
//!
//! The library side of the `verify` binary: deterministic instance
//! generators, suite runners that produce per-case reports, and plain-text
//! round trips for grids and bodies.

pub mod config;
pub mod gen;
pub mod grid_io;
pub mod report;
pub mod rng;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] diffn_core::Error),
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("unknown suite {0:?} (run with --list to see the names)")]
    UnknownSuite(String),
    #[error("{0}")]
    Config(String),
}
