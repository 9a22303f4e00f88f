//! Spectral seriation with PQ-tree output: text and JSON formats plus the
//! `seriation` command-line tool. The algorithms live in [`seriation_core`],
//! re-exported here as [`core`].

pub use seriation_core as core;

pub mod cli;
pub mod json;
pub mod text;
