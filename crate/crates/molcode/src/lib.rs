//! File formats, dataset ingestion and the `molcode` command-line tool.

pub mod cli;
pub mod ingest;
pub mod model;
pub mod molfile;
pub mod record;
pub mod report;
pub mod synth;
pub mod tables;
pub mod topo;

pub use molcode_core as core;
