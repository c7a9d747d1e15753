//! Command-line front end for linkforge: embedding generation, invariant
//! queries, verification suites, witness searches and diagram rewrites.

pub mod commands;
pub mod report;

pub use report::RunReport;
