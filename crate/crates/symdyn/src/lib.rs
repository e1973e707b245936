//! File formats, reports, the parallel search harness, PNG output and the
//! `symdyn` command line on top of `symdyn-core`.

pub mod cli;
pub mod format;
pub mod plot;
pub mod report;
pub mod search;
