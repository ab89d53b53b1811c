//! File formats, the census driver and the command line for
//! `digitmult-core`.

pub mod census;
pub mod cli;
pub mod files;
