//! File formats, deterministic reports, and the command-line front end for
//! the strong shift equivalence toolkit in `shifteq-core`.

pub mod cli;
pub mod formats;
pub mod report;
