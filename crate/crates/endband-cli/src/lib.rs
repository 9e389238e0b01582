//! JSON wire formats, shorthand parsers, and report types for the endband
//! command line.

pub mod formats;
pub mod report;
