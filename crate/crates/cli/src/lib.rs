//! Command-line plumbing for `qkgr`: expression parsing, output formats and suites.
//!
//! - [`expr`]: the `--class` grammar
//! - [`output`]: JSON (`qkgr/1`) and CSV writers
//! - [`suites`]: verification suites and the thread fan-out

pub mod expr;
pub mod output;
pub mod suites;
