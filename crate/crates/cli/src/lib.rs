//! Config parsing and verb implementations behind the `zeckgen` binary.

pub mod config;
pub mod verbs;
