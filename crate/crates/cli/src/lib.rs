//! Configuration and planning for the `zext` command-line tool.

pub mod config;
pub mod plan;
