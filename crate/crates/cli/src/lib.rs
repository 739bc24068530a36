//! Table reproduction, property suites and artifact output for
//! `korovkin-core`.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod golden;
pub mod output;
pub mod tables;
