//! Command-line front end: configuration, pipeline dispatch and reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod pipeline;
pub mod report;
