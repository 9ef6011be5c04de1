//! Command-line front end: configuration, result cache and command runners.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
