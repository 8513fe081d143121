//! Command-line front end for the kancalc engine: text formats, DOT
//! export, reports and subcommands.

pub mod commands;
pub mod dot;
pub mod format;
pub mod report;
