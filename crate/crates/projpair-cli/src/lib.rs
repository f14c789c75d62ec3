//! Command-line companion to `projpair-core`: file formats, report
//! rendering, a seeded pair generator, and the subcommand dispatch.
//!
//! The pieces live in a library so integration tests can drive the pair
//! generator and report assembly in-process instead of spawning hundreds
//! of subprocesses.

pub mod commands;
pub mod error;
pub mod format;
pub mod pairgen;
pub mod report;
