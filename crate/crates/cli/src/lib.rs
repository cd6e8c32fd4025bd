//! Library half of the hyperstruc CLI: run configuration, file formats,
//! and the embed pipeline, kept separate so integration tests can drive
//! them directly.

pub mod config;
pub mod formats;
pub mod pipeline;
