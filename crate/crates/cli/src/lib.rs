//! Support library for the `eit` binary: configuration files, CSV tables,
//! SVG rendering, and the bundled reference figures.

pub mod config;
pub mod figures;
pub mod svg;
pub mod table;

/// Top-level failure classes, mapped onto process exit codes by the binary.
#[derive(Debug)]
pub enum AppError {
    /// Bad configuration or option combination; exit code 1.
    Config(String),
    /// Failure inside a computation or while writing results; exit code 2.
    Numeric(String),
}

impl From<eit_core::Error> for AppError {
    fn from(e: eit_core::Error) -> Self {
        AppError::Numeric(e.to_string())
    }
}

impl From<config::ConfigError> for AppError {
    fn from(e: config::ConfigError) -> Self {
        AppError::Config(e.to_string())
    }
}

impl From<table::TableError> for AppError {
    fn from(e: table::TableError) -> Self {
        AppError::Config(e.to_string())
    }
}
