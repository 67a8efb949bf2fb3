//! Library half of the `ncg` binary: configuration, dispatch and the report format.

pub mod commands;
pub mod config;
pub mod dispatch;
pub mod golden;
pub mod report;

use std::fmt;

use ncg_core::NcgError;

pub use config::RunConfig;
pub use dispatch::{dispatch, ROUTES};
pub use golden::{golden_diff, GoldenDiff};
pub use report::{CheckResult, Report, Status, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A command-line value that cannot be used; names the offending flag.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub field: String,
    pub message: String,
}

impl UsageError {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        UsageError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid --{}: {}", self.field, self.message)
    }
}

impl std::error::Error for UsageError {}

/// A library error tagged with the module that raised it.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleError {
    pub module: &'static str,
    pub source: NcgError,
}

impl ModuleError {
    /// `module.kind`, e.g. `spectral.domain`.
    pub fn code(&self) -> String {
        format!("{}.{}", self.module, self.source.code())
    }
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code(), self.source)
    }
}

impl std::error::Error for ModuleError {
    // The message already quotes `source`, so skip a level to avoid printing it twice.
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        std::error::Error::source(&self.source)
    }
}

/// Tags core results with their module.
pub trait InModule<T> {
    fn in_module(self, module: &'static str) -> anyhow::Result<T>;
}

impl<T> InModule<T> for ncg_core::Result<T> {
    fn in_module(self, module: &'static str) -> anyhow::Result<T> {
        self.map_err(|source| ModuleError { module, source }.into())
    }
}

/// Exit code for an error escaping [`dispatch`]. Bad parameters caught by a module
/// count as usage errors; anything else is a failed run.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<clap::Error>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<ModuleError>() {
        Some(ModuleError { source: NcgError::Parameter(_) | NcgError::Parse { .. }, .. }) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}
