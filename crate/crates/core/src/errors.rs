//! Shared error type for topology operations.

use crate::config::ConfigError;
use crate::surface::SurfaceError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopoError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("configuration has a bigon; geometric intersection numbers need minimal position")]
    BigonPresent,
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("not a triangle: {0}")]
    NotATriangle(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("not a separation: {0}")]
    NotASeparation(String),
    #[error("no stored relation fact for {0}")]
    NoFact(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("assembles to {computed}, declared ambient {declared}")]
    AssemblyMismatch { computed: String, declared: String },
    #[error("budget too large: {0}")]
    BudgetTooLarge(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal: {0}")]
    Internal(String),
}
