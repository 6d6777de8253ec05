//! Library side of the `fractal-groups` command: verification suites shared
//! with the acceptance tests, seeded generators, budgets and the Julia
//! set renderer.
//!
//! Exit codes are fixed: 0 success, 1 verification failure, 2 usage error,
//! 3 I/O error.

pub mod budget;
pub mod gen;
pub mod julia;
pub mod suites;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Cap on lamination generations unless raised with `--max-generations`.
pub const DEFAULT_GENERATION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}
