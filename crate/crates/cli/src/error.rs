use thiserror::Error;

use subsetsum::polyspace::PolyspaceError;
use subsetsum::ParseError;

/// Everything that ends a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("--target must be a positive integer, got {0}")]
    BadTarget(String),
    #[error("--delta must be a positive number, got {0}")]
    BadDelta(f64),
    #[error("bad --t-sweep {0:?}: expected A..B with A, B positive integers or powers 2^k")]
    BadSweep(String),
    #[error("SUBSETSUM_THREADS must be a positive integer, got {0:?}")]
    BadThreads(String),
    #[error(transparent)]
    Polyspace(#[from] PolyspaceError),
}
