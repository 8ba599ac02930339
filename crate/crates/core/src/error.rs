use std::path::PathBuf;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("basis dimension {dim} exceeds the configured cap of {cap}; reduce n_cutoff or j")]
    AllocationTooLarge { dim: usize, cap: usize },

    #[error("eigensolver failed to converge")]
    ConvergenceFailure,

    #[error("no eigenstate falls inside the energy window [{lo}, {hi}] (E/N)")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("dataset carries no eigenvectors")]
    MissingVectors,

    #[error("too few levels: need at least {needed}, got {got}")]
    TooFewLevels { needed: usize, got: usize },

    #[error("polynomial fit of the counting function is rank deficient")]
    DegenerateFit,

    #[error("too few spacings: need at least {needed}, got {got}")]
    TooFewSpacings { needed: usize, got: usize },

    #[error("all {0} spacings are degenerate")]
    AllDegenerate(usize),

    #[error("levels must be sorted ascending")]
    NotAscending,

    #[error("empty input")]
    EmptyInput,

    #[error("grid is not rectangular: {0}")]
    NonRectangularGrid(String),

    #[error("coefficient sample is empty")]
    EmptySample,

    #[error("sample range {0:e} is too narrow to bin")]
    DegenerateRange(f64),

    #[error("cannot write output {path}: {source}")]
    OutputUnwritable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
