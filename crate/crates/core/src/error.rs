use thiserror::Error;

/// Errors raised by diagram construction, moves, invariants and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram code: {0}")]
    MalformedCode(String),

    #[error("diagram is not spherical: piece with {crossings} crossings has {faces} faces (expected {expected})")]
    NonSpherical {
        crossings: usize,
        faces: usize,
        expected: usize,
    },

    #[error("dart {dart} out of range for a diagram with {darts} darts")]
    DartOutOfRange { dart: usize, darts: usize },

    #[error("move site is not applicable to this diagram: {0}")]
    StaleSite(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("evaluation budget exceeded: {crossings} crossings above cap {cap}")]
    Budget { crossings: usize, cap: usize },

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("ambiguous identification: fingerprint matches {0:?}")]
    Ambiguous(Vec<String>),

    #[error("gadget discovery failed for {name}: {reason}")]
    Discovery { name: String, reason: String },

    #[error("construction bound violated: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
