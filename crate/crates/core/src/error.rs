use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle notation error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("{what} with n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("permutation {0} is not an element of the group")]
    NotInGroup(String),

    #[error("character is not trivial on the stabilizer of {0}")]
    IncompatibleOrbit(String),

    #[error("state is not invariant (up to phase) under {0}")]
    NotInvariant(String),

    #[error("assignment does not extend to a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("zero vector")]
    ZeroVector,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invariant subspace mismatch: projector rank {projector_rank}, Dicke basis size {dicke_count}")]
    SubspaceMismatch {
        projector_rank: usize,
        dicke_count: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
