use thiserror::Error;

/// Errors raised anywhere in the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("monomial exponent overflow: ln2^{ln2} * pi^{pi} is outside the supported box")]
    ExponentOverflow { ln2: i32, pi: i32 },

    #[error("divisor is not a single monomial ({terms} terms)")]
    NotMonomial { terms: usize },

    #[error("pole at argument {arg}")]
    Pole { arg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("binding {binding} is outside the domain of {id}: {reason}")]
    Domain {
        id: String,
        binding: String,
        reason: String,
    },

    #[error("unknown identity id `{0}`")]
    UnknownId(String),

    #[error("identity {id} does not support the {backend} backend")]
    BackendUnsupported { id: String, backend: String },

    #[error("no {kind} relation between {from} and {to}")]
    RelationMissing {
        kind: String,
        from: String,
        to: String,
    },

    #[error("could not reach the requested precision: {0}")]
    Precision(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
