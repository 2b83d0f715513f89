use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("crossing {id} appears {count} times (expected 2)")]
    Pairing { id: u32, count: usize },

    #[error("crossing {0} needs one over and one under passage")]
    Roles(u32),

    #[error("passages of crossing {0} carry different signs")]
    Signs(u32),

    #[error("unknown crossing {0}")]
    UnknownCrossing(u32),

    #[error("move {kind} does not match the diagram at its site: {reason}")]
    PatternMismatch { kind: &'static str, reason: String },

    #[error("step {index} of the trace is not applicable: {source}")]
    Replay {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("diagram has degree {0}, expected 0")]
    NonzeroDegree(i64),

    #[error("crossing {crossing} has winding parity {parity}, expected 0 or -1")]
    ParityOutOfRange { crossing: u32, parity: i64 },

    #[error("malformed trace line {line}: {reason}")]
    MalformedTrace { line: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
