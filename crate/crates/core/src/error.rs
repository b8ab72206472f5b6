use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("edge label {label} appears {count} time(s); every label must join two distinct crossing slots exactly once each")]
    LabelArity { label: usize, count: usize },

    #[error("PD code describes a link with {0} components")]
    MultiComponent(usize),

    #[error("face trace fails the Euler check: V - E + F = {v} - {e} + {f}")]
    NonPlanar { v: usize, e: usize, f: usize },

    #[error("edge {edge} out of range for a diagram with {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },

    #[error("{count} states exceeds the enumeration cap of {cap}")]
    StateExplosion { count: u128, cap: u128 },

    #[error("grading convention mismatch: {0}")]
    ConventionMismatch(String),

    #[error("state sum {0} admits no normalization by ±T^c")]
    SymmetrizationFailure(String),

    #[error("Alexander polynomial {0} is not symmetric")]
    NonSymmetricDelta(String),

    #[error("bad parity: {0}")]
    BadParity(String),

    #[error("curated arrow {0} does not satisfy the differential precondition")]
    BadCuration(String),

    #[error("bad family spec: {0}")]
    BadSpec(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
