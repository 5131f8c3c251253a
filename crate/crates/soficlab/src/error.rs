use thiserror::Error;

/// Crate-wide error type. Decision procedures do not use errors to report
/// negative answers; errors mean the question itself was ill-posed, an input
/// violated a precondition, or a resource budget ran out before the
/// computation finished.
#[derive(Debug, Error)]
pub enum Error {
    /// Input document does not match the graph schema. `pointer` is the JSON
    /// pointer of the offending element.
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("alphabet error: {0}")]
    Alphabet(String),

    /// The presentation has no bi-infinite paths, so the shift is empty and
    /// the requested operation is undefined on it.
    #[error("operation undefined on the empty shift: {0}")]
    EmptyShift(String),

    #[error("presentation is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured resource budget was exhausted before the computation
    /// finished. The caller may retry with larger budgets.
    #[error("budget exceeded while {what} (limit {limit})")]
    Budget { what: String, limit: u64 },

    #[error("cover is not finite-to-one, degree is infinite")]
    NotFiniteToOne,

    /// The periodic point named by the caller is not receptive, so the
    /// requested cover surgery does not apply to it.
    #[error("periodic point is not receptive: {0}")]
    NotReceptive(String),

    /// The shift has zero entropy, so the requested entropy-extraction
    /// construction has no room to work in.
    #[error("shift has zero entropy: {0}")]
    ZeroEntropy(String),

    /// A forged construction failed its post-construction validation. The
    /// message names the check that failed; the construction is discarded.
    #[error("construction failed validation: {0}")]
    ForgeValidation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// An internal invariant was violated. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    pub fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::Budget {
            what: what.into(),
            limit,
        }
    }
}
