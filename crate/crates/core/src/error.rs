//! Error type shared by all pipeline stages.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by pipeline operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Document bytes are not valid UTF-8.
    #[error("document '{id}' is not valid UTF-8 at byte {offset}")]
    InvalidEncoding { id: String, offset: usize },

    /// A lexicon file maps the same word twice.
    #[error("{path}:{line}: duplicate lexicon entry '{word}'")]
    DuplicateLexiconEntry {
        path: PathBuf,
        line: usize,
        word: String,
    },

    /// A lexicon line does not parse as `word<TAB>tag`.
    #[error("{path}:{line}: malformed lexicon entry: {reason}")]
    MalformedLexiconEntry {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// No token survived the concept part-of-speech filter.
    #[error("empty vocabulary: no token matches the concept part-of-speech filter")]
    EmptyVocabulary,

    /// A document holds no counted tokens, so term frequencies are undefined.
    #[error("document '{doc}' has no counted tokens")]
    EmptyDocument { doc: String },

    /// Two containers that must agree in size do not.
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    /// Numeric input contains NaN or infinity.
    #[error("non-finite value in input")]
    NonFinite,

    /// The factorization did not converge within the sweep limit.
    #[error("singular value decomposition did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Requested rank is outside `1..=r`.
    #[error("rank {k} out of bounds (valid range 1..={max})")]
    RankOutOfBounds { k: usize, max: usize },

    /// Jaccard similarity of two empty sets divides by zero.
    #[error("similarity undefined: both sets are empty")]
    UndefinedSimilarity,

    /// A similarity value falls outside [0, 1].
    #[error("similarity {value} out of range [0, 1]")]
    OutOfRange { value: f64 },

    /// Fewer distinct points than requested clusters.
    #[error("cannot form {k} clusters from {distinct} distinct points")]
    TooFewPoints { k: usize, distinct: usize },

    /// A document lacks a reference similarity score.
    #[error("missing similarity scores: expected {expected}, found {found}")]
    MissingSimilarity { expected: usize, found: usize },

    /// The corpus directory yielded no documents.
    #[error("empty corpus: no documents to analyze")]
    EmptyCorpus,

    /// A cluster id not present in the difficulty labeling.
    #[error("unknown cluster id {id}")]
    UnknownCluster { id: usize },

    /// No term survived concept filtering, so no concept map can be built.
    #[error("no concepts retained: every term weight is at or below the filter threshold")]
    NoConceptsRetained,

    /// An artifact failed to parse.
    #[error("artifact parse error: {0}")]
    ArtifactParse(#[from] serde_json::Error),
}
