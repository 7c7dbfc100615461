//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A generator index outside the valid range for its group.
    #[error("generator index {index} is not valid for {kind}")]
    GeneratorRange {
        /// The offending index.
        index: i32,
        /// Display form of the group kind.
        kind: String,
    },
    /// Two operands belong to different groups.
    #[error("kind mismatch: {0} versus {1}")]
    KindMismatch(String, String),
    /// A one-line word that does not describe an element of the group.
    #[error("invalid one-line representation: {0}")]
    InvalidElement(String),
    /// An element that was required to be a twisted involution is not one.
    #[error("{0} is not a twisted involution for the chosen automorphism")]
    NotTwistedInvolution(String),
    /// An automorphism that does not act on the given group.
    #[error("automorphism {0} does not act on {1}")]
    InvalidAutomorphism(String, String),
    /// A parity or range constraint on a parameter is violated.
    #[error("parameter constraint violated: {0}")]
    Parameter(String),
    /// Malformed clan input.
    #[error("invalid clan: {0}")]
    InvalidClan(String),
    /// A clan outside the indexing set of the symmetric space.
    #[error("clan {0} is not in the indexing set of {1}")]
    NotInIndexingSet(String, String),
    /// An element outside the image of the Richardson-Springer map.
    #[error("{0} is not in the image set of {1}")]
    NotInImage(String, String),
    /// Two words of different lengths were compared.
    #[error("word length mismatch: {0} versus {1}")]
    LengthMismatch(usize, usize),
    /// A word that was required to have distinct letters repeats one.
    #[error("word {0} repeats a letter")]
    RepeatedLetter(String),
    /// Word or one-line input that cannot be split into the required blocks.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// A matching that is not admissible for the requested operation.
    #[error("matching not admissible: {0}")]
    Matching(String),
    /// A computation that would exceed the configured size bound.
    #[error("rank bound exceeded: {0}")]
    RankBound(String),
    /// A division that was required to be exact left a remainder.
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    /// Text that could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
