use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate candidate label `{0}`")]
    DuplicateLabel(String),
    #[error("vote {vote} names unknown candidate `{label}`")]
    UnknownLabel { vote: usize, label: String },
    #[error("candidate index {index} out of range for {m} candidates")]
    CandidateOutOfRange { index: usize, m: usize },
    #[error("candidate {0} listed twice in a committee")]
    DuplicateMember(usize),
    #[error("profile must contain at least one vote and one candidate")]
    EmptyProfile,
    #[error("invalid weight scheme: {0}")]
    InvalidWeights(String),
    #[error("scheme is not truncated (some weight stays positive forever)")]
    NotTruncated,
    #[error("committee size {k} exceeds {m} candidates")]
    CommitteeTooLarge { k: usize, m: usize },
    #[error("malformed permutation of length {len} (expected a permutation of 0..{expected})")]
    MalformedPermutation { len: usize, expected: usize },
    #[error("witness does not match property {0}")]
    WitnessShape(String),
    #[error("witness does not certify {0} for this profile")]
    InvalidWitness(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("profile is not {0}")]
    NotInDomain(String),
    #[error("size {size} exceeds the enumeration limit {limit}")]
    OverLimit { size: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no applicable algorithm within budget: {0}")]
    NoApplicableAlgorithm(String),
    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
