use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdcError {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("unknown basis element {id:?} in degree {degree}")]
    UnknownBasis { degree: usize, id: String },
    #[error("basis index {index} out of range in degree {degree}")]
    BasisIndex { degree: usize, index: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the maximal degree {max}")]
    AboveMaxDegree { degree: usize, max: usize },
    #[error("duplicate basis identifier {id:?} in degree {degree}")]
    DuplicateId { degree: usize, id: String },
    #[error("incompatible data: {0}")]
    Incompatible(String),
    #[error("degree cap {cap} exceeded (needs {needed})")]
    CapExceeded { cap: usize, needed: usize },
    #[error("not a rigid ordered inclusion: {0}")]
    NotRigid(String),
    #[error("invalid simplex map: {0}")]
    SimplexMap(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("enumeration: {0}")]
    Enumeration(String),
    #[error("format: {0}")]
    Format(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AdcError>;
