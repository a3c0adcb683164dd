use thiserror::Error;

/// Errors surfaced by the exact geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("A x = b has no integer solution")]
    NoIntegerSolution,
    #[error("dimension {0} exceeds the supported maximum {1}")]
    DimensionTooLarge(usize, usize),
    #[error("point lies outside the cone")]
    PointOutsideCone,
    #[error("no lattice point of the cone within the enumeration bound")]
    EmptySail,
    #[error("no basis of A contains the given index set")]
    NoBasisContainsTau,
    #[error("index set is not the support of a vertex of P(A, b)")]
    InvalidTau,
    #[error("cone is not pointed")]
    ConeNotPointed,
    #[error("not a valid corner vertex: {0}")]
    InvalidVertex(String),
    #[error("not a valid point: {0}")]
    InvalidPoint(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("right-hand side is not in the semigroup generated by a")]
    NotInSemigroup,
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("problem is infeasible")]
    Infeasible,
    #[error("short-vector search exhausted its budget at norm {0}")]
    SearchBudgetExceeded(u64),
    #[error("box-growing oracle did not stabilize after {0} rounds")]
    Unstable(usize),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

impl Error {
    /// True for errors that signal a resource cap rather than a mathematical failure.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::SearchSpaceTooLarge(_)
                | Error::SearchBudgetExceeded(_)
                | Error::DimensionTooLarge(..)
                | Error::Unstable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
