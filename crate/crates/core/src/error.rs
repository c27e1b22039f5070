use thiserror::Error;

/// Errors raised by the workbench.
///
/// Mathematical defects are reported through defect reports, not errors;
/// an `Error` means an operation could not be carried out at all.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid permutation {0:?}")]
    Permutation(Vec<usize>),
    #[error("tensor is not antisymmetric")]
    NotAntisymmetric,
    #[error("leading term of series is not invertible")]
    NotInvertible,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("degree window overflow: need degree {needed}, window allows {cap}")]
    Window { needed: usize, cap: usize },
    #[error("singular matrix for group element {0}")]
    Singular(String),
    #[error("solver inconsistency in {what} at order {order}; try increasing the degree cap (current {cap})")]
    Inconsistent {
        what: String,
        order: usize,
        cap: usize,
        /// Verified certificate rows `equation key × multiplier`.
        certificate: Vec<String>,
    },
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
