//! Error values shared by every module.

use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QksError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("operands belong to different skew group rings")]
    RingMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group action undefined: {0}")]
    ActionUndefined(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("relation does not vanish: {0}")]
    RelationFailed(String),
    #[error("point is not admissible: {0}")]
    InadmissiblePoint(String),
    #[error("group does not act on the generators by scalars and swaps: {0}")]
    NonMonomialAction(String),
    #[error("inconsistent fiber recipe: {0}")]
    InconsistentRecipe(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix list is not closed under multiplication")]
    NotClosed,
    #[error("series denominator vanishes at t = 0")]
    BadDenominator,
    #[error("no admissible point after {attempts} attempts: {reason}")]
    NoAdmissiblePoint { attempts: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, QksError>;
