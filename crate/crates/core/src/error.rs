//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable numbering has gaps: {0}")]
    UnknownVariable(String),
    #[error("degenerate weight system: {0}")]
    DegenerateWeights(String),
    #[error("potential is not invertible: {0}")]
    NotInvertible(String),
    #[error("potential has non-unit coefficients")]
    NonUnitCoefficients,
    #[error("degenerate potential: {0}")]
    DegeneratePotential(String),
    #[error("degenerate restriction: {0}")]
    DegenerateRestriction(String),
    #[error("normal form requires a degree slice outside the built table: {0}")]
    OutOfTableRange(String),
    #[error("phase vectors have mismatched lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("element is not a member of the group")]
    NotInGroup,
    #[error("grading element J is not in the group")]
    MissingJ,
    #[error("power rule violated: {0}")]
    PowerRuleViolation(String),
    #[error("ring relation violated: {0}")]
    RelationViolation(String),
    #[error("axiom cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("insertions do not match the expected four-point shape: {0}")]
    WrongShape(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("two applicable axioms disagree: {0}")]
    AxiomConflict(String),
}

pub type Result<T> = std::result::Result<T, Error>;
