use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("torus coordinate evaluated at zero")]
    ZeroInTorusCoordinate,
    #[error("torus component of a translation point is zero")]
    ZeroTorusComponent,
    #[error("morphism is not pointed")]
    NotPointed,
    #[error("domain has a unipotent direct factor (n = {0})")]
    UnipotentFactorInDomain(usize),
    #[error("morphisms are not mutually inverse")]
    NotMutuallyInverse,
    #[error("group is rigid; no counterexample exists")]
    GroupIsRigid,
    #[error("invalid morphism: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

/// One broken invariant found while validating raw morphism data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Torus coordinate `index` (0-based) is not of the form `c·y^α`.
    NonUnitTorusCoordinate { index: usize, found: String },
    BrickMismatch(String),
    SignatureMismatch(String),
    UnknownPointSymbol { brick: String, symbol: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonUnitTorusCoordinate { index, found } => {
                write!(f, "torus coordinate y{} = {found} is not a unit", index + 1)
            }
            Violation::BrickMismatch(msg) => write!(f, "brick mismatch: {msg}"),
            Violation::SignatureMismatch(msg) => write!(f, "signature mismatch: {msg}"),
            Violation::UnknownPointSymbol { brick, symbol } => {
                write!(f, "point symbol {symbol} is not declared on brick {brick}")
            }
        }
    }
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
