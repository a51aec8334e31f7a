use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {n} is outside the legal range for {family}")]
    IllegalRank { family: &'static str, n: usize },
    #[error("unknown node {0}")]
    UnknownNode(i64),
    #[error("negative string length {0}")]
    NegativeK(i64),
    #[error("monomial is not below the reference monomial")]
    NotBelow,
    #[error("division left a nonzero remainder")]
    NotDivisible,
    #[error("monomial is not locally dominant at node {0}")]
    NotLocallyDominant(u8),
    #[error("polynomial is not in the screening kernel of node {0}")]
    NotInKernel(u8),
    #[error("a second dominant monomial appeared: {0}")]
    NotSpecial(String),
    #[error("directions disagree on the multiplicity of {0}")]
    DirectionConflict(String),
    #[error("monomial budget of {0} exceeded")]
    Budget(usize),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("no closed formula for node {0} of this type")]
    UnsupportedNode(u8),
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("weight is not dominant")]
    NotDominant,
    #[error("negative residue while branching")]
    NegativeResidue,
    #[error("truncation window is unsound: nonzero term at degree {0}")]
    TruncationUnsound(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
