use thiserror::Error;

use crate::recolour::DisjointnessCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid blowup spec: {0}")]
    InvalidSpec(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// The search exceeded its node budget before reaching an answer.
    #[error("inconclusive: node budget of {budget} exhausted")]
    Inconclusive { budget: u64 },

    /// Two monochromatic triangles of the recolouring trace overlap outside
    /// the permitted pattern.
    #[error("triangle overlap outside the permitted pattern: {0}")]
    Disjointness(Box<DisjointnessCertificate>),

    /// An internal consistency check failed; indicates a violated hypothesis
    /// of the construction (or a bug), never a normal negative answer.
    #[error("invariant violated: {0}")]
    Invariant(String),
}
