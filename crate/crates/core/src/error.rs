use thiserror::Error;

/// Errors raised by constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cap exceeded: {what} would need more than {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("not distributive: {x} ∧ ({y} ∨ {z}) differs from ({x} ∧ {y}) ∨ ({x} ∧ {z})")]
    NotDistributive { x: String, y: String, z: String },

    #[error("element {0} is not complemented")]
    NotComplemented(String),

    #[error("sublattice is not join-dense: {0} is not a join of its members")]
    NotJoinDense(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
