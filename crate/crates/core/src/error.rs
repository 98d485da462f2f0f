//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A closure or enumeration grew past its configured cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// Short-vector enumeration passed the configured vector budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    /// The supplied elements are not a subgroup of the ambient group.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    /// Two multiplication tables have different orders.
    #[error("group order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    /// A multiplication table fails the group axioms.
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    /// A generating multiset is not closed under inverses.
    #[error("generating multiset is not inverse-closed: {0}")]
    NotSymmetric(String),
    /// The commutant of the two coset representations has no invertible element.
    #[error("no invertible intertwiner exists: {0}")]
    NoIntertwiner(String),
    /// Matrix shapes do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// A Gram matrix is not positive definite.
    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),
    /// A symmetric matrix is singular where a nondegenerate form is required.
    #[error("degenerate form: determinant is zero")]
    Degenerate,
    /// A claimed prime is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// Factorization mod p was requested at a prime dividing the discriminant.
    #[error("prime {0} divides the discriminant (ramified or bad reduction)")]
    RamifiedPrime(u64),
    /// The polynomial is not squarefree, so its discriminant vanishes.
    #[error("zero discriminant: polynomial has a repeated root")]
    ZeroDiscriminant,
    /// A Dirichlet expansion was requested past the census bound.
    #[error("census bound {bound} is below the requested coefficient bound {requested}")]
    InsufficientCensus { bound: u64, requested: u64 },
    /// An unknown built-in lattice name.
    #[error("unknown built-in lattice name: {0}")]
    UnknownName(String),
    /// Input file or string failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An internal cross-check failed; this is a bug, not a user error.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
