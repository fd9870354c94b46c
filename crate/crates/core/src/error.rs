use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid node index {0} (expected 1, 2 or 3)")]
    InvalidNode(i64),
    #[error("monomial is not in the root lattice spanned by the A_{{i,s}}: {0}")]
    NotInLattice(String),
    #[error("weight is not dominant: {0:?}")]
    NotDominant([i64; 3]),
    #[error("monomial is not dominant: {0}")]
    NonDominantMonomial(String),
    #[error("right-negativity is undefined for the identity monomial")]
    IdentityMonomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("character has a non-positive multiplicity at {0}")]
    SignedCharacter(String),
    #[error("term cap exceeded: {0} terms (limit {1})")]
    TermCap(usize, usize),
    #[error("work cap exceeded: more than {1} monomial products (needed at least {0})")]
    WorkCap(u64, u64),
    #[error("depth cap exceeded: depth {0} (limit {1})")]
    DepthCap(usize, usize),
    #[error("FM algorithm is inconsistent at {0}: not {1}-dominant but carries uncoloured multiplicity")]
    FmInconsistent(String, u8),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("relation {0}: parameters out of range ({1})")]
    OutOfRange(String, String),
    #[error("unknown: {0}")]
    Unknown(String),
    #[error("weight character is not a module character: {0}")]
    NotModule(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
