use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid term order: {0}")]
    InvalidOrder(String),

    #[error("Groebner basis was not computed with an order eliminating the first {0} variables")]
    OrderMismatch(usize),

    #[error("resource budget exceeded after {pairs} S-pairs ({basis_len} basis elements, {terms} terms): {reason}")]
    ResourceExceeded {
        reason: String,
        pairs: usize,
        basis_len: usize,
        terms: usize,
    },

    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("line bundle degree {0:?} is not ample")]
    NotAmple(Vec<i64>),

    #[error("unsupported degree {0:?}")]
    UnsupportedDegree(Vec<i64>),

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),

    #[error("invalid dilation {0}; must be at least 1")]
    InvalidDilation(i64),

    #[error("invalid section basis: {0}")]
    InvalidSections(String),

    #[error("{0} does not expand in the section basis")]
    ExpansionFailure(String),

    #[error("invalid factorization: {0}")]
    InvalidSplit(String),

    #[error("no nontrivial factorization of {0:?}")]
    NoFactorization(Vec<i64>),

    #[error("splits must be supplied explicitly for presented varieties")]
    SplitsRequired,

    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorOutOfRange { k: usize, rows: usize, cols: usize },

    #[error("minor {0} is not annihilated by the multiplication map")]
    MinorNotInKernel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
