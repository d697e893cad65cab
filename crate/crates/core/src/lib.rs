//! Exact computation of multiplication matrices for factorizations of line
//! bundles, and certification of determinantal presentations.
//!
//! The algebra is generic over the coefficient field ([`algebra::Field`]);
//! the aliases below fix it to the rationals, which is what the varieties
//! and the decision procedure use.

pub mod algebra;
pub mod detpres;
pub mod error;
pub mod groebner;
pub mod varieties;

pub use error::{Error, Result};

pub use algebra::Rational;

pub type Poly = algebra::Polynomial<Rational>;
pub type RationalMatrix = algebra::Matrix<Rational>;
pub type RationalIdeal = groebner::Ideal<Rational>;
pub type RationalGroebnerBasis = groebner::GroebnerBasis<Rational>;
/// Polynomials over the prime field of order 32003, for modular cross-checks.
pub type ModPoly = algebra::Polynomial<algebra::scalar::F32003>;
