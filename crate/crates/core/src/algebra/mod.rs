//! Exact arithmetic: coefficients, monomials, multigraded polynomial rings,
//! term orders and dense linear algebra.

pub mod matrix;
pub mod modular;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod sparse;
pub mod text;

pub use matrix::{Matrix, RationalMatrix};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use poly::{Homogeneity, Polynomial, Term};
pub use ring::PolynomialRing;
pub use scalar::{Field, Fp, IntegralDomain, Rational};
pub use text::{parse, parse_monomial};
