//! Coefficient domains.
//!
//! Everything above this module is written against [`IntegralDomain`] and
//! [`Field`]. The library instantiates them with exact rationals (the working
//! field) and with small prime fields, which are only used as cross-checks.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{bareiss_rank, Matrix};

/// A commutative ring without zero divisors in which exact division is
/// available whenever the quotient exists.
pub trait IntegralDomain:
    Clone
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `self / other`, where the caller guarantees `other` divides `self`.
    fn exact_div(&self, other: &Self) -> Self;

    /// Bit length used to pick small pivots during elimination.
    fn size_bits(&self) -> u64;

    /// Sign hint for printing; unordered domains are never negative.
    fn is_negative(&self) -> bool {
        false
    }
}

pub trait Field: IntegralDomain + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Exact rank of a matrix over this field.
    fn rank_of(matrix: &Matrix<Self>) -> usize {
        bareiss_rank(matrix.clone())
    }
}

/// Exact rational numbers; always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

impl IntegralDomain for BigInt {
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact division {self} / {other}");
        q
    }

    fn size_bits(&self) -> u64 {
        self.bits()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl IntegralDomain for BigRational {
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }

    fn size_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }

    /// Clears denominators row by row and runs fraction-free elimination
    /// over the integers.
    fn rank_of(matrix: &Matrix<Self>) -> usize {
        bareiss_rank(integer_rows(matrix))
    }
}

/// Scales every row of a rational matrix by the lcm of its denominators.
/// Row scaling by nonzero constants preserves rank and row space.
pub fn integer_rows(matrix: &Matrix<Rational>) -> Matrix<BigInt> {
    let mut out = Matrix::zeros(matrix.rows(), matrix.cols());
    for i in 0..matrix.rows() {
        let row = matrix.row(i);
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out[(i, j)] = x.numer() * (&lcm / x.denom());
            }
        }
    }
    out
}

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The prime field `Z/P`, for `P` a prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

/// A 15-bit prime field used by the test suites.
pub type F32003 = Fp<32003>;
/// The largest prime below 2^31.
pub type F2147483647 = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub fn new(value: i64) -> Self {
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Image of a rational number, or `None` when `P` divides the denominator.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return None;
        }
        let num: u64 = num.try_into().ok()?;
        let den: u64 = den.try_into().ok()?;
        Some(Fp(num) / Fp(den))
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in Z/{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> IntegralDomain for Fp<P> {
    fn exact_div(&self, other: &Self) -> Self {
        *self / *other
    }

    fn size_bits(&self) -> u64 {
        u64::from(self.0 != 0)
    }
}

impl<const P: u64> Field for Fp<P> {}
