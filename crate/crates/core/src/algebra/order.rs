use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial orders. All are multiplicative well-orders on the monomials of
/// a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    GrevLex,
    /// Block order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the first `k` variables.
    Elimination { k: usize },
    /// Compare by the weight `w . e` first, then by `tiebreak`.
    Weight {
        weights: Vec<i64>,
        tiebreak: Box<TermOrder>,
    },
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Elimination { k } => write!(f, "elim({k})"),
            TermOrder::Weight { weights, tiebreak } => write!(f, "weight({weights:?}, {tiebreak})"),
        }
    }
}

fn grevlex_slice(u: &[u32], v: &[u32]) -> Ordering {
    let du: u64 = u.iter().map(|&e| u64::from(e)).sum();
    let dv: u64 = v.iter().map(|&e| u64::from(e)).sum();
    du.cmp(&dv).then_with(|| {
        for (a, b) in u.iter().zip(v).rev() {
            if a != b {
                // Smaller exponent in the last differing variable wins.
                return b.cmp(a);
            }
        }
        Ordering::Equal
    })
}

/// The fixed internal storage order of polynomial terms.
pub fn grevlex(u: &Monomial, v: &Monomial) -> Ordering {
    grevlex_slice(u.exponents(), v.exponents())
}

impl TermOrder {
    /// A weight order; weights must be nonnegative so that the order is a
    /// well-order.
    pub fn weight(weights: Vec<i64>, tiebreak: TermOrder) -> Result<Self> {
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::InvalidOrder("weights must be nonnegative".into()));
        }
        Ok(TermOrder::Weight {
            weights,
            tiebreak: Box::new(tiebreak),
        })
    }

    /// Checked comparison.
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        if let TermOrder::Weight { weights, .. } = self {
            if weights.len() != u.len() {
                return Err(Error::LengthMismatch {
                    expected: u.len(),
                    found: weights.len(),
                });
            }
        }
        if let TermOrder::Elimination { k } = self {
            if *k > u.len() {
                return Err(Error::InvalidOrder(format!(
                    "cannot eliminate {k} of {} variables",
                    u.len()
                )));
            }
        }
        Ok(self.cmp(u, v))
    }

    /// Comparison without validation; lengths must agree.
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        let (a, b) = (u.exponents(), v.exponents());
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => grevlex_slice(a, b),
            TermOrder::Elimination { k } => {
                grevlex_slice(&a[..*k], &b[..*k]).then_with(|| grevlex_slice(&a[*k..], &b[*k..]))
            }
            TermOrder::Weight { weights, tiebreak } => {
                let wa: i64 = weights.iter().zip(a).map(|(w, &e)| w * i64::from(e)).sum();
                let wb: i64 = weights.iter().zip(b).map(|(w, &e)| w * i64::from(e)).sum();
                wa.cmp(&wb).then_with(|| tiebreak.cmp(u, v))
            }
        }
    }

    /// Whether every polynomial whose leading monomial is free of the first
    /// `k` variables is itself free of them.
    pub fn eliminates(&self, k: usize) -> bool {
        match self {
            _ if k == 0 => true,
            TermOrder::Lex => true,
            TermOrder::Elimination { k: j } => *j == k,
            TermOrder::Weight { weights, tiebreak } => {
                let separating = weights.len() >= k
                    && weights[..k].iter().all(|&w| w > 0)
                    && weights[k..].iter().all(|&w| w == 0);
                separating || (weights.iter().all(|&w| w == 0) && tiebreak.eliminates(k))
            }
            TermOrder::GrevLex => false,
        }
    }
}
