//! Sparse multivariate polynomials.
//!
//! Terms are kept sorted grevlex-descending whatever order a computation
//! uses; other orders are applied at comparison time.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::order::{grevlex, TermOrder};
use super::ring::PolynomialRing;
use super::scalar::{Field, IntegralDomain};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<F> {
    pub coeff: F,
    pub mono: Monomial,
}

#[derive(Clone, Debug)]
pub struct Polynomial<F> {
    ring: Arc<PolynomialRing>,
    terms: Vec<Term<F>>,
}

/// Answer to "which multidegree is this polynomial homogeneous of?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    Homogeneous(Vec<i64>),
    Inhomogeneous,
}

pub(crate) fn same_ring(a: &Arc<PolynomialRing>, b: &Arc<PolynomialRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: IntegralDomain> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: IntegralDomain> Eq for Polynomial<F> {}

impl<F: IntegralDomain> Polynomial<F> {
    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolynomialRing>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolynomialRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn var(ring: &Arc<PolynomialRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), F::one())
    }

    pub fn monomial(ring: &Arc<PolynomialRing>, mono: Monomial, coeff: F) -> Self {
        assert_eq!(mono.len(), ring.nvars(), "monomial length differs from ring");
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonical polynomial from arbitrary (coefficient, monomial) pairs:
    /// duplicates merged, zeros dropped, terms sorted.
    pub fn from_terms<I>(ring: &Arc<PolynomialRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (F, Monomial)>,
    {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length differs from ring");
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x = x.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolynomialRing>, acc: HashMap<Monomial, F>) -> Self {
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        terms.sort_by(|a, b| grevlex(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|t| grevlex(m, &t.mono))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.iter().map(|t| self.ring.multidegree(&t.mono));
        let Some(first) = degrees.next() else {
            return Homogeneity::Zero;
        };
        if degrees.all(|d| d == first) {
            Homogeneity::Homogeneous(first)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneity(), Homogeneity::Inhomogeneous)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &TermOrder) -> Option<&Term<F>> {
        match order {
            TermOrder::GrevLex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.mono, &b.mono)),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &F| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match grevlex(&a.mono, &b.mono) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(Term {
                        coeff: sign(&b.coeff),
                        mono: b.mono.clone(),
                    });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a.coeff.clone() + sign(&b.coeff);
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: a.mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|t| Term {
            coeff: sign(&t.coeff),
            mono: t.mono.clone(),
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].coeff, &other.terms[0].mono);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].coeff, &self.terms[0].mono);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.mul(&b.mono);
                let c = a.coeff.clone() * b.coeff.clone();
                match acc.get_mut(&m) {
                    Some(x) => *x = x.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    /// `c * m * self`. Multiplying by a monomial preserves grevlex order.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone() * c.clone(),
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one target ring.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.ring.clone();
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(&target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                prod = prod.product(&p);
            }
            out = out.merge(&prod, false);
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `map[i]`. Fails if a variable that occurs maps to `None`.
    pub fn remap(&self, target: &Arc<PolynomialRing>, map: &[Option<usize>]) -> Result<Self> {
        if map.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.ring.nvars(),
                found: map.len(),
            });
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in t.mono.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "variable {} has no image in the target ring",
                        self.ring.name(i)
                    ))
                })?;
                e[j] += x;
            }
            terms.push((t.coeff.clone(), Monomial::new(e)));
        }
        Ok(Self::from_terms(target, terms))
    }
}

impl<F: Field> Polynomial<F> {
    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some(lt) => {
                let inv = lt.coeff.inv();
                self.scale(&inv)
            }
        }
    }
}

impl<F: IntegralDomain> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on ring mismatch; see [`Polynomial::try_add`].
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<F: IntegralDomain> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<F: IntegralDomain> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl<F: IntegralDomain> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }
}
