//! Groebner bases: reduced bases, normal forms, ideal membership and
//! equality, elimination, and kernels of ring maps.

mod engine;
pub mod verify;

use std::sync::Arc;
use std::time::Duration;

use crate::algebra::poly::same_ring;
use crate::algebra::{Field, Monomial, Polynomial, PolynomialRing, TermOrder};
use crate::error::{Error, Result};

use engine::{reduce, Engine, OrderedPoly};

/// Resource caps for a single Groebner basis computation. Exceeding any of
/// them aborts with [`Error::ResourceExceeded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_terms: usize,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 2_000_000,
            max_terms: 20_000_000,
            time_limit: None,
        }
    }
}

/// An ideal given by generators in a fixed ring. Zero generators are
/// dropped on construction.
#[derive(Clone, Debug)]
pub struct Ideal<F> {
    ring: Arc<PolynomialRing>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolynomialRing>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }
}

/// A reduced Groebner basis: monic, sorted ascending by leading monomial,
/// no term of any element divisible by another element's leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    ideal: Ideal<F>,
    order: TermOrder,
    basis: Vec<Polynomial<F>>,
    working: Vec<OrderedPoly<F>>,
}

fn to_ordered<F: Field>(p: &Polynomial<F>, order: &TermOrder) -> OrderedPoly<F> {
    OrderedPoly::new(
        p.terms()
            .iter()
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect(),
        order,
    )
}

fn from_ordered<F: Field>(ring: &Arc<PolynomialRing>, p: OrderedPoly<F>) -> Polynomial<F> {
    Polynomial::from_terms(ring, p.terms.into_iter().map(|(m, c)| (c, m)))
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ideal.ring
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.working.iter().map(|p| p.lm().clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.working.len() == 1 && self.working[0].lm().is_one()
    }

    /// Monomials not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.working.iter().any(|g| g.lm().divides(m))
    }

    /// Remainder of `f` on division by the basis; zero iff `f` lies in the
    /// ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        let reducers: Vec<&OrderedPoly<F>> = self.working.iter().collect();
        let r = reduce(&to_ordered(f, &self.order), &reducers, &self.order);
        Ok(from_ordered(self.ring(), r))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Reduced Groebner basis of `ideal` under `order`. Deterministic: the
/// result depends only on the ideal and the order.
pub fn buchberger<F: Field>(
    ideal: &Ideal<F>,
    order: &TermOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F>> {
    let n = ideal.ring.nvars();
    match order {
        TermOrder::Elimination { k } if *k > n => {
            return Err(Error::InvalidOrder(format!("cannot eliminate {k} of {n} variables")))
        }
        TermOrder::Weight { weights, .. } if weights.len() != n => {
            return Err(Error::LengthMismatch {
                expected: n,
                found: weights.len(),
            })
        }
        _ => {}
    }
    let generators = ideal
        .generators
        .iter()
        .map(|g| to_ordered(g, order))
        .collect();
    let working = Engine::new(order, budget).run(generators)?;
    let basis = working
        .iter()
        .map(|p| from_ordered(&ideal.ring, p.clone()))
        .collect();
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order: order.clone(),
        basis,
        working,
    })
}

/// Free-function form of [`GroebnerBasis::normal_form`].
pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    gb.normal_form(f)
}

/// Whether every generator of `other` lies in the ideal of `gb`.
pub fn ideal_contains<F: Field>(gb: &GroebnerBasis<F>, other: &Ideal<F>) -> Result<bool> {
    if !same_ring(gb.ring(), other.ring()) {
        return Err(Error::RingMismatch);
    }
    for g in &other.generators {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal equality by mutual containment.
pub fn ideal_equal<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    order: &TermOrder,
    budget: &Budget,
) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let gb_a = buchberger(a, order, budget)?;
    if !ideal_contains(&gb_a, b)? {
        return Ok(false);
    }
    let gb_b = buchberger(b, order, budget)?;
    ideal_contains(&gb_b, a)
}

/// Subring on the variables after the first `k`, keeping their grading.
pub fn subring(ring: &PolynomialRing, k: usize) -> Result<Arc<PolynomialRing>> {
    PolynomialRing::new(
        ring.names()[k..].to_vec(),
        ring.grading().iter().map(|row| row[k..].to_vec()).collect(),
    )
}

fn eliminate_into<F: Field>(
    gb: &GroebnerBasis<F>,
    k: usize,
    target: &Arc<PolynomialRing>,
) -> Result<Ideal<F>> {
    if !gb.order.eliminates(k) {
        return Err(Error::OrderMismatch(k));
    }
    let n = gb.ring().nvars();
    if target.nvars() != n - k {
        return Err(Error::LengthMismatch {
            expected: n - k,
            found: target.nvars(),
        });
    }
    let map: Vec<Option<usize>> = (0..n).map(|i| i.checked_sub(k)).collect();
    let generators = gb
        .basis
        .iter()
        .zip(&gb.working)
        .filter(|(_, w)| w.lm().free_of_first(k))
        .map(|(p, _)| p.remap(target, &map))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(target, generators)
}

/// The elimination ideal `I ∩ k[x_{k+1}, ...]`, re-expressed in the subring
/// of the remaining variables.
pub fn eliminate<F: Field>(gb: &GroebnerBasis<F>, k: usize) -> Result<Ideal<F>> {
    let target = subring(gb.ring(), k)?;
    eliminate_into(gb, k, &target)
}

/// Kernel of `source -> target / relations`, `y_j -> images[j]`.
///
/// Adjoins the source variables after the target variables, forms
/// `relations + (y_j - images[j])` and eliminates the target variables.
/// The result is the reduced Groebner basis of the kernel under grevlex.
pub fn ring_map_kernel<F: Field>(
    source: &Arc<PolynomialRing>,
    images: &[Polynomial<F>],
    relations: &Ideal<F>,
    budget: &Budget,
) -> Result<Ideal<F>> {
    if images.len() != source.nvars() {
        return Err(Error::LengthMismatch {
            expected: source.nvars(),
            found: images.len(),
        });
    }
    let target = relations.ring().clone();
    if images.iter().any(|p| !same_ring(p.ring(), &target)) {
        return Err(Error::RingMismatch);
    }
    if let Some(bad) = images.iter().find(|p| !p.is_homogeneous()) {
        return Err(Error::Inhomogeneous(bad.to_string()));
    }
    if let Some(bad) = relations.generators().iter().find(|p| !p.is_homogeneous()) {
        return Err(Error::Inhomogeneous(bad.to_string()));
    }
    let k = target.nvars();
    let mut names = target.names().to_vec();
    for name in source.names() {
        if target.var_index(name).is_some() {
            return Err(Error::InvalidInput(format!(
                "variable `{name}` occurs in both source and target rings"
            )));
        }
        names.push(name.clone());
    }
    let mut grading: Vec<Vec<i64>> = target.grading().to_vec();
    for img in images {
        let degree = match img.homogeneity() {
            crate::algebra::Homogeneity::Homogeneous(d) => d,
            _ => vec![0; grading.len()],
        };
        for (row, d) in grading.iter_mut().zip(degree) {
            row.push(d);
        }
    }
    let combined = PolynomialRing::new(names, grading)?;

    let into_combined: Vec<Option<usize>> = (0..k).map(Some).collect();
    let mut generators = Vec::with_capacity(relations.generators().len() + images.len());
    for r in relations.generators() {
        generators.push(r.remap(&combined, &into_combined)?);
    }
    for (j, img) in images.iter().enumerate() {
        let y = Polynomial::var(&combined, k + j);
        generators.push(y.try_sub(&img.remap(&combined, &into_combined)?)?);
    }
    let ideal = Ideal::new(&combined, generators)?;
    let gb = buchberger(&ideal, &TermOrder::Elimination { k }, budget)?;
    eliminate_into(&gb, k, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Rational, F32003};
    use crate::algebra::parse;

    fn ring(names: &[&str]) -> Arc<PolynomialRing> {
        PolynomialRing::standard(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn ideal(r: &Arc<PolynomialRing>, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(r, gens.iter().map(|g| parse(r, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let r = ring(&["y0", "y1", "y2", "y3"]);
        let gb = buchberger(&ideal(&r, &["y0*y3 - y1*y2"]), &TermOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(gb.basis().len(), 1);
        // Monic with leading term y1*y2 under grevlex.
        assert_eq!(gb.basis()[0], parse(&r, "y1*y2 - y0*y3").unwrap());
    }

    #[test]
    fn plucker_quadric_is_its_own_basis() {
        let r = ring(&["x_1_2", "x_1_3", "x_1_4", "x_2_3", "x_2_4", "x_3_4"]);
        let q = "x_1_2*x_3_4 - x_1_3*x_2_4 + x_2_3*x_1_4";
        let gb = buchberger(&ideal(&r, &[q]), &TermOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(gb.basis().len(), 1);
        // Monic in grevlex: the leading term is x_1_4*x_2_3.
        assert_eq!(gb.basis()[0], parse(&r, q).unwrap());
        assert_eq!(gb.leading_monomials()[0], parse(&r, "x_1_4*x_2_3").unwrap().terms()[0].mono);
    }

    #[test]
    fn normal_form_cases() {
        let r = ring(&["y0", "y1", "y2"]);
        let i = ideal(&r, &["y0*y2 - y1^2"]);
        let lex = buchberger(&i, &TermOrder::Lex, &Budget::default()).unwrap();
        let f = parse(&r, "y1^2").unwrap();
        assert_eq!(lex.normal_form(&f).unwrap(), f);
        assert!(lex.normal_form(&parse(&r, "y0*y2 - y1^2").unwrap()).unwrap().is_zero());
        let grevlex = buchberger(&i, &TermOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(grevlex.normal_form(&f).unwrap(), parse(&r, "y0*y2").unwrap());
    }

    #[test]
    fn containment_and_equality() {
        let r = ring(&["y0", "y1"]);
        let a = ideal(&r, &["y0"]);
        let b = ideal(&r, &["y0^2"]);
        let budget = Budget::default();
        let gb_a = buchberger(&a, &TermOrder::GrevLex, &budget).unwrap();
        let gb_b = buchberger(&b, &TermOrder::GrevLex, &budget).unwrap();
        assert!(ideal_contains(&gb_a, &a).unwrap());
        assert!(ideal_contains(&gb_a, &b).unwrap());
        assert!(!ideal_contains(&gb_b, &a).unwrap());
        assert!(ideal_equal(&a, &a, &TermOrder::GrevLex, &budget).unwrap());
        assert!(!ideal_equal(&a, &b, &TermOrder::GrevLex, &budget).unwrap());
        assert!(!ideal_equal(&b, &a, &TermOrder::GrevLex, &budget).unwrap());
        let other = ring(&["z0", "z1"]);
        assert!(matches!(
            ideal_contains(&gb_a, &ideal(&other, &["z0"])),
            Err(Error::RingMismatch)
        ));
    }

    #[test]
    fn conic_by_elimination() {
        let r = ring(&["s", "t", "y0", "y1", "y2"]);
        let i = ideal(&r, &["y0 - s^2", "y1 - s*t", "y2 - t^2"]);
        let gb = buchberger(&i, &TermOrder::Elimination { k: 2 }, &Budget::default()).unwrap();
        let free: Vec<_> = gb
            .basis()
            .iter()
            .filter(|p| p.terms().iter().all(|t| t.mono.free_of_first(2)))
            .collect();
        assert_eq!(free.len(), 1);
        let elim = eliminate(&gb, 2).unwrap();
        let sub = ring(&["y0", "y1", "y2"]);
        assert_eq!(elim.generators().len(), 1);
        let g = &elim.generators()[0];
        assert_eq!(g.to_string(), parse(&sub, "y1^2 - y0*y2").unwrap().to_string());
        assert_eq!(eliminate(&gb, 0).unwrap().generators().len(), gb.basis().len());
        let grevlex = buchberger(&i, &TermOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(eliminate(&grevlex, 2).unwrap_err(), Error::OrderMismatch(2));
    }

    #[test]
    fn kernel_of_identity_map_is_zero() {
        let src = ring(&["y0", "y1"]);
        let tgt = ring(&["a", "b"]);
        let images = vec![parse(&tgt, "a").unwrap(), parse(&tgt, "b").unwrap()];
        let k = ring_map_kernel(&src, &images, &Ideal::zero(&tgt), &Budget::default()).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn kernel_rejects_inhomogeneous_images() {
        let src = ring(&["y0"]);
        let tgt = ring(&["a"]);
        let images = vec![parse(&tgt, "a^2 + a").unwrap()];
        assert!(matches!(
            ring_map_kernel(&src, &images, &Ideal::zero(&tgt), &Budget::default()),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = ring(&["s", "t", "y0", "y1", "y2"]);
        let i = ideal(&r, &["y0 - s^2", "y1 - s*t", "y2 - t^2"]);
        let tiny = Budget {
            max_pairs: 0,
            ..Budget::default()
        };
        assert!(matches!(
            buchberger(&i, &TermOrder::Elimination { k: 2 }, &tiny),
            Err(Error::ResourceExceeded { .. })
        ));
    }

    #[test]
    fn works_over_a_prime_field() {
        let r = ring(&["x", "y", "z"]);
        let x = Polynomial::<F32003>::var(&r, 0);
        let y = Polynomial::<F32003>::var(&r, 1);
        let z = Polynomial::<F32003>::var(&r, 2);
        let i = Ideal::new(&r, vec![&(&x * &y) - &z, &(&y * &z) - &x]).unwrap();
        let gb = buchberger(&i, &TermOrder::GrevLex, &Budget::default()).unwrap();
        assert!(verify::is_groebner_basis(&gb));
        assert!(gb.contains(&(&(&x * &y) - &z)).unwrap());
    }
}
