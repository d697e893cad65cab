//! Independent checks of Groebner basis axioms, written directly against
//! the canonical polynomial type rather than the engine's internals.

use crate::algebra::{Field, Polynomial, TermOrder};

use super::GroebnerBasis;

/// Multivariate division: the remainder of `f` by `divisors`, recomputing
/// leading terms from scratch at every step.
pub fn naive_remainder<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    order: &TermOrder,
) -> Polynomial<F> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some(lt) = p.leading_term(order).cloned() {
        let hit = divisors.iter().find_map(|g| {
            let glt = g.leading_term(order)?;
            let q = lt.mono.div(&glt.mono)?;
            Some((g, q, lt.coeff.clone() / glt.coeff.clone()))
        });
        match hit {
            Some((g, q, c)) => p = &p - &g.mul_term(&c, &q),
            None => {
                let single = Polynomial::monomial(&ring, lt.mono.clone(), lt.coeff.clone());
                rem = &rem + &single;
                p = &p - &single;
            }
        }
    }
    rem
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: &TermOrder) -> Polynomial<F> {
    let (Some(a), Some(b)) = (f.leading_term(order), g.leading_term(order)) else {
        return Polynomial::zero(f.ring());
    };
    let lcm = a.mono.lcm(&b.mono);
    let fa = f.mul_term(&a.coeff.inv(), &lcm.div(&a.mono).expect("lcm"));
    let gb = g.mul_term(&b.coeff.inv(), &lcm.div(&b.mono).expect("lcm"));
    &fa - &gb
}

/// Every S-polynomial of basis pairs reduces to zero.
pub fn is_groebner_basis<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let basis = gb.basis();
    let order = gb.order();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !naive_remainder(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monic, and no term of any element divisible by another leading term.
pub fn is_reduced<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let order = gb.order();
    let leads: Vec<_> = gb
        .basis()
        .iter()
        .map(|g| g.leading_term(order).cloned())
        .collect();
    if leads.iter().any(|l| !matches!(l, Some(t) if t.coeff.is_one())) {
        return false;
    }
    gb.basis().iter().enumerate().all(|(i, g)| {
        g.terms().iter().all(|t| {
            leads
                .iter()
                .enumerate()
                .all(|(j, l)| j == i || !l.as_ref().expect("checked").mono.divides(&t.mono))
        })
    })
}

/// Textbook Buchberger without criteria, followed by reduction. Slow, but
/// shares no code with the engine.
pub fn naive_groebner<F: Field>(generators: &[Polynomial<F>], order: &TermOrder) -> Vec<Polynomial<F>> {
    let mut g: Vec<Polynomial<F>> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let r = naive_remainder(&s_polynomial(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            let n = g.len();
            g.push(r);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    // Minimal basis: drop elements whose leading monomial is divisible by
    // another kept leading monomial.
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = &p.leading_term(order).expect("nonzero").mono;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = &q.leading_term(order).expect("nonzero").mono;
            j != k && qm.divides(lm) && (qm != lm || j < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<_> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p.clone())
                .collect();
            naive_remainder(&minimal[k], &others, order).monic(order)
        })
        .collect();
    reduced.sort_by(|a, b| {
        order.cmp(
            &a.leading_term(order).expect("nonzero").mono,
            &b.leading_term(order).expect("nonzero").mono,
        )
    });
    reduced
}

/// Mutual normal-form check: generators reduce to zero modulo the basis and
/// the basis reduces to zero modulo an independently computed basis of
/// the generators.
pub fn generates_same_ideal<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let order = gb.order();
    let gens = gb.ideal().generators();
    if !gens.iter().all(|g| naive_remainder(g, gb.basis(), order).is_zero()) {
        return false;
    }
    let reference = naive_groebner(gens, order);
    gb.basis()
        .iter()
        .all(|b| naive_remainder(b, &reference, order).is_zero())
}
