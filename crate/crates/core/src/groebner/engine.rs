//! Buchberger's algorithm with the Gebauer-Moeller criteria and the normal
//! selection strategy.

use std::cmp::Ordering;
use std::time::Instant;

use crate::algebra::{Field, Monomial, TermOrder};
use crate::error::{Error, Result};

use super::Budget;

/// Polynomial with terms sorted descending in the working order.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly<F> {
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> OrderedPoly<F> {
    pub fn new(mut terms: Vec<(Monomial, F)>, order: &TermOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv();
                for (_, c) in &mut self.terms {
                    *c = c.clone() * inv.clone();
                }
            }
        }
    }
}

/// `f - c * m * g` for `g` monic, where `f` is given as a descending term
/// slice.
fn sub_scaled<F: Field>(
    f: &[(Monomial, F)],
    c: &F,
    m: &Monomial,
    g: &[(Monomial, F)],
    order: &TermOrder,
) -> Vec<(Monomial, F)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|(gm, gc)| (gm.mul(m), gc));
    let mut next_g = shifted.next();
    while i < f.len() {
        let Some((gm, gc)) = &next_g else {
            break;
        };
        match order.cmp(&f[i].0, gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.clone(), -(c.clone() * (*gc).clone())));
                next_g = shifted.next();
            }
            Ordering::Equal => {
                let v = f[i].1.clone() - c.clone() * (*gc).clone();
                if !v.is_zero() {
                    out.push((gm.clone(), v));
                }
                i += 1;
                next_g = shifted.next();
            }
        }
    }
    out.extend(f[i..].iter().cloned());
    if let Some((gm, gc)) = next_g {
        out.push((gm, -(c.clone() * gc.clone())));
        for (gm, gc) in shifted {
            out.push((gm, -(c.clone() * gc.clone())));
        }
    }
    out
}

/// Fully reduces `f` modulo the monic polynomials `reducers`.
pub(crate) fn reduce<F: Field>(
    f: &OrderedPoly<F>,
    reducers: &[&OrderedPoly<F>],
    order: &TermOrder,
) -> OrderedPoly<F> {
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    let mut live: Vec<(Monomial, F)> = f.terms.clone();
    let mut start = 0;
    while start < live.len() {
        let (lead_m, lead_c) = &live[start];
        let divisor = reducers.iter().find(|g| g.lm().divides(lead_m));
        match divisor {
            Some(g) => {
                let q = lead_m.div(g.lm()).expect("divisibility checked");
                let c = lead_c.clone();
                live = sub_scaled(&live[start + 1..], &c, &q, &g.terms[1..], order);
                start = 0;
            }
            None => {
                rem.push(live[start].clone());
                start += 1;
            }
        }
    }
    OrderedPoly { terms: rem }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

pub(crate) struct Engine<'a, F> {
    order: &'a TermOrder,
    budget: &'a Budget,
    polys: Vec<OrderedPoly<F>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    processed: usize,
    started: Instant,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(order: &'a TermOrder, budget: &'a Budget) -> Self {
        Engine {
            order,
            budget,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            processed: 0,
            started: Instant::now(),
        }
    }

    fn reducers(&self) -> Vec<&OrderedPoly<F>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn total_terms(&self) -> usize {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.terms.len())
            .sum()
    }

    fn check_budget(&self) -> Result<()> {
        let exceeded = |reason: String| Error::ResourceExceeded {
            reason,
            pairs: self.processed,
            basis_len: self.active.iter().filter(|a| **a).count(),
            terms: self.total_terms(),
        };
        if self.processed > self.budget.max_pairs {
            return Err(exceeded(format!("pair budget {}", self.budget.max_pairs)));
        }
        let terms = self.total_terms();
        if terms > self.budget.max_terms {
            return Err(exceeded(format!("term budget {}", self.budget.max_terms)));
        }
        if let Some(limit) = self.budget.time_limit {
            if self.started.elapsed() > limit {
                return Err(exceeded(format!("time budget {} ms", limit.as_millis())));
            }
        }
        Ok(())
    }

    /// Gebauer-Moeller update for a new basis element.
    fn insert(&mut self, mut h: OrderedPoly<F>) {
        h.make_monic();
        let hi = self.polys.len();
        let hm = h.lm().clone();
        self.polys.push(h);
        self.active.push(false);

        let mut candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, hm.lcm(self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let coprime = hm.is_coprime(self.polys[g1].lm());
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(self.polys[*g].lm()))
            .map(|(g, lcm)| Pair {
                i: g,
                j: hi,
                degree: lcm.degree(),
                lcm,
            })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hm) != p.lcm
                && hm.lcm(polys[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> OrderedPoly<F> {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = pair.lcm.div(f.lm()).expect("lcm divisible");
        let mg = pair.lcm.div(g.lm()).expect("lcm divisible");
        let fm: Vec<(Monomial, F)> = f.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&mf), c.clone()))
            .collect();
        let terms = sub_scaled(&fm, &F::one(), &mg, &g.terms[1..], self.order);
        OrderedPoly { terms }
    }

    /// Runs the algorithm and returns the reduced basis, sorted ascending
    /// by leading monomial.
    pub fn run(mut self, generators: Vec<OrderedPoly<F>>) -> Result<Vec<OrderedPoly<F>>> {
        for g in generators {
            let h = reduce(&g, &self.reducers(), self.order);
            if !h.is_zero() {
                self.insert(h);
            }
        }
        while let Some(pair) = self.select_pair() {
            self.processed += 1;
            self.check_budget()?;
            let s = self.s_polynomial(&pair);
            let h = reduce(&s, &self.reducers(), self.order);
            if !h.is_zero() {
                self.insert(h);
            }
        }
        Ok(self.interreduce())
    }

    fn interreduce(self) -> Vec<OrderedPoly<F>> {
        let order = self.order;
        let mut basis: Vec<OrderedPoly<F>> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let mut out: Vec<OrderedPoly<F>> = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&OrderedPoly<F>> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p)
                .collect();
            let head = basis[k].terms[0].clone();
            let tail = OrderedPoly {
                terms: basis[k].terms[1..].to_vec(),
            };
            let mut reduced = reduce(&tail, &others, order);
            reduced.terms.insert(0, head);
            reduced.make_monic();
            out.push(reduced);
        }
        out
    }
}
