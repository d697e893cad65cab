//! The multiplication map `μ₂ : Sym₂ Γ(L) → Γ(L²)` and the degree-2 part of
//! the ideal of the embedding.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::sparse::{normalize, relation_basis, span_rank, to_dense, SparseVec, UnionFind};
use crate::algebra::{Monomial, Polynomial, PolynomialRing, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::varieties::EmbeddedVariety;

use super::omega::{subsets, MultiplicationMatrix};

type Poly = Polynomial<Rational>;

/// Index of `y_a y_b` (`a <= b`) in the basis of `Sym₂` of an `n`-dimensional
/// space, ordered lex by `(a, b)`.
pub fn sym_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * (2 * n - a + 1) / 2 + (b - a)
}

pub struct QuadraticPart {
    ambient: Arc<PolynomialRing>,
    gamma_l2_dim: usize,
    rows: Vec<SparseVec<Rational>>,
    rank: usize,
    kernel: OnceLock<Vec<SparseVec<Rational>>>,
}

/// Builds `μ₂` on the basis `y_a y_b`, `a <= b`, of `Sym₂ Γ(L)`.
pub fn quadratic_part(v: &EmbeddedVariety) -> Result<QuadraticPart> {
    let double: Vec<i64> = v.bundle_degree().iter().map(|d| 2 * d).collect();
    let l2 = v.sections(&double)?;
    let sections = v.parameterization();
    let n = sections.len();
    let rows: Vec<SparseVec<Rational>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (a..n)
                .map(|b| v.expand_product(&sections[a], &sections[b], &l2))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let rank = span_rank(&rows, l2.len());
    Ok(QuadraticPart {
        ambient: v.ambient_ring().clone(),
        gamma_l2_dim: l2.len(),
        rows,
        rank,
        kernel: OnceLock::new(),
    })
}

impl QuadraticPart {
    /// `r + 1`, the number of ambient variables.
    pub fn ambient_dim(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn ambient_ring(&self) -> &Arc<PolynomialRing> {
        &self.ambient
    }

    pub fn sym_len(&self) -> usize {
        self.rows.len()
    }

    pub fn sym_index(&self, a: usize, b: usize) -> usize {
        sym_index(self.ambient_dim(), a, b)
    }

    /// The pairs `(a, b)` of the `Sym₂` basis, in index order.
    pub fn sym_basis(&self) -> Vec<(usize, usize)> {
        let n = self.ambient_dim();
        (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
    }

    pub fn gamma_l2_dim(&self) -> usize {
        self.gamma_l2_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `dim (I_X)₂ = dim Sym₂ - rank μ₂`.
    pub fn dim_i2(&self) -> usize {
        self.sym_len() - self.rank
    }

    pub fn mu2_surjective(&self) -> bool {
        self.rank == self.gamma_l2_dim
    }

    /// Images of the `Sym₂` basis vectors.
    pub fn mu2_rows(&self) -> &[SparseVec<Rational>] {
        &self.rows
    }

    /// Dense matrix of `μ₂` with one row per `Sym₂` basis element.
    pub fn mu2_dense(&self) -> RationalMatrix {
        RationalMatrix::from_rows_with_cols(
            self.rows.iter().map(|r| to_dense(r, self.gamma_l2_dim)).collect(),
            self.gamma_l2_dim,
        )
    }

    /// A basis of `ker μ₂ = (I_X)₂`, computed on first use.
    pub fn kernel_vectors(&self) -> &[SparseVec<Rational>] {
        self.kernel.get_or_init(|| relation_basis(&self.rows, self.gamma_l2_dim))
    }

    /// Coefficient vector of a quadric in the ambient ring.
    pub fn quadric_vector(&self, p: &Poly) -> Result<SparseVec<Rational>> {
        if !crate::algebra::poly::same_ring(p.ring(), &self.ambient) {
            return Err(Error::RingMismatch);
        }
        let mut out = Vec::with_capacity(p.len());
        for t in p.terms() {
            let e = t.mono.exponents();
            let vars: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect();
            match vars.as_slice() {
                [a, b] => out.push((self.sym_index(*a, *b), t.coeff.clone())),
                _ => return Err(Error::InvalidInput(format!("{p} is not a quadric"))),
            }
        }
        Ok(normalize(out))
    }

    pub fn vector_quadric(&self, v: &[(usize, Rational)]) -> Poly {
        let basis = self.sym_basis();
        let n = self.ambient_dim();
        Poly::from_terms(
            &self.ambient,
            v.iter().map(|(k, c)| {
                let (a, b) = basis[*k];
                (c.clone(), Monomial::var(n, a).mul(&Monomial::var(n, b)))
            }),
        )
    }

    /// `μ₂(v)` in the basis of `Γ(L²)`.
    pub fn mu2_apply(&self, v: &[(usize, Rational)]) -> SparseVec<Rational> {
        let mut acc = Vec::new();
        for (k, c) in v {
            for (j, x) in &self.rows[*k] {
                acc.push((*j, c.clone() * x.clone()));
            }
        }
        normalize(acc)
    }

    pub fn in_kernel(&self, v: &[(usize, Rational)]) -> bool {
        self.mu2_apply(v).is_empty()
    }
}

/// Incremental span computation for families of sparse vectors dominated by
/// binomials `e_u - e_w`, which are stored as graph edges.
#[derive(Clone, Debug, Default)]
pub struct SpanAccumulator {
    dim: usize,
    edges: Vec<(u32, u32)>,
    units: Vec<u32>,
    general: Vec<SparseVec<Rational>>,
}

impl SpanAccumulator {
    pub fn new(dim: usize) -> Self {
        assert!(u32::try_from(dim).is_ok(), "dimension exceeds u32 indices");
        SpanAccumulator {
            dim,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push_edge(&mut self, u: usize, w: usize) {
        self.edges.push((u as u32, w as u32));
    }

    pub fn push(&mut self, v: SparseVec<Rational>) {
        match v.as_slice() {
            [] => {}
            [(u, _)] => self.units.push(*u as u32),
            [(u, a), (w, b)] if (a.clone() + b.clone()).is_zero() => self.push_edge(*u, *w),
            _ => self.general.push(v),
        }
    }

    pub fn extend(&mut self, other: &SpanAccumulator) {
        self.edges.extend_from_slice(&other.edges);
        self.units.extend_from_slice(&other.units);
        self.general.extend(other.general.iter().cloned());
    }

    /// Dimension of the span of everything pushed so far.
    pub fn rank(&self) -> usize {
        let mut uf = UnionFind::new(self.dim);
        for &(u, w) in &self.edges {
            uf.union(u as usize, w as usize);
        }
        for v in &self.general {
            for (i, _) in &v[1..] {
                uf.union(v[0].0, *i);
            }
        }
        #[derive(Default)]
        struct Component {
            coords: usize,
            has_unit: bool,
            general: bool,
        }
        let mut touched = vec![false; self.dim];
        let mut comps: HashMap<usize, Component> = HashMap::new();
        let mut touch = |uf: &mut UnionFind, i: usize, comps: &mut HashMap<usize, Component>| {
            let c = comps.entry(uf.find(i)).or_default();
            if !touched[i] {
                touched[i] = true;
                c.coords += 1;
            }
        };
        for &(u, w) in &self.edges {
            touch(&mut uf, u as usize, &mut comps);
            touch(&mut uf, w as usize, &mut comps);
        }
        for &u in &self.units {
            touch(&mut uf, u as usize, &mut comps);
            comps.get_mut(&uf.find(u as usize)).expect("touched").has_unit = true;
        }
        for v in &self.general {
            for (i, _) in v {
                touch(&mut uf, *i, &mut comps);
            }
            comps.get_mut(&uf.find(v[0].0)).expect("touched").general = true;
        }
        let graph_part: usize = comps
            .values()
            .filter(|c| !c.general)
            .map(|c| c.coords - 1 + usize::from(c.has_unit))
            .sum();
        if self.general.is_empty() {
            return graph_part;
        }
        let one = Rational::from_integer(1.into());
        let mut dense: Vec<SparseVec<Rational>> = Vec::new();
        for &(u, w) in &self.edges {
            if comps[&uf.find(u as usize)].general {
                dense.push(normalize(vec![(u as usize, one.clone()), (w as usize, -one.clone())]));
            }
        }
        for &u in &self.units {
            if comps[&uf.find(u as usize)].general {
                dense.push(vec![(u as usize, one.clone())]);
            }
        }
        dense.extend(self.general.iter().cloned());
        graph_part + span_rank(&dense, self.dim)
    }
}

/// Streams the nonzero 2-minors of `m` into `acc`, checking each against
/// `μ₂`. Returns the number of nonzero minors.
pub fn accumulate_two_minors(m: &MultiplicationMatrix, q: &QuadraticPart, acc: &mut SpanAccumulator) -> Result<usize> {
    let rows = subsets(m.rows(), 2);
    let cols = subsets(m.cols(), 2);
    let mut count = 0;
    if let Some(idx) = m.variable_indices() {
        let mu2 = q.mu2_rows();
        for r in &rows {
            for c in &cols {
                let (i, i2, j, j2) = (r[0], r[1], c[0], c[1]);
                let u = q.sym_index(idx[i][j], idx[i2][j2]);
                let w = q.sym_index(idx[i][j2], idx[i2][j]);
                if u == w {
                    continue;
                }
                if mu2[u] != mu2[w] {
                    return Err(Error::MinorNotInKernel(q.vector_quadric(&minor_vector(u, w)).to_string()));
                }
                acc.push_edge(u, w);
                count += 1;
            }
        }
        return Ok(count);
    }
    for p in super::omega::minors(m, 2)? {
        let v = q.quadric_vector(&p)?;
        if !q.in_kernel(&v) {
            return Err(Error::MinorNotInKernel(p.to_string()));
        }
        acc.push(v);
        count += 1;
    }
    Ok(count)
}

fn minor_vector(u: usize, w: usize) -> SparseVec<Rational> {
    let one = Rational::from_integer(1.into());
    normalize(vec![(u, one.clone()), (w, -one)])
}

/// Dimension of the span of `minors` inside `Sym₂ Γ(L)`. Fails if a minor
/// is not annihilated by `μ₂`.
pub fn minor_span_dim(minors: &[Poly], q: &QuadraticPart) -> Result<usize> {
    let mut acc = SpanAccumulator::new(q.sym_len());
    for p in minors {
        let v = q.quadric_vector(p)?;
        if !q.in_kernel(&v) {
            return Err(Error::MinorNotInKernel(p.to_string()));
        }
        acc.push(v);
    }
    Ok(acc.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use crate::algebra::{parse, Matrix};
    use crate::detpres::omega::{build_omega, minors, Factorization};

    #[test]
    fn sym_index_is_a_bijection() {
        let n = 5;
        let mut seen = Vec::new();
        for a in 0..n {
            for b in a..n {
                seen.push(sym_index(n, a, b));
            }
        }
        assert_eq!(seen, (0..n * (n + 1) / 2).collect::<Vec<_>>());
        assert_eq!(sym_index(n, 3, 1), sym_index(n, 1, 3));
    }

    #[test]
    fn conic() {
        let v = EmbeddedVariety::segre_veronese(&[1], &[2]).unwrap();
        let q = quadratic_part(&v).unwrap();
        assert_eq!((q.sym_len(), q.gamma_l2_dim(), q.dim_i2()), (6, 5, 1));
        assert!(q.mu2_surjective());
        let k = q.kernel_vectors();
        assert_eq!(k.len(), 1);
        let quadric = q.vector_quadric(&k[0]);
        let expected = parse(q.ambient_ring(), "y1^2 - y0*y2").unwrap();
        assert!(quadric == expected || quadric == -&expected);
    }

    #[test]
    fn o111_dimensions() {
        let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[1, 1, 1]).unwrap();
        let q = quadratic_part(&v).unwrap();
        assert_eq!(q.mu2_dense().rows(), 36);
        assert_eq!(q.mu2_dense().cols(), 27);
        assert_eq!(q.mu2_dense().rank(), 27);
        assert_eq!(q.dim_i2(), 9);
        let f = Factorization::new(vec![1, 0, 0], vec![0, 1, 1]);
        let m = build_omega(&v, &f).unwrap();
        let ms = minors(&m, 2).unwrap();
        assert_eq!(ms.len(), 6);
        assert_eq!(minor_span_dim(&ms, &q).unwrap(), 6);
        let mut acc = SpanAccumulator::new(q.sym_len());
        assert_eq!(accumulate_two_minors(&m, &q, &mut acc).unwrap(), 6);
        assert_eq!(acc.rank(), 6);
        assert_eq!(minor_span_dim(&[], &q).unwrap(), 0);
    }

    #[test]
    fn foreign_quadric_is_rejected() {
        let v = EmbeddedVariety::segre_veronese(&[1], &[2]).unwrap();
        let q = quadratic_part(&v).unwrap();
        let p = parse(q.ambient_ring(), "y0*y1 - y2^2").unwrap();
        assert!(matches!(minor_span_dim(&[p], &q), Err(Error::MinorNotInKernel(_))));
    }

    #[test]
    fn accumulator_matches_dense_rank() {
        let mut acc = SpanAccumulator::new(6);
        acc.push_edge(0, 1);
        acc.push_edge(1, 2);
        acc.push_edge(0, 2);
        acc.push(vec![(3, rat(2)), (4, rat(1))]);
        acc.push(vec![(4, rat(1)), (5, rat(-1))]);
        acc.push(vec![(5, rat(7))]);
        let rows = vec![
            vec![1, -1, 0, 0, 0, 0],
            vec![0, 1, -1, 0, 0, 0],
            vec![1, 0, -1, 0, 0, 0],
            vec![0, 0, 0, 2, 1, 0],
            vec![0, 0, 0, 0, 1, -1],
            vec![0, 0, 0, 0, 0, 7],
        ];
        let dense = Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect());
        assert_eq!(acc.rank(), dense.rank());
        assert_eq!(acc.rank(), 5);
    }
}
