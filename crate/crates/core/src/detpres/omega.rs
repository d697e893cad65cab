//! Factorizations `L = E ⊗ E'`, multiplication matrices and their minors.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Polynomial, PolynomialRing, Rational};
use crate::error::{Error, Result};
use crate::varieties::{EmbeddedVariety, SectionBasis};

type Poly = Polynomial<Rational>;

/// The classes of `E` and `E'` in `Pic(X) = Z^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub e: Vec<i64>,
    pub e_prime: Vec<i64>,
}

impl Factorization {
    pub fn new(e: Vec<i64>, e_prime: Vec<i64>) -> Self {
        Factorization { e, e_prime }
    }

    /// `E = u`, `E' = total - u`.
    pub fn complement(u: &[i64], total: &[i64]) -> Result<Self> {
        if u.len() != total.len() {
            return Err(Error::LengthMismatch {
                expected: total.len(),
                found: u.len(),
            });
        }
        Ok(Factorization {
            e: u.to_vec(),
            e_prime: total.iter().zip(u).map(|(m, a)| m - a).collect(),
        })
    }

    pub fn swapped(&self) -> Self {
        Factorization {
            e: self.e_prime.clone(),
            e_prime: self.e.clone(),
        }
    }

    /// Checks that the factors multiply to `L`, are both nontrivial, and
    /// both have sections.
    pub fn validate(&self, v: &EmbeddedVariety) -> Result<()> {
        let l = v.pic_rank();
        for part in [&self.e, &self.e_prime] {
            if part.len() != l {
                return Err(Error::InvalidSplit(format!("{part:?} is not a class in Z^{l}")));
            }
        }
        let sum: Vec<i64> = self.e.iter().zip(&self.e_prime).map(|(a, b)| a + b).collect();
        if sum != v.bundle_degree() {
            return Err(Error::InvalidSplit(format!(
                "{:?} + {:?} is not {:?}",
                self.e,
                self.e_prime,
                v.bundle_degree()
            )));
        }
        for part in [&self.e, &self.e_prime] {
            if part.iter().all(|&x| x == 0) {
                return Err(Error::InvalidSplit("both factors must be nontrivial".into()));
            }
            let dim = v
                .gamma_dim(part)
                .map_err(|_| Error::InvalidSplit(format!("degree {part:?} is not supported")))?;
            if dim == 0 {
                return Err(Error::InvalidSplit(format!("degree {part:?} has no sections")));
            }
        }
        Ok(())
    }
}

/// An `s x t` matrix of linear forms in the ambient ring, with the section
/// labels of its rows and columns when built from a factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationMatrix {
    ring: Arc<PolynomialRing>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Vec<Poly>>,
}

fn single_variable(p: &Poly) -> Option<usize> {
    match p.terms() {
        [t] if t.coeff.is_one() && t.mono.degree() == 1 => t.mono.exponents().iter().position(|&e| e == 1),
        _ => None,
    }
}

impl MultiplicationMatrix {
    /// A matrix given directly by its entries, without section labels.
    pub fn from_entries(ring: &Arc<PolynomialRing>, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidInput("matrix rows have different lengths".into()));
        }
        if entries.iter().flatten().any(|p| !crate::algebra::poly::same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(MultiplicationMatrix {
            ring: ring.clone(),
            row_labels: Vec::new(),
            col_labels: Vec::new(),
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        MultiplicationMatrix {
            ring: self.ring.clone(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries: (0..self.cols())
                .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Variable indices when every entry is a single variable.
    pub fn variable_indices(&self) -> Option<Vec<Vec<usize>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(single_variable).collect())
            .collect()
    }
}

fn linear_form(ring: &Arc<PolynomialRing>, coords: Vec<(usize, Rational)>) -> Poly {
    let n = ring.nvars();
    Poly::from_terms(ring, coords.into_iter().map(|(k, c)| (c, Monomial::var(n, k))))
}

/// `Ω(E, E')`: entry `(i, j)` expands the product of the `i`-th section of
/// `E` and the `j`-th section of `E'` in the basis of `Γ(L)`.
pub fn build_omega(v: &EmbeddedVariety, f: &Factorization) -> Result<MultiplicationMatrix> {
    f.validate(v)?;
    let rows = v.sections(&f.e)?;
    let cols = v.sections(&f.e_prime)?;
    build_omega_with_bases(v, &rows, &cols)
}

/// `Ω` for explicitly chosen bases of the two factors.
pub fn build_omega_with_bases(
    v: &EmbeddedVariety,
    rows: &SectionBasis,
    cols: &SectionBasis,
) -> Result<MultiplicationMatrix> {
    let gamma = v.gamma();
    let ambient = v.ambient_ring();
    let entries = rows
        .sections()
        .par_iter()
        .map(|r| {
            cols.sections()
                .iter()
                .map(|c| Ok(linear_form(ambient, v.expand_product(r, c, gamma)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicationMatrix {
        ring: ambient.clone(),
        row_labels: rows.sections().iter().map(ToString::to_string).collect(),
        col_labels: cols.sections().iter().map(ToString::to_string).collect(),
        entries,
    })
}

/// Increasing `k`-subsets of `0..n` in lex order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

struct Cofactor<'a> {
    m: &'a MultiplicationMatrix,
    memo: HashMap<(Vec<usize>, Vec<usize>), Poly>,
}

impl Cofactor<'_> {
    fn det(&mut self, rows: &[usize], cols: &[usize]) -> Poly {
        if rows.len() == 1 {
            return self.m.entries[rows[0]][cols[0]].clone();
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let mut acc = Poly::zero(&self.m.ring);
        for (j, &c) in cols.iter().enumerate() {
            let entry = &self.m.entries[rows[0]][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.det(&rows[1..], &rest);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// The nonzero `k x k` minors, ordered lex by (row subset, column subset).
pub fn minors(m: &MultiplicationMatrix, k: usize) -> Result<Vec<Poly>> {
    let (s, t) = (m.rows(), m.cols());
    if k < 2 || k > s.min(t) {
        return Err(Error::MinorOutOfRange { k, rows: s, cols: t });
    }
    let row_sets = subsets(s, k);
    let col_sets = subsets(t, k);
    if k == 2 {
        let e = &m.entries;
        return Ok(row_sets
            .iter()
            .flat_map(|r| {
                col_sets.iter().map(move |c| {
                    let (i, i2, j, j2) = (r[0], r[1], c[0], c[1]);
                    &(&e[i][j] * &e[i2][j2]) - &(&e[i][j2] * &e[i2][j])
                })
            })
            .filter(|p| !p.is_zero())
            .collect());
    }
    let mut cof = Cofactor {
        m,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for r in &row_sets {
        for c in &col_sets {
            let d = cof.det(r, c);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Positions of zero entries. For a base-point-free factorization every
/// entry of `Ω` is nonzero.
pub fn zero_entries(m: &MultiplicationMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, row) in m.entries.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;

    fn matrix(ring: &Arc<PolynomialRing>, rows: &[&[&str]]) -> MultiplicationMatrix {
        MultiplicationMatrix::from_entries(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|s| parse(ring, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn conic_hankel_matrix() {
        let v = EmbeddedVariety::segre_veronese(&[1], &[2]).unwrap();
        let m = build_omega(&v, &Factorization::new(vec![1], vec![1])).unwrap();
        assert_eq!(m.entry_strings(), vec![vec!["y0", "y1"], vec!["y1", "y2"]]);
        let q = minors(&m, 2).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].to_string(), "-y1^2 + y0*y2");
    }

    #[test]
    fn subsets_are_lex() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn cofactor_determinant() {
        let ring = PolynomialRing::indexed("y", 9);
        let m = matrix(&ring, &[&["y0", "y1", "y2"], &["y3", "y4", "y5"], &["y6", "y7", "y8"]]);
        let d = minors(&m, 3).unwrap();
        assert_eq!(d.len(), 1);
        let expected = parse(
            &ring,
            "y0*y4*y8 - y0*y5*y7 - y1*y3*y8 + y1*y5*y6 + y2*y3*y7 - y2*y4*y6",
        )
        .unwrap();
        assert_eq!(d[0], expected);
        assert_eq!(minors(&m, 2).unwrap().len(), 9);
        assert!(matches!(minors(&m, 4), Err(Error::MinorOutOfRange { .. })));
        assert!(matches!(minors(&m, 1), Err(Error::MinorOutOfRange { .. })));
    }

    #[test]
    fn invalid_splits() {
        let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[2, 1, 1]).unwrap();
        assert!(Factorization::new(vec![1, 1, 0], vec![1, 0, 1]).validate(&v).is_ok());
        assert!(Factorization::new(vec![0, 0, 0], vec![2, 1, 1]).validate(&v).is_err());
        assert!(Factorization::new(vec![1, 1, 1], vec![1, 0, 1]).validate(&v).is_err());
        assert!(Factorization::new(vec![3, 0, 0], vec![-1, 1, 1]).validate(&v).is_err());
    }

    #[test]
    fn transpose_swaps_factors() {
        let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[2, 1, 1]).unwrap();
        let f = Factorization::new(vec![1, 1, 0], vec![1, 0, 1]);
        let a = build_omega(&v, &f).unwrap();
        let b = build_omega(&v, &f.swapped()).unwrap();
        assert_eq!(a.transpose(), b);
    }
}
