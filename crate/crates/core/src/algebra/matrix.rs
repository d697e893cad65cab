//! Dense exact linear algebra.
//!
//! Ranks use fraction-free (Bareiss) elimination; null spaces use
//! Gauss-Jordan over the coefficient field. Matrices at this scale are a
//! few hundred rows wide, so everything is dense.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::scalar::{Field, IntegralDomain, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<F: Zero + Clone> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a
    /// `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// `rows x cols` matrix with an explicit column count, so that empty
    /// row lists keep their width.
    pub fn from_rows_with_cols(rows: Vec<Vec<F>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self
    where
        F: num_traits::One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: IntegralDomain> Matrix<F> {
    /// `A * v`.
    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }
}

impl<F: Field> Matrix<F> {
    pub fn rank(&self) -> usize {
        F::rank_of(self)
    }

    /// Basis of the right null space `{v : A v = 0}`, one vector per free
    /// column of the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -rref[(i, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Whether `v` is a linear combination of the rows of `A`.
    pub fn in_row_space(&self, v: &[F]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        let mut stacked = self.row_vecs();
        stacked.push(v.to_vec());
        let stacked = Matrix::from_rows_with_cols(stacked, self.cols);
        Ok(stacked.rank() == self.rank())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                let x = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let x = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rref[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

/// Fraction-free Gaussian elimination. Every intermediate entry is a minor
/// of the input, so each division by the previous pivot is exact. Pivots
/// are chosen with the smallest bit length in their column.
pub fn bareiss_rank<R: IntegralDomain>(mut m: Matrix<R>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = R::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !m[(i, c)].is_zero())
            .min_by_key(|&i| m[(i, c)].size_bits());
        let Some(p) = pivot else {
            continue;
        };
        m.swap_rows(p, r);
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..cols {
                let a = piv.clone() * m[(i, j)].clone();
                let updated = if lead.is_zero() || m[(r, j)].is_zero() {
                    a
                } else {
                    a - lead.clone() * m[(r, j)].clone()
                };
                m[(i, j)] = updated.exact_div(&prev);
            }
            m[(i, c)] = R::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}
