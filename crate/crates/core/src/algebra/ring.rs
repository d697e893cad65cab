use std::collections::HashMap;
use std::sync::Arc;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A polynomial ring `k[x_1..x_n]` graded by `Z^l`: the grading matrix has
/// one row per grading component and one column per variable.
#[derive(Clone, Debug)]
pub struct PolynomialRing {
    names: Vec<String>,
    grading: Vec<Vec<i64>>,
    index: HashMap<String, usize>,
}

impl PartialEq for PolynomialRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.grading == other.grading
    }
}

impl Eq for PolynomialRing {}

pub(crate) fn valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == ',')
}

impl PolynomialRing {
    pub fn new(names: Vec<String>, grading: Vec<Vec<i64>>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_variable_name(name) {
                return Err(Error::InvalidRing(format!("bad variable name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        if grading.is_empty() {
            return Err(Error::InvalidRing("grading needs at least one row".into()));
        }
        if let Some(row) = grading.iter().find(|r| r.len() != names.len()) {
            return Err(Error::InvalidRing(format!(
                "grading row has {} entries for {} variables",
                row.len(),
                names.len()
            )));
        }
        Ok(Arc::new(PolynomialRing {
            names,
            grading,
            index,
        }))
    }

    /// Standard `Z`-grading: every variable has degree 1.
    pub fn standard(names: Vec<String>) -> Result<Arc<Self>> {
        let n = names.len();
        Self::new(names, vec![vec![1; n]])
    }

    /// `prefix0, ..., prefix{n-1}` with the standard grading.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Self> {
        Self::standard((0..n).map(|i| format!("{prefix}{i}")).collect())
            .expect("indexed names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn grading(&self) -> &[Vec<i64>] {
        &self.grading
    }

    /// Rank `l` of the grading group `Z^l`.
    pub fn grading_rank(&self) -> usize {
        self.grading.len()
    }

    pub fn variable_degree(&self, i: usize) -> Vec<i64> {
        self.grading.iter().map(|row| row[i]).collect()
    }

    pub fn multidegree(&self, m: &Monomial) -> Vec<i64> {
        self.grading
            .iter()
            .map(|row| {
                row.iter()
                    .zip(m.exponents())
                    .map(|(w, &e)| w * i64::from(e))
                    .sum()
            })
            .collect()
    }

    /// Every variable has a nonzero, componentwise nonnegative degree, so
    /// each graded piece is finite dimensional.
    pub fn is_positively_graded(&self) -> bool {
        (0..self.nvars()).all(|i| {
            let d = self.variable_degree(i);
            d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0)
        })
    }

    /// All monomials of the given multidegree, lex-descending. Requires a
    /// positive grading.
    pub fn monomials_of_multidegree(&self, degree: &[i64]) -> Result<Vec<Monomial>> {
        if degree.len() != self.grading_rank() || !self.is_positively_graded() {
            return Err(Error::UnsupportedDegree(degree.to_vec()));
        }
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        let mut left = degree.to_vec();
        if left.iter().any(|&x| x < 0) {
            return Ok(out);
        }
        self.enumerate(0, &mut exps, &mut left, &mut out);
        Ok(out)
    }

    fn enumerate(&self, i: usize, exps: &mut Vec<u32>, left: &mut Vec<i64>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left.iter().all(|&x| x == 0) {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let d = self.variable_degree(i);
        // Largest power of x_i that still fits.
        let max_e = d
            .iter()
            .zip(left.iter())
            .filter(|(w, _)| **w > 0)
            .map(|(w, l)| l / w)
            .min()
            .unwrap_or(0);
        for e in (0..=max_e).rev() {
            for (l, w) in left.iter_mut().zip(&d) {
                *l -= w * e;
            }
            exps[i] = e as u32;
            self.enumerate(i + 1, exps, left, out);
            for (l, w) in left.iter_mut().zip(&d) {
                *l += w * e;
            }
        }
        exps[i] = 0;
    }
}
