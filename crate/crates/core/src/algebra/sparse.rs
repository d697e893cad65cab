//! Sparse coefficient vectors and block-decomposed rank computations.
//!
//! A family of sparse vectors splits into independent blocks: two vectors
//! share a block when their supports are linked through shared coordinates.
//! Rank and null spaces are computed block by block, which keeps the dense
//! eliminations small for the multiplication maps of monomial embeddings.

use std::collections::BTreeMap;


use super::matrix::Matrix;
use super::scalar::Field;

/// `(index, coefficient)` pairs with strictly increasing indices and no
/// zero coefficients.
pub type SparseVec<F> = Vec<(usize, F)>;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn normalize<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.clone() + c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn to_dense<F: Field>(v: &[(usize, F)], dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// A block of vectors: positions into the input family and the sorted
/// coordinates their supports cover.
struct Block {
    members: Vec<usize>,
    coords: Vec<usize>,
}

fn blocks<F: Field>(vectors: &[SparseVec<F>], dim: usize) -> Vec<Block> {
    let mut uf = UnionFind::new(dim);
    for v in vectors {
        if let Some(&(first, _)) = v.first() {
            for (i, _) in &v[1..] {
                uf.union(first, *i);
            }
        }
    }
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out: Vec<Block> = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let Some(&(first, _)) = v.first() else {
            continue;
        };
        let root = uf.find(first);
        let b = *by_root.entry(root).or_insert_with(|| {
            out.push(Block {
                members: Vec::new(),
                coords: Vec::new(),
            });
            out.len() - 1
        });
        out[b].members.push(k);
        out[b].coords.extend(v.iter().map(|(i, _)| *i));
    }
    for b in &mut out {
        b.coords.sort_unstable();
        b.coords.dedup();
    }
    out
}

fn local_matrix<F: Field>(vectors: &[SparseVec<F>], block: &Block) -> Matrix<F> {
    let rows = block
        .members
        .iter()
        .map(|&k| {
            let mut row = vec![F::zero(); block.coords.len()];
            for (i, c) in &vectors[k] {
                let j = block.coords.binary_search(i).expect("coordinate in block");
                row[j] = c.clone();
            }
            row
        })
        .collect();
    Matrix::from_rows_with_cols(rows, block.coords.len())
}

/// Whether a block consists of scaled unit vectors and scaled differences
/// `c (e_u - e_v)`, whose span is read off the support graph.
fn graph_rank<F: Field>(vectors: &[SparseVec<F>], block: &Block) -> Option<usize> {
    let mut has_unit = false;
    for &k in &block.members {
        match vectors[k].as_slice() {
            [_] => has_unit = true,
            [(_, a), (_, b)] if (a.clone() + b.clone()).is_zero() => {}
            _ => return None,
        }
    }
    // The block is connected, so a spanning tree has |V| - 1 edges.
    Some(block.coords.len() - 1 + usize::from(has_unit))
}

/// Dimension of the span of `vectors` inside a `dim`-dimensional space.
pub fn span_rank<F: Field>(vectors: &[SparseVec<F>], dim: usize) -> usize {
    blocks(vectors, dim)
        .iter()
        .map(|b| graph_rank(vectors, b).unwrap_or_else(|| local_matrix(vectors, b).rank()))
        .sum()
}

/// Basis of the relations `{c : sum_k c_k vectors[k] = 0}`, as sparse
/// vectors over the family's indices.
pub fn relation_basis<F: Field>(vectors: &[SparseVec<F>], dim: usize) -> Vec<SparseVec<F>> {
    let mut out = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        if v.is_empty() {
            out.push(vec![(k, F::one())]);
        }
    }
    for b in blocks(vectors, dim) {
        let local = local_matrix(vectors, &b).transpose();
        for rel in local.kernel_basis() {
            out.push(
                rel.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (b.members[j], c))
                    .collect(),
            );
        }
    }
    out.sort_by_key(|v| v.first().map(|(i, _)| *i));
    out
}
