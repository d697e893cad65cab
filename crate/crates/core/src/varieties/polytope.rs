//! Lattice polytopes given by points, with facet inequalities recovered by
//! brute force over affinely independent point tuples. Intended for the
//! low-dimensional polytopes of toric surface examples.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::algebra::scalar::rat;
use crate::algebra::RationalMatrix;
use crate::error::{Error, Result};

/// Half-space `normal . x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl HalfSpace {
    /// Membership of `x` in the dilation `d * H`.
    pub fn contains_dilated(&self, x: &[i64], d: i64) -> bool {
        let lhs: i128 = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| i128::from(*a) * i128::from(*b))
            .sum();
        lhs >= i128::from(self.offset) * i128::from(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    points: Vec<Vec<i64>>,
    facets: Vec<HalfSpace>,
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Normal of the hyperplane through `n` points in `Z^n`: the generalized
/// cross product of the difference vectors.
fn hyperplane_normal(points: &[&Vec<i64>]) -> Vec<i64> {
    let n = points[0].len();
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(points[0])
                .map(|(a, b)| i128::from(a - b))
                .collect()
        })
        .collect();
    let mut normal: Vec<i128> = (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect();
    let g = normal.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in &mut normal {
            *x /= g;
        }
    }
    normal.into_iter().map(|x| x as i64).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl LatticePolytope {
    /// Convex hull of `points`, which may be the vertices or all lattice
    /// points. The hull must be full dimensional.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPolytope);
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::DegeneratePolytope("zero-dimensional ambient space".into()));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::DegeneratePolytope("points of different dimensions".into()));
        }
        let distinct: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let diffs = RationalMatrix::from_rows_with_cols(
            distinct[1..]
                .iter()
                .map(|p| p.iter().zip(&distinct[0]).map(|(a, b)| rat(a - b)).collect())
                .collect(),
            n,
        );
        let affine_dim = diffs.rank();
        if affine_dim < n {
            return Err(Error::DegeneratePolytope(format!(
                "points span an affine subspace of dimension {affine_dim} in Z^{n}"
            )));
        }
        let mut facets = BTreeSet::new();
        for combo in combinations(distinct.len(), n) {
            let chosen: Vec<&Vec<i64>> = combo.iter().map(|&i| &distinct[i]).collect();
            let normal = hyperplane_normal(&chosen);
            if normal.iter().all(|&x| x == 0) {
                continue;
            }
            let value = |p: &Vec<i64>| -> i64 { normal.iter().zip(p).map(|(a, b)| a * b).sum() };
            let offset = value(chosen[0]);
            let (mut above, mut below) = (false, false);
            for p in &distinct {
                let v = value(p);
                above |= v > offset;
                below |= v < offset;
            }
            match (above, below) {
                (true, true) => {}
                (_, false) => {
                    facets.insert(HalfSpace { normal, offset });
                }
                (false, true) => {
                    facets.insert(HalfSpace {
                        normal: normal.iter().map(|x| -x).collect(),
                        offset: -offset,
                    });
                }
            }
        }
        Ok(LatticePolytope {
            points: distinct,
            facets: facets.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// Componentwise minimum over the given points; translating by its
    /// negative makes every point of every dilation nonnegative.
    pub fn min_corner(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|j| self.points.iter().map(|p| p[j]).min().expect("nonempty"))
            .collect()
    }

    fn max_corner(&self) -> Vec<i64> {
        (0..self.dim())
            .map(|j| self.points.iter().map(|p| p[j]).max().expect("nonempty"))
            .collect()
    }

    /// Lattice points of `d * P`, lex ascending, by bounding-box scan.
    pub fn lattice_points(&self, d: i64) -> Vec<Vec<i64>> {
        if d < 0 {
            return Vec::new();
        }
        let lo: Vec<i64> = self.min_corner().iter().map(|x| x * d).collect();
        let hi: Vec<i64> = self.max_corner().iter().map(|x| x * d).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.facets.iter().all(|h| h.contains_dilated(&cur, d)) {
                out.push(cur.clone());
            }
            let mut j = cur.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    for k in j + 1..cur.len() {
                        cur[k] = lo[k];
                    }
                    break;
                }
            }
        }
    }

    pub fn translate(&self, v: &[i64]) -> Result<Self> {
        LatticePolytope::new(
            self.points
                .iter()
                .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
                .collect(),
        )
    }
}
