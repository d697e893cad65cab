//! Search for vectors `a, b` with `aᵀ Ω b = 0`, which show that a matrix of
//! linear forms is not 1-generic.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::scalar::rat;
use crate::algebra::{Monomial, Polynomial, PolynomialRing, Rational, RationalMatrix, TermOrder};
use crate::groebner::{buchberger, Budget, Ideal};

use super::omega::{zero_entries, MultiplicationMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBudget {
    /// Random candidate vectors `a` tried after the structured ones.
    pub samples: usize,
    /// Entries of random candidates lie in `[-max_entry, max_entry]`.
    pub max_entry: i64,
    pub seed: u64,
    /// Largest `max(s, t)` for which the exact chart test is attempted.
    pub exact_limit: usize,
    pub gb_budget: Budget,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            samples: 64,
            max_entry: 3,
            seed: 0,
            exact_limit: 4,
            gb_budget: Budget {
                max_pairs: 20_000,
                max_terms: 2_000_000,
                time_limit: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum WitnessOutcome {
    /// Rational `a, b`, both nonzero, with `aᵀ Ω b = 0`.
    Witness { a: Vec<String>, b: Vec<String> },
    /// Every chart of the bilinear system is inconsistent: the matrix is
    /// 1-generic.
    ProvedNone,
    /// The bilinear system has a solution over the algebraic closure, but
    /// no rational one was found.
    ExistsOverClosure,
    NoneFound,
}

impl WitnessOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            WitnessOutcome::Witness { .. } => "witness",
            WitnessOutcome::ProvedNone => "proved_none",
            WitnessOutcome::ExistsOverClosure => "exists_over_closure",
            WitnessOutcome::NoneFound => "none_found",
        }
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

/// Coefficient matrices: `coeffs[k][i][j]` is the coefficient of `y_k` in
/// entry `(i, j)`.
fn coefficient_matrices(m: &MultiplicationMatrix) -> Vec<Vec<Vec<Rational>>> {
    let n = m.ring().nvars();
    let mut out = vec![vec![vec![Rational::zero(); m.cols()]; m.rows()]; n];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for t in m.entry(i, j).terms() {
                if let Some(k) = t.mono.exponents().iter().position(|&e| e == 1) {
                    out[k][i][j] = t.coeff.clone();
                }
            }
        }
    }
    out
}

/// Rows `aᵀ M_k`; a nonzero kernel vector `b` gives a witness.
fn restricted(coeffs: &[Vec<Vec<Rational>>], a: &[Rational], t: usize) -> RationalMatrix {
    let rows = coeffs
        .iter()
        .map(|mk| {
            (0..t)
                .map(|j| {
                    a.iter()
                        .zip(mk)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, row)| acc + x.clone() * row[j].clone())
                })
                .collect()
        })
        .collect();
    RationalMatrix::from_rows_with_cols(rows, t)
}

fn candidates(s: usize, budget: &WitnessBudget) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..s).map(|i| unit(s, i)).collect();
    for i in 0..s {
        for j in i + 1..s {
            for c in [1, -1, 2, -2] {
                let mut a = unit(s, i);
                a[j] = rat(c);
                out.push(a);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let bound = budget.max_entry.max(1);
    for _ in 0..budget.samples {
        let a: Vec<Rational> = (0..s).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
        if a.iter().any(|x| !x.is_zero()) {
            out.push(a);
        }
    }
    out
}

/// Whether the chart `a_i = 1, b_j = 1` of `aᵀ M_k b = 0` has a solution.
fn chart_consistent(coeffs: &[Vec<Vec<Rational>>], s: usize, t: usize, i: usize, j: usize, budget: &Budget) -> Option<bool> {
    let names: Vec<String> = (0..s).map(|k| format!("a{k}")).chain((0..t).map(|k| format!("b{k}"))).collect();
    let ring = PolynomialRing::new(names, vec![vec![1; s + t]]).ok()?;
    let n = s + t;
    let mut gens: Vec<Polynomial<Rational>> = coeffs
        .iter()
        .map(|mk| {
            let terms = (0..s).flat_map(|p| {
                (0..t).filter(move |&q| !mk[p][q].is_zero()).map(move |q| {
                    (mk[p][q].clone(), Monomial::var(n, p).mul(&Monomial::var(n, s + q)))
                })
            });
            Polynomial::from_terms(&ring, terms)
        })
        .collect();
    let one = Polynomial::one(&ring);
    gens.push(Polynomial::var(&ring, i).try_sub(&one).ok()?);
    gens.push(Polynomial::var(&ring, s + j).try_sub(&one).ok()?);
    let ideal = Ideal::new(&ring, gens).ok()?;
    let gb = buchberger(&ideal, &TermOrder::GrevLex, budget).ok()?;
    Some(!gb.is_unit())
}

/// Looks for a witness that `m` is not 1-generic: zero entries first, then
/// structured and seeded random choices of `a` with an exact kernel
/// computation for `b`, then (for small matrices) an exact test of every
/// chart of the bilinear system.
pub fn one_generic_witness_search(m: &MultiplicationMatrix, budget: &WitnessBudget) -> WitnessOutcome {
    let (s, t) = (m.rows(), m.cols());
    if s == 0 || t == 0 {
        return WitnessOutcome::NoneFound;
    }
    if let Some(&(i, j)) = zero_entries(m).first() {
        return WitnessOutcome::Witness {
            a: strings(&unit(s, i)),
            b: strings(&unit(t, j)),
        };
    }
    let coeffs = coefficient_matrices(m);
    for a in candidates(s, budget) {
        if let Some(b) = restricted(&coeffs, &a, t).kernel_basis().into_iter().next() {
            return WitnessOutcome::Witness {
                a: strings(&a),
                b: strings(&b),
            };
        }
    }
    if s.max(t) > budget.exact_limit {
        return WitnessOutcome::NoneFound;
    }
    let mut all_inconsistent = true;
    for i in 0..s {
        for j in 0..t {
            match chart_consistent(&coeffs, s, t, i, j, &budget.gb_budget) {
                Some(false) => {}
                Some(true) => return WitnessOutcome::ExistsOverClosure,
                None => all_inconsistent = false,
            }
        }
    }
    if all_inconsistent {
        WitnessOutcome::ProvedNone
    } else {
        WitnessOutcome::NoneFound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;

    fn matrix(ring: &std::sync::Arc<PolynomialRing>, rows: &[&[&str]]) -> MultiplicationMatrix {
        MultiplicationMatrix::from_entries(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|s| parse(ring, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_entry() {
        let ring = PolynomialRing::indexed("y", 3);
        let m = matrix(&ring, &[&["y0", "0"], &["y1", "y2"]]);
        assert_eq!(
            one_generic_witness_search(&m, &WitnessBudget::default()),
            WitnessOutcome::Witness {
                a: vec!["1".into(), "0".into()],
                b: vec!["0".into(), "1".into()],
            }
        );
    }

    #[test]
    fn hankel_is_one_generic() {
        let ring = PolynomialRing::indexed("y", 3);
        let m = matrix(&ring, &[&["y0", "y1"], &["y1", "y2"]]);
        assert_eq!(one_generic_witness_search(&m, &WitnessBudget::default()), WitnessOutcome::ProvedNone);
    }

    #[test]
    fn hidden_zero_after_row_operation() {
        let ring = PolynomialRing::indexed("y", 3);
        let m = matrix(&ring, &[&["y0", "y1"], &["y0 + y2", "y1 + y2"]]);
        // Subtracting row 0 from row 1 gives (y2, y2); then b = (1, -1).
        let out = one_generic_witness_search(&m, &WitnessBudget::default());
        let WitnessOutcome::Witness { a, b } = out else {
            panic!("expected a witness, got {out:?}");
        };
        let a: Vec<Rational> = a.iter().map(|x| x.parse().unwrap()).collect();
        let b: Vec<Rational> = b.iter().map(|x| x.parse().unwrap()).collect();
        let coeffs = coefficient_matrices(&m);
        for mk in coeffs {
            let mut acc = Rational::zero();
            for i in 0..2 {
                for j in 0..2 {
                    acc += a[i].clone() * mk[i][j].clone() * b[j].clone();
                }
            }
            assert!(acc.is_zero());
        }
    }
}
