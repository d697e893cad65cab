use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use detpres::algebra::modular::rank_mod_prime;
use detpres::algebra::scalar::{rat, ratio};
use detpres::algebra::{parse, Monomial, Polynomial, PolynomialRing, TermOrder};
use detpres::detpres::{build_omega, enumerate_splits, homogeneous_ideal, Factorization};
use detpres::groebner::{buchberger, verify, Budget, Ideal};
use detpres::varieties::{EmbeddedVariety, LatticePolytope};
use detpres::{Poly, Rational, RationalMatrix};

const NVARS: usize = 3;

fn ring() -> Arc<PolynomialRing> {
    PolynomialRing::indexed("x", NVARS)
}

fn monomial(max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, NVARS).prop_map(Monomial::new)
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((coefficient(), monomial(max_exp)), 0..=max_terms)
        .prop_map(|terms| Polynomial::from_terms(&ring(), terms))
}

fn homogeneous(degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let monos = detpres::algebra::monomial::monomials_of_degree(NVARS, degree);
    prop::collection::vec((coefficient(), prop::sample::select(monos)), 1..=max_terms)
        .prop_map(|terms| Polynomial::from_terms(&ring(), terms))
}

fn orders() -> Vec<TermOrder> {
    vec![
        TermOrder::Lex,
        TermOrder::GrevLex,
        TermOrder::Elimination { k: 1 },
        TermOrder::weight(vec![1, 2, 3], TermOrder::GrevLex).unwrap(),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
        .prop_map(move |r| RationalMatrix::from_rows_with_cols(r.into_iter().map(|x| x.into_iter().map(rat).collect()).collect(), cols))
}

fn small_ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(3, 2), 1..=3)
}

fn quick_budget() -> Budget {
    Budget {
        max_pairs: 5_000,
        max_terms: 500_000,
        time_limit: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(4, 2), b in poly(4, 2), c in poly(4, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ring()), a.clone());
        prop_assert_eq!(&a + &(-&a), Polynomial::zero(&ring()));
    }

    #[test]
    fn products_of_homogeneous_forms(f in homogeneous(2, 4), g in homogeneous(3, 4)) {
        let h = &f * &g;
        prop_assert!(h.is_homogeneous());
        if !h.is_zero() {
            prop_assert_eq!(h.total_degree(), Some(5));
        }
    }

    #[test]
    fn parse_print_round_trip(f in poly(5, 3)) {
        let text = f.to_string();
        prop_assert_eq!(parse(&ring(), &text).unwrap(), f);
    }

    #[test]
    fn rank_over_q_matches_rank_mod_p(m in matrix(5, 6)) {
        // Small integer entries: the rank cannot drop modulo a large prime
        // unless a minor is divisible by it, which is impossible here.
        prop_assert_eq!(rank_mod_prime(&m, 2_147_483_647), Some(m.rank()));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 6)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn groebner_bases_are_reduced(gens in small_ideal(), use_lex in any::<bool>()) {
        let order = if use_lex { TermOrder::Lex } else { TermOrder::GrevLex };
        let ideal = Ideal::new(&ring(), gens.clone()).unwrap();
        let gb = buchberger(&ideal, &order, &quick_budget());
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        prop_assert!(verify::is_groebner_basis(&gb));
        prop_assert!(verify::is_reduced(&gb));
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn groebner_basis_ignores_generator_order(gens in small_ideal(), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            shuffled.reverse();
        }
        let a = buchberger(&Ideal::new(&ring(), gens).unwrap(), &TermOrder::GrevLex, &quick_budget());
        let b = buchberger(&Ideal::new(&ring(), shuffled).unwrap(), &TermOrder::GrevLex, &quick_budget());
        prop_assume!(a.is_ok() && b.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn normal_form_is_linear_and_stable(gens in small_ideal(), f in poly(4, 3), g in poly(4, 3)) {
        let gb = buchberger(&Ideal::new(&ring(), gens).unwrap(), &TermOrder::GrevLex, &quick_budget());
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        let nf = |p: &Poly| gb.normal_form(p).unwrap();
        prop_assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        prop_assert!(gb.contains(&(&f - &nf(&f))).unwrap());
        prop_assert!(nf(&f).terms().iter().all(|t| gb.is_standard(&t.mono)));
    }

    #[test]
    fn omega_transpose_is_the_swapped_split(l in 1usize..=3, seed in 0usize..64) {
        let dims: Vec<usize> = (0..l).map(|i| 1 + (seed >> i) % 2).collect();
        let m: Vec<i64> = (0..l).map(|i| 1 + ((seed >> (i + 3)) % 2) as i64).collect();
        let v = EmbeddedVariety::segre_veronese(&dims, &m).unwrap();
        for f in enumerate_splits(&v).unwrap() {
            let a = build_omega(&v, &f).unwrap();
            let b = build_omega(&v, &f.swapped()).unwrap();
            prop_assert_eq!(a.transpose().entry_strings(), b.entry_strings());
            let g = Factorization::complement(&f.e, &m).unwrap();
            prop_assert_eq!(g, f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn term_order_axioms(u in monomial(3), v in monomial(3), w in monomial(3)) {
        let one = Monomial::one(NVARS);
        for order in orders() {
            let uv = order.compare(&u, &v).unwrap();
            prop_assert_eq!(uv.reverse(), order.compare(&v, &u).unwrap());
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            if uv == Ordering::Less && order.cmp(&v, &w) == Ordering::Less {
                prop_assert_eq!(order.cmp(&u, &w), Ordering::Less);
            }
            prop_assert_eq!(order.cmp(&u.mul(&w), &v.mul(&w)), uv);
            prop_assert_ne!(order.cmp(&u, &one), Ordering::Less);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn toric_ideals_are_binomial(
        pts in prop::collection::vec((0i64..=2, 0i64..=2), 3..=5),
        d in 1i64..=2,
        dx in -3i64..=3,
        dy in -3i64..=3,
    ) {
        let p = LatticePolytope::new(pts.iter().map(|&(x, y)| vec![x, y]).collect());
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let v = EmbeddedVariety::toric_variety(&p, d).unwrap();
        let moved = EmbeddedVariety::toric_variety(&p.translate(&[dx, dy]).unwrap(), d).unwrap();
        prop_assert_eq!(v.gamma().len(), moved.gamma().len());
        let ix = homogeneous_ideal(&v, &Budget::default()).unwrap();
        for g in ix.generators() {
            prop_assert_eq!(g.len(), 2);
            prop_assert!(g.terms().iter().all(|t| t.coeff == rat(1) || t.coeff == rat(-1)));
            prop_assert!(g.is_homogeneous());
        }
        prop_assert!(ix.generators().iter().all(|g| g.compose(v.parameterization()).unwrap().is_zero()));
    }
}
