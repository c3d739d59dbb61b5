use std::cmp::Ordering;

use gwnbasis::experiments::{degreewise_counts, preprocess};
use gwnbasis::gevp::solve_min;
use gwnbasis::norms::{coeff_norm, gw_seminorm_poly, gw_seminorm_term, SeminormCache};
use gwnbasis::polyring::{border, euclidean_norm, eval, is_order_ideal};
use gwnbasis::{
    abm, abm_checked, GevpProblem, Normalization, PointSet, Polynomial, Term, TermList,
    TermOrdering,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn term(n: usize) -> impl Strategy<Value = Term> {
    prop::collection::vec(0u32..4, n).prop_map(Term::new)
}

fn points(n: usize, m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), m)
        .prop_map(|rows| PointSet::new(rows).unwrap())
}

fn poly(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((term(n), -3.0f64..3.0), 1..6)
        .prop_map(move |ts| Polynomial::from_terms(n, ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrevlex_is_a_degree_compatible_total_order(a in term(3), b in term(3), c in term(3)) {
        let ord = TermOrdering::degrevlex(3);
        prop_assert_eq!(ord.compare(&a, &b), ord.compare(&b, &a).reverse());
        prop_assert_eq!(ord.compare(&a, &b) == Ordering::Equal, a == b);
        if a.degree() < b.degree() {
            prop_assert_eq!(ord.compare(&a, &b), Ordering::Less);
        }
        if ord.compare(&a, &b) == Ordering::Less {
            prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), Ordering::Less);
        }
    }

    #[test]
    fn border_of_an_order_ideal(ts in prop::collection::vec(term(2), 1..5)) {
        let ord = TermOrdering::degrevlex(2);
        let mut closure: Vec<Term> = Vec::new();
        for t in &ts {
            for a in 0..=t.exponents()[0] {
                for b in 0..=t.exponents()[1] {
                    let d = Term::new(vec![a, b]);
                    if !closure.contains(&d) {
                        closure.push(d);
                    }
                }
            }
        }
        ord.sort(&mut closure);
        let inner = TermList::from_terms(closure).unwrap();
        prop_assert!(is_order_ideal(&inner));
        for b in border(&inner, &ord).iter() {
            prop_assert!(!inner.contains(b));
            prop_assert!((0..2).any(|k| b.div_var(k).is_some_and(|p| inner.contains(&p))));
        }
    }

    #[test]
    fn seminorm_scaling_law(x in points(2, 1..=6), t in term(2), alpha in 0.05f64..20.0) {
        prop_assume!(!t.is_one());
        let base = gw_seminorm_term(&t, &x).unwrap();
        let scaled = gw_seminorm_term(&t, &x.scaled(alpha)).unwrap();
        let want = alpha.powi(t.degree() as i32 - 1) * base;
        prop_assert!((scaled - want).abs() <= 1e-10 * want.max(1e-300));
    }

    #[test]
    fn seminorm_axioms(x in points(2, 1..=6), f in poly(2), g in poly(2), a in -5.0f64..5.0) {
        let cache = SeminormCache::new(&x);
        let nf = gw_seminorm_poly(&f, &cache).unwrap();
        let ng = gw_seminorm_poly(&g, &cache).unwrap();
        prop_assert!(nf >= 0.0);
        let naf = gw_seminorm_poly(&f.scale(a), &cache).unwrap();
        prop_assert!((naf - a.abs() * nf).abs() <= 1e-10 * (1.0 + nf));
        let sum = gw_seminorm_poly(&(&f + &g), &cache).unwrap();
        prop_assert!(sum <= nf + ng + 1e-10 * (1.0 + nf + ng));
        prop_assert!(coeff_norm(&(&f + &g)) <= coeff_norm(&f) + coeff_norm(&g) + 1e-12);
    }

    #[test]
    fn gevp_residual_identity_and_normalization(
        entries in prop::collection::vec(-2.0f64..2.0, 24),
        weights in prop::collection::vec(0.2f64..3.0, 4),
        with_const in any::<bool>(),
    ) {
        let mut m = DMatrix::from_vec(6, 4, entries);
        let mut d = weights;
        if with_const {
            m.column_mut(0).fill(1.0);
            d[0] = 0.0;
        }
        let p = GevpProblem::new(m.clone(), d.clone(), with_const.then_some(0)).unwrap();
        let s = solve_min(&p).unwrap();
        let v = DVector::from_vec(s.v_min.clone());
        let resid = (&m * &v).norm_squared();
        prop_assert!((resid - s.lambda_min).abs() <= 1e-8 * (1.0 + s.lambda_min));
        let q: f64 = s.v_min.iter().zip(&d).map(|(a, w)| a * a * w * w).sum();
        prop_assert!((q - 1.0).abs() < 1e-10);
        prop_assert!(s.v_min[3] >= 0.0);
        prop_assert!(s.finite_spectrum.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((s.finite_spectrum[0] - s.lambda_min).abs() <= 1e-9 * (1.0 + s.lambda_min));
    }

    #[test]
    fn gevp_scaling_covariance(
        entries in prop::collection::vec(-2.0f64..2.0, 15),
        weights in prop::collection::vec(0.2f64..3.0, 3),
        c in 0.1f64..10.0,
    ) {
        let m = DMatrix::from_vec(5, 3, entries);
        let a = solve_min(&GevpProblem::new(m.clone(), weights.clone(), None).unwrap()).unwrap();
        let b = solve_min(&GevpProblem::new(m * c, weights, None).unwrap()).unwrap();
        prop_assert!((b.lambda_min - c * c * a.lambda_min).abs() <= 1e-9 * (1.0 + b.lambda_min));
    }

    #[test]
    fn abm_invariants(x in points(2, 1..=9), eps in 0.0f64..0.6) {
        let r = abm_checked(&x, eps, &TermOrdering::degrevlex(2), Normalization::GradientWeighted)
            .unwrap();
        let distinct = x.len() - x.duplicate_count();
        prop_assert!(r.inner.len() <= distinct.max(1));
        prop_assert!(r.is_order_ideal());
        let cap = r.basis.iter().map(|g| g.degree()).max().unwrap_or(0);
        let counts = degreewise_counts(&r.basis, cap);
        prop_assert_eq!(counts.counts.iter().sum::<usize>() + counts.above, r.basis.len());
        for g in &r.basis {
            let value = euclidean_norm(&eval(&g.poly, &x).unwrap());
            prop_assert!(value <= eps + 1e-8);
            prop_assert!(g.border_coefficient() > 0.0);
        }
    }

    #[test]
    fn abm_gradient_weighted_is_scale_invariant(
        x in points(2, 2..=8),
        eps in 0.01f64..0.5,
        alpha in 0.05f64..20.0,
    ) {
        let ord = TermOrdering::degrevlex(2);
        let gw = Normalization::GradientWeighted;
        let r = abm(&x, eps, &ord, gw).unwrap();
        let s = abm(&x.scaled(alpha), alpha * eps, &ord, gw).unwrap();
        prop_assert_eq!(&r.inner, &s.inner);
        prop_assert_eq!(r.basis.len(), s.basis.len());
    }

    #[test]
    fn preprocessing_centers_and_normalizes(x in points(3, 2..=12)) {
        prop_assume!(x.duplicate_count() + 1 < x.len());
        let (y, map) = preprocess(&x).unwrap();
        for k in 0..3 {
            let mean: f64 = y.iter().map(|p| p[k]).sum::<f64>() / y.len() as f64;
            prop_assert!(mean.abs() < 1e-12);
        }
        let avg = y.iter().map(euclidean_norm).sum::<f64>() / y.len() as f64;
        prop_assert!((avg - 1.0).abs() < 1e-12);
        for (p, q) in x.iter().zip(y.iter()) {
            let back = map.invert(q);
            prop_assert!(p.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }
}
