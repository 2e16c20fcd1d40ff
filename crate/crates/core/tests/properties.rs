use derlie_core::gcd::gcd;
use derlie_core::rational::{frac, int};
use derlie_core::{rank_over_r, Derivation, Monomial, Polynomial, QSpan, RatFunc, Rational};
use proptest::prelude::*;

fn poly(n: usize, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..=4, 1i64..=3), 0..=terms).prop_map(
        move |ts| Polynomial::from_terms(n, ts.into_iter().map(|(e, p, q)| (Monomial::new(e), frac(p, q)))),
    )
}

fn nonzero_poly(n: usize, terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, terms).prop_map(move |p| if p.is_zero() { Polynomial::one(n) } else { p })
}

fn ratfunc(n: usize) -> impl Strategy<Value = RatFunc> {
    (poly(n, 3), nonzero_poly(n, 2)).prop_map(|(a, b)| RatFunc::new(a, b).unwrap())
}

fn derivation(n: usize) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(ratfunc(n), n).prop_map(|c| Derivation::new(c).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(p, q, neg)| frac(if neg { -p } else { p }, q))
}

/// Ambient width 1..=3 together with a few random fields.
fn fields(k: usize) -> impl Strategy<Value = (usize, Vec<Derivation>)> {
    (1usize..=3).prop_flat_map(move |n| (Just(n), prop::collection::vec(derivation(n), k)))
}

fn ratfuncs(k: usize) -> impl Strategy<Value = (usize, Vec<RatFunc>)> {
    (1usize..=3).prop_flat_map(move |n| (Just(n), prop::collection::vec(ratfunc(n), k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((_, v) in ratfuncs(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
        if !a.is_zero() {
            prop_assert!((a * &a.recip().unwrap()).is_one());
            prop_assert_eq!(&b.checked_div(a).unwrap() * a, b.clone());
        }
    }

    #[test]
    fn common_factors_cancel((num, den, k) in (1usize..=3).prop_flat_map(|n| (poly(n, 3), nonzero_poly(n, 2), nonzero_poly(n, 2))), c in nonzero_rational()) {
        let plain = RatFunc::new(num.clone(), den.clone()).unwrap();
        let padded = RatFunc::new((&num * &k).scale(&c), (&den * &k).scale(&c)).unwrap();
        prop_assert_eq!(&padded, &plain);
        prop_assert_eq!(padded.denom(), &padded.denom().normalized());
    }

    #[test]
    fn gcd_keeps_planted_factor((p, q, k) in (1usize..=3).prop_flat_map(|n| (nonzero_poly(n, 3), nonzero_poly(n, 3), nonzero_poly(n, 2)))) {
        let g = gcd(&(&p * &k), &(&q * &k));
        prop_assert!(g.div_exact(&k).is_some(), "planted factor lost");
        prop_assert!((&p * &k).div_exact(&g).is_some());
        prop_assert!((&q * &k).div_exact(&g).is_some());
        prop_assert_eq!(g.clone(), g.normalized());
    }

    #[test]
    fn product_and_quotient_rules((n, v) in ratfuncs(2), var in 0usize..3) {
        let var = var % n;
        let (a, b) = (&v[0], &v[1]);
        let d = |r: &RatFunc| r.partial(var).unwrap();
        prop_assert_eq!(d(&(a * b)), &(&d(a) * b) + &(a * &d(b)));
        if !b.is_zero() {
            let lhs = d(&a.checked_div(b).unwrap());
            let rhs = (&(&d(a) * b) - &(a * &d(b))).checked_div(&(b * b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mixed_partials_commute((n, v) in ratfuncs(1), i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % n, j % n);
        let a = &v[0];
        prop_assert_eq!(a.partial(i).unwrap().partial(j).unwrap(), a.partial(j).unwrap().partial(i).unwrap());
    }

    #[test]
    fn leibniz_on_random_functions((d, f, g) in (1usize..=3).prop_flat_map(|n| (derivation(n), ratfunc(n), ratfunc(n)))) {
        prop_assert_eq!(d.apply(&(&f * &g)), &(&d.apply(&f) * &g) + &(&f * &d.apply(&g)));
    }

    #[test]
    fn bracket_axioms((_, ds) in fields(3), c in rational()) {
        let (a, b, e) = (&ds[0], &ds[1], &ds[2]);
        prop_assert_eq!(a.bracket(b), -&b.bracket(a));
        let jacobi = &(&a.bracket(&b.bracket(e)) + &b.bracket(&e.bracket(a))) + &e.bracket(&a.bracket(b));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(a.bracket(&(&b.scale_q(&c) + e)), &a.bracket(b).scale_q(&c) + &a.bracket(e));
    }

    #[test]
    fn bracket_is_the_commutator((d, e, f) in (1usize..=3).prop_flat_map(|n| (derivation(n), derivation(n), ratfunc(n)))) {
        prop_assert_eq!(d.bracket(&e).apply(&f), &d.apply(&e.apply(&f)) - &e.apply(&d.apply(&f)));
    }

    #[test]
    fn scaled_bracket_expansion((e1, e2, a, b) in (1usize..=3).prop_flat_map(|n| (derivation(n), derivation(n), ratfunc(n), ratfunc(n)))) {
        let lhs = e1.scale(&a).bracket(&e2.scale(&b));
        let rhs = &(&e1.bracket(&e2).scale(&(&a * &b)) + &e2.scale(&(&a * &e1.apply(&b)))) - &e1.scale(&(&b * &e2.apply(&a)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_invariant((n, ds) in fields(3), k in 0usize..3) {
        let r = rank_over_r(&ds);
        prop_assert!(r <= n.min(ds.len()));
        let mut rev = ds.clone();
        rev.reverse();
        prop_assert_eq!(rank_over_r(&rev), r);
        // Scaling a member by a nonzero function keeps the R-span.
        let f = &RatFunc::variable(n, n - 1) + &RatFunc::constant(n, int(2));
        let mut scaled = ds.clone();
        scaled[k] = scaled[k].scale(&f);
        prop_assert_eq!(rank_over_r(&scaled), r);
        // An R-combination adds nothing.
        let mut extended = ds.clone();
        extended.push(&ds[0].scale(&f) + &ds[1]);
        prop_assert_eq!(rank_over_r(&extended), r);
    }

    #[test]
    fn q_dimension_survives_rebasing((n, ds) in fields(3), c in rational()) {
        let span = QSpan::spanned_by(n, ds.clone());
        let rebased = vec![&ds[0] + &ds[1].scale_q(&c), ds[1].clone(), &ds[2] - &ds[0]];
        let other = QSpan::spanned_by(n, rebased);
        prop_assert_eq!(other.dim(), span.dim());
        prop_assert!(other.same_span(&span));
    }
}
