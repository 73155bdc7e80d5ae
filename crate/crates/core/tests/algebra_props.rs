use bruhat_dt::cluster::{mutate_x, symbolic, Kind, Seed};
use bruhat_dt::exactalg::{Field, LaurentPoly, Matrix, Monomial, RatFunc, Rational, Ring, VarId};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i32..=2, 3).prop_map(|e| Monomial::from_pairs(e.into_iter().enumerate().map(|(i, k)| (VarId(i as u32), k))))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -5i64..=5), 0..4)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly().prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatFunc::new(n, d).expect("denominator is nonzero"))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn rational_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), 9).prop_map(|v| Matrix::from_fn(3, 3, |r, c| v[3 * r + c].clone()))
}

fn ring_axioms<T: Ring>(a: &T, b: &T, c: &T) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
    assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&T::zero()), *a);
    assert_eq!(a.mul(&T::one()), *a);
    assert!(a.add(&a.neg()).is_zero());
    assert_eq!(a.sub(b), a.add(&b.neg()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_polynomials_form_a_ring(a in poly(), b in poly(), c in poly()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        ring_axioms(&a, &b, &c);
        if !a.is_zero() {
            prop_assert!(a.mul(&Field::inv(&a).unwrap()).is_one());
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in rational_matrix(), b in rational_matrix()) {
        prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
    }

    #[test]
    fn matrix_inverse(a in rational_matrix()) {
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(a.mul(&inv), Matrix::identity(3)),
            Err(_) => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn seed_mutation_is_an_involution(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = Seed::random(&mut rng, n, 3);
        for k in s.unfrozen() {
            prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        ring_axioms(&a, &b, &c);
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            prop_assert_eq!(a.div(&a).unwrap(), RatFunc::one());
        }
    }

    #[test]
    fn x_mutation_is_an_involution(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = Seed::random(&mut rng, n, 2);
        let x = symbolic(&s, Kind::X);
        for k in s.unfrozen() {
            prop_assert_eq!(mutate_x(&mutate_x(&x, k).unwrap(), k).unwrap(), x.clone());
        }
    }
}
