use std::sync::Arc;

use galcover::arith::{digit_sum, int, rat, Rational};
use galcover::cyclotomic::{gauss_order, gauss_sum, multiplicative_twist_exponent, CyclotomicInt, MultChar};
use galcover::error::Error;
use galcover::finite_field::{field, make_field, FieldContext, PrimePower};
use galcover::padic::{padic_gauss_valuation, PadicGaussOracle};
use galcover::stickelberger::{
    c_from_d, c_tuple, composition_exponent_with, d_from_c, digit_sum_valuation, s_tuple,
    stickelberger_valuation, twist_d, TameLocalDatum,
};
use proptest::prelude::*;

const FIELDS: &[(u64, u32)] = &[
    (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3),
];

fn ctx(p: u64, r: u32) -> Arc<FieldContext> {
    field(p, r).unwrap()
}

#[test]
fn dlog_inverts_exp_exhaustively() {
    for &(p, r) in &[(2, 10), (3, 6), (7, 4), (101, 2), (9973, 1)] {
        let k = make_field(p, r).unwrap();
        let g = k.generator();
        for x in k.elements().filter(|x| *x != k.zero()) {
            assert_eq!(k.pow(&g, k.dlog(&x).unwrap()), x);
        }
    }
}

#[test]
fn additive_character_sums_vanish() {
    for &(p, r) in FIELDS {
        let k = ctx(p, r);
        let mut counts = vec![0i64; p as usize];
        for x in k.elements() {
            counts[k.trace(&x) as usize] += 1;
        }
        assert!(CyclotomicInt::from_exponent_counts(p, &counts).is_zero());
    }
}

#[test]
fn trivial_gauss_sum_is_minus_one() {
    for &(p, r) in FIELDS {
        let k = ctx(p, r);
        let t = gauss_sum(&k, &MultChar::new(&k, 0));
        assert_eq!(t.as_integer(), Some((-1).into()));
    }
}

#[test]
fn galois_equivariance() {
    for &(p, r) in FIELDS {
        let k = ctx(p, r);
        let t = multiplicative_twist_exponent(&k, p as i64);
        for c in 0..k.q() - 1 {
            let chi = MultChar::new(&k, c as i64);
            assert_eq!(gauss_sum(&k, &chi).twist(t).unwrap(), gauss_sum(&k, &chi.power(p as i64)));
        }
    }
}

#[test]
fn padic_precision_is_monotone() {
    let k = ctx(3, 2);
    let low = PadicGaussOracle::new(&k, 20).unwrap();
    let high = PadicGaussOracle::new(&k, 40).unwrap();
    for c in 0..8 {
        assert_eq!(low.gauss_valuation(c).unwrap(), high.gauss_valuation(c).unwrap());
    }
}

#[test]
fn padic_refuses_tiny_precision() {
    let k = ctx(5, 2);
    let err = padic_gauss_valuation(&k, &MultChar::new(&k, 7), Some(1));
    assert!(matches!(err, Err(Error::Precision { .. })), "{err:?}");
}

#[test]
fn gauss_product_valuation_is_r() {
    for &(p, r) in FIELDS {
        let k = ctx(p, r);
        let o = PadicGaussOracle::new(&k, galcover::padic::default_lambda_precision(p, r)).unwrap();
        for c in 1..k.q() - 1 {
            let a = o.gauss_valuation(c).unwrap();
            let b = o.gauss_valuation(k.q() - 1 - c).unwrap();
            assert_eq!(a + b, int(r as i64));
        }
    }
}

#[test]
fn quadratic_gauss_sum_over_f3() {
    let k = ctx(3, 1);
    let chi = MultChar::new(&k, 1);
    let prod = gauss_sum(&k, &chi).mul(&gauss_sum(&k, &chi.inverse()));
    assert_eq!(prod.as_integer(), Some((-3).into()));
    assert_eq!(padic_gauss_valuation(&k, &chi, None).unwrap(), rat(1, 2));
    assert_eq!(gauss_order(&k), 6);
}

#[test]
fn stickelberger_examples() {
    let pp = PrimePower::new(5, 2).unwrap();
    let datum = TameLocalDatum::new(pp, 24, 1).unwrap();
    for c in 0..24 {
        let d = d_from_c(&datum, c).unwrap();
        assert_eq!(c_from_d(&datum, d).unwrap(), c);
        assert_eq!(
            stickelberger_valuation(&datum, d).unwrap(),
            Rational::new((digit_sum(c, 5) as i64).into(), 4.into())
        );
    }
    assert!(TameLocalDatum::new(pp, 5, 1).is_err());
    assert!(TameLocalDatum::new(pp, 3, 2).is_err());
}

fn datum_strategy() -> impl Strategy<Value = (TameLocalDatum, u64)> {
    (0..FIELDS.len(), any::<u64>(), 0..4u32, any::<u64>()).prop_map(|(i, a, w, b)| {
        let (p, r) = FIELDS[i];
        let pp = PrimePower::new(p, r).unwrap();
        let divs = galcover::arith::divisors(pp.q - 1);
        let e_t = divs[(a % divs.len() as u64) as usize];
        let datum = TameLocalDatum::new(pp, e_t, p.pow(w)).unwrap();
        (datum, b % e_t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tuple_equality((datum, d) in datum_strategy()) {
        let c = c_from_d(&datum, d).unwrap();
        prop_assert_eq!(s_tuple(&datum, d as i64), c_tuple(datum.prime_power, c));
        prop_assert_eq!(d_from_c(&datum, c).unwrap(), d);
    }

    #[test]
    fn composition_exponent_ignores_extra_n((datum, _d) in datum_strategy(), extra in 0..3u32) {
        prop_assert_eq!(
            composition_exponent_with(&datum, extra),
            composition_exponent_with(&datum, 0)
        );
    }

    #[test]
    fn embedding_independence((datum, d) in datum_strategy(), i in 0..6u32) {
        let t = twist_d(&datum, d, i);
        prop_assert_eq!(s_tuple(&datum, t as i64), s_tuple(&datum, d as i64));
        prop_assert_eq!(
            stickelberger_valuation(&datum, t).unwrap(),
            stickelberger_valuation(&datum, d).unwrap()
        );
    }

    #[test]
    fn triple_agreement((datum, d) in datum_strategy()) {
        let pp = datum.prime_power;
        let c = c_from_d(&datum, d).unwrap();
        let k = ctx(pp.p, pp.r);
        let v = stickelberger_valuation(&datum, d).unwrap();
        prop_assert_eq!(&v, &digit_sum_valuation(pp, c).unwrap());
        prop_assert_eq!(&v, &padic_gauss_valuation(&k, &MultChar::new(&k, c as i64), None).unwrap());
    }

    #[test]
    fn frobenius_fixes_trace(i in 0..FIELDS.len(), code in any::<u64>()) {
        let (p, r) = FIELDS[i];
        let k = ctx(p, r);
        let x = k.decode(code % k.q());
        prop_assert_eq!(k.trace(&k.frobenius(&x)), k.trace(&x));
        prop_assert_eq!(k.trace(&x), k.trace_by_definition(&x));
    }

    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (p, r) = FIELDS[i];
        let k = ctx(p, r);
        let (x, y, z) = (k.decode(a % k.q()), k.decode(b % k.q()), k.decode(c % k.q()));
        prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
        prop_assert_eq!(k.pow(&x, k.q()), x.clone());
        if x != k.zero() {
            prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
        }
    }
}
