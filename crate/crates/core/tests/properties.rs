use hfverify_core::constring::ce_add;
use hfverify_core::psinterval::{digamma_enclosure, enclose_rational, ln2_enclosure, pi_enclosure};
use hfverify_core::ratcore::{frac, int};
use hfverify_core::verify::{binomial_transform, mth_power_sum_closed_form, mth_power_sum_direct};
use hfverify_core::{ConstExpr, Monomial, Precision, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..=500, 1i64..=60).prop_map(|(n, d)| frac(n, d))
}

/// Exponents small enough that any product of two stays representable.
fn monomial() -> impl Strategy<Value = Monomial> {
    (0i32..=1, -1i32..=1).prop_map(|(l, p)| Monomial::new(l, p).unwrap())
}

fn const_expr() -> impl Strategy<Value = ConstExpr> {
    prop::collection::vec((rational(), monomial()), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(ConstExpr::zero(), |acc, (q, m)| ce_add(&acc, &ConstExpr::monomial(q, m)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_addition_is_a_group(x in const_expr(), y in const_expr(), z in const_expr()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &ConstExpr::zero(), x.clone());
        prop_assert_eq!(-&(-&x), x);
    }

    #[test]
    fn ring_multiplication_distributes(x in const_expr(), y in const_expr(), z in const_expr()) {
        let lhs = x.mul(&(&y + &z)).unwrap();
        let rhs = &x.mul(&y).unwrap() + &x.mul(&z).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&ConstExpr::one()).unwrap(), x);
    }

    #[test]
    fn evaluation_contains_the_value(x in const_expr(), y in const_expr()) {
        let p = Precision::bits(60);
        let ex = x.eval_interval(&p).unwrap();
        let ey = y.eval_interval(&p).unwrap();
        prop_assert!(ex.width() <= *p.eps());
        let sum = (&x + &y).eval_interval(&p).unwrap();
        prop_assert!(sum.overlaps(&(&ex + &ey)));
        let prod = x.mul(&y).unwrap().eval_interval(&p).unwrap();
        prop_assert!(prod.overlaps(&(&ex * &ey)));
        if let Some(q) = x.as_rational() {
            prop_assert!(ex.contains(&q));
        }
    }

    #[test]
    fn digamma_recurrence(x in (1i64..=400, 1i64..=30).prop_map(|(n, d)| frac(n, d))) {
        // psi(x + 1) = psi(x) + 1/x
        let p = Precision::bits(70);
        let a = digamma_enclosure(&(&x + int(1)), &p).unwrap();
        let b = &digamma_enclosure(&x, &p).unwrap() + &enclose_rational(&x.recip(), 80);
        prop_assert!(a.overlaps(&b));
    }

    #[test]
    fn tighter_precision_nests(x in const_expr()) {
        let coarse = x.eval_interval(&Precision::bits(40)).unwrap();
        let fine = x.eval_interval(&Precision::bits(120)).unwrap();
        prop_assert!(fine.width() <= coarse.width());
        prop_assert!(fine.overlaps(&coarse));
    }

    #[test]
    fn binomial_transform_is_an_involution(seq in prop::collection::vec(rational(), 0..20)) {
        prop_assert_eq!(binomial_transform(&binomial_transform(&seq)), seq);
    }

    #[test]
    fn power_sum_closed_form_matches(n in 1u64..=12, b in rational(), m in 1u32..=5) {
        match mth_power_sum_direct(n, &b, m) {
            Ok(direct) => prop_assert_eq!(mth_power_sum_closed_form(n, &b, m).unwrap(), direct),
            Err(_) => prop_assert!(mth_power_sum_closed_form(n, &b, m).is_err()),
        }
    }
}

#[test]
fn constants_are_tight() {
    let p = Precision::bits(100);
    let ln2 = ln2_enclosure(&p).unwrap();
    let pi = pi_enclosure(&p).unwrap();
    assert!(ln2.lo() > &frac(693_147_180_559_945, 1_000_000_000_000_000));
    assert!(ln2.hi() < &frac(693_147_180_559_946, 1_000_000_000_000_000));
    assert!(pi.lo() > &frac(314_159_265_358_979, 100_000_000_000_000));
    assert!(pi.hi() < &frac(314_159_265_358_980, 100_000_000_000_000));
}

#[test]
fn exponent_overflow_is_an_error() {
    let x = ConstExpr::monomial(int(1), Monomial::new(2, 2).unwrap());
    assert!(x.mul(&ConstExpr::ln2()).is_err());
    assert!(x.mul(&ConstExpr::pi()).is_err());
    assert!(Monomial::new(0, -3).is_err());
}
