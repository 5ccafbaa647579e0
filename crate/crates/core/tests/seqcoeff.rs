use proptest::prelude::*;
use rug::{Float, Rational};
use uniform_airy::seqcoeff::{
    airy_sequences, exponent_series, extend_sequence, lambda_cap, product_inequality_holds, poincare_uv, FormalSeries,
};
use uniform_airy::PrecisionContext;

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn exp_of_exponent_reproduces_classical_airy_coefficients() {
    let t = airy_sequences(12);
    let (u, v) = poincare_uv(12);
    let ai = exponent_series(&t.a, 12).exp().unwrap();
    let aip = exponent_series(&t.a_tilde, 12).exp().unwrap();
    for k in 0..=12 {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        assert_eq!(*ai.coeff(k), Rational::from(&u[k] * sign), "u_{k}");
        assert_eq!(*aip.coeff(k), Rational::from(&v[k] * sign), "v_{k}");
    }
    assert_eq!(u[2], r(385, 10368));
}

#[test]
fn sequence_satisfies_its_recurrence_start() {
    let t = airy_sequences(4);
    assert_eq!(*t.a(1), r(5, 72));
    assert_eq!(*t.a_tilde(1), r(-7, 72));
    assert_eq!(*t.a(3), r(1105, 10368));
    assert_eq!(*t.a_tilde(3), r(-1463, 10368));
    let again = extend_sequence(t.a(1), t.a(2), 4).unwrap();
    assert_eq!(again, t.a);
}

#[test]
fn lambda_closed_forms() {
    let ctx = PrecisionContext::new(40).unwrap();
    let pi = ctx.pi();
    let close = |a: Float, b: Float| (a - b).abs().to_f64() < 1e-38;
    assert!(close(lambda_cap(2, &ctx).unwrap(), pi.clone() / 2u32));
    assert!(close(lambda_cap(3, &ctx).unwrap(), ctx.float(1)));
    assert!(close(lambda_cap(4, &ctx).unwrap(), pi / 4u32));
}

fn series(order: usize) -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec((-50i64..50, 1i64..20), order).prop_map(move |c| {
        let mut coeffs = vec![Rational::new()];
        coeffs.extend(c.into_iter().map(|(n, d)| r(n, d)));
        FormalSeries::new(coeffs, order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_inverts_exp(s in series(8)) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn exp_is_a_homomorphism(a in series(6), b in series(6)) {
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_inequality(b in (0u64..10_000, 1u64..100), c in (0u64..10_000, 1u64..100), d in (0u64..10_000, 1u64..100)) {
        let q = |(n, d): (u64, u64)| Rational::from((n, d));
        prop_assert!(product_inequality_holds(&q(b), &q(c), &q(d)));
    }
}
