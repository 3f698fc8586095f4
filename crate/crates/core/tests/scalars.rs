use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use g2lift::scalars::{cyclotomic_poly, parse_scalar, Cyclo, Param, ParamKey, ParamScalar};

/// Numerical value of `c` at `q = exp(2 pi i / n)`.
fn eval(c: &Cyclo, n: u16) -> Complex64 {
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    c.coords().iter().enumerate().map(|(k, r)| z.powu(k as u32) * r.to_f64().unwrap()).sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * (1.0 + a.norm().max(b.norm()))
}

fn cyclo(n: u16) -> impl Strategy<Value = Cyclo> {
    proptest::collection::vec((-6i64..=6, 0i64..40), 1..5).prop_map(move |ts| {
        ts.into_iter().fold(Cyclo::zero(n), |acc, (c, k)| &acc + &Cyclo::qpow(n, k).scale_int(c))
    })
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
    assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
    assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
}

#[test]
fn powers_of_q_wrap() {
    for n in [5u16, 7, 9, 12] {
        assert!(Cyclo::qpow(n, n as i64).is_one());
        assert_eq!(Cyclo::qpow(n, -1), Cyclo::qpow(n, n as i64 - 1));
        let sum = (0..n as i64).fold(Cyclo::zero(n), |acc, k| &acc + &Cyclo::qpow(n, k));
        assert!(sum.is_zero());
    }
}

#[test]
fn parser_reads_the_braiding_symbols() {
    let n = 7;
    let a = 3;
    assert_eq!(parse_scalar("q_12", n, a).unwrap(), ParamScalar::qpow(n, 3));
    assert_eq!(parse_scalar("q_21", n, a).unwrap(), ParamScalar::qpow(n, -6));
    assert_eq!(parse_scalar("q^-1 q", n, a).unwrap(), ParamScalar::one(n));
    let l = parse_scalar("2 q^2 l1 m12", n, a).unwrap();
    let key = ParamKey::single(Param::L1, 1).mul(ParamKey::single(Param::M12, 1));
    assert_eq!(l.coeff(key), Cyclo::qpow(n, 2).scale_int(2));
    assert!(parse_scalar("q +", n, a).is_err());
    assert!(parse_scalar("", n, a).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(11), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_operations_agree_with_complex_values(
        (n, x, y) in prop::sample::select(vec![5u16, 7, 9, 12]).prop_flat_map(|n| (Just(n), cyclo(n), cyclo(n)))
    ) {
        prop_assert!(close(eval(&(&x + &y), n), eval(&x, n) + eval(&y, n)));
        prop_assert!(close(eval(&(&x * &y), n), eval(&x, n) * eval(&y, n)));
        if !y.is_zero() {
            let q = x.div(&y).unwrap();
            prop_assert!(close(eval(&q, n), eval(&x, n) / eval(&y, n)));
            prop_assert_eq!(&(&q * &y), &x);
        }
    }

    #[test]
    fn display_round_trips_through_the_parser(coeffs in proptest::collection::vec((-9i64..=9, 0i64..7, 0u8..3, 0u8..2), 1..5)) {
        let n = 7;
        let mut s = ParamScalar::zero(n);
        for (c, k, l1, m) in coeffs {
            let key = ParamKey::single(Param::L1, l1).mul(ParamKey::single(Param::MBeta, m));
            s += &ParamScalar::monomial(Cyclo::qpow(n, k).scale_int(c), key);
        }
        let back = parse_scalar(&s.to_string(), n, 3).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn parameter_arithmetic_is_a_ring(a in -5i64..5, b in -5i64..5, k in 0i64..7) {
        let n = 5;
        let x = &ParamScalar::param(n, Param::M1).scale(&Cyclo::from_int(n, a)) + &ParamScalar::qpow(n, k);
        let y = &ParamScalar::param(n, Param::M2).scale(&Cyclo::from_int(n, b)) + &ParamScalar::one(n);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
        prop_assert!((&x - &x).is_zero());
        prop_assert!((&x * &y).kill(&[Param::M1, Param::M2]) == ParamScalar::qpow(n, k));
    }
}
