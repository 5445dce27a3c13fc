use proptest::prelude::*;
use rug::Rational;
use touchard::numkernel::{gamma, mk_context, BigReal};
use touchard::stirling::{build_triangle, scaled_at_xi, touchard_exact, Argument};

fn rational(num: i64, den: u32) -> Rational {
    Rational::from((num, den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialization_round_trip(num in -10_000_000i64..10_000_000, den in 1u32..5000, exp in -40i32..40) {
        let c = mk_context(50).unwrap();
        let v = BigReal::from_rational(&rational(num, den), &c) * BigReal::from_i64(10, &c).powi(exp);
        let back = BigReal::parse_serialized(&v.to_string()).unwrap();
        prop_assert_eq!(back.digits(), 50);
        if !v.is_zero() {
            prop_assert!(back.agreement_digits(&v) >= 48.0);
        }
    }

    #[test]
    fn exact_sum_is_deterministic(n in 2usize..60, num in 1i64..400, den in 1u32..20) {
        let c = mk_context(40).unwrap();
        let tri = build_triangle(60).unwrap();
        let z = Argument::Exact(-rational(num, den));
        let a = touchard_exact(n, &z, &tri, &c).unwrap();
        let b = touchard_exact(n, &z, &tri, &c).unwrap();
        prop_assert_eq!(a.value.to_string(), b.value.to_string());
        prop_assert_eq!(a.cancellation_digits, b.cancellation_digits);
    }

    #[test]
    fn doubling_precision_keeps_digits(n in 10usize..80, num in 80u32..140) {
        let xi = rational(i64::from(num), 100);
        let tri = build_triangle(80).unwrap();
        let lo = mk_context(40).unwrap();
        let hi = mk_context(80).unwrap();
        let a = scaled_at_xi(n, &xi, &tri, &lo).unwrap().value;
        let b = scaled_at_xi(n, &xi, &tri, &hi).unwrap().value;
        prop_assert!(a.agreement_digits(&b) >= 35.0);
    }

    #[test]
    fn gamma_recurrence(num in 1i64..2000, den in 1u32..97) {
        let c = mk_context(60).unwrap();
        let x = BigReal::from_rational(&rational(num, den), &c);
        let lhs = gamma(&(&x + 1), &c).unwrap();
        let rhs = &x * gamma(&x, &c).unwrap();
        prop_assert!(lhs.agreement_digits(&rhs) >= 55.0);
    }
}

// Γ(1/3) = 3∫₀^∞ exp(−u³) du, composite Simpson in f64.
#[test]
fn gamma_one_third_against_quadrature() {
    let (a, b, steps) = (0.0f64, 7.0f64, 200_000usize);
    let h = (b - a) / steps as f64;
    let f = |u: f64| (-u * u * u).exp();
    let mut s = f(a) + f(b);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    let oracle = 3.0 * s * h / 3.0;
    let c = mk_context(40).unwrap();
    let g = gamma(&(BigReal::one(&c) / 3), &c).unwrap().to_f64();
    assert!((g - oracle).abs() / oracle < 1e-12, "{g} vs {oracle}");
    assert!((g - 2.678_938_534_707_747).abs() < 1e-14);
}
