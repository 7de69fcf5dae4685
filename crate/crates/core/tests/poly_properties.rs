mod common;

use bifset::{parse_polynomial, Scalar};
use common::strategies::poly;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn gaussian_point(v: &[(i64, i64, i64)]) -> Vec<Scalar> {
    v.iter().map(|&(re, im, den)| Scalar::new(ratio(re, den), ratio(im, den))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5, true), b in poly(3, 3, 5, true), c in poly(3, 3, 5, true)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&b), &a - &b);
    }

    #[test]
    fn restriction_is_idempotent(p in poly(3, 3, 6, true), mask in 0usize..8) {
        let axes: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
        let once = p.restrict_to_axes(&axes);
        prop_assert_eq!(once.restrict_to_axes(&axes), once.clone());
        prop_assert_eq!(p.restrict_to_axes(&[0, 1, 2]), p.clone());
        for (e, _) in once.terms() {
            prop_assert!(e.supported_in(&axes));
        }
    }

    #[test]
    fn printing_round_trips(p in poly(3, 4, 6, true)) {
        let text = p.to_string();
        let back = parse_polynomial(&text, p.ring()).unwrap();
        prop_assert_eq!(back, p, "{}", text);
    }

    #[test]
    fn float_evaluation_matches_exact(
        p in poly(3, 4, 6, true),
        z in prop::collection::vec((-9i64..=9, -9i64..=9, 1i64..=8), 3),
    ) {
        let exact = gaussian_point(&z);
        let zf: Vec<Complex64> = exact.iter().map(Scalar::to_complex).collect();
        let want = p.evaluate_exact(&exact).to_complex();
        let got = p.evaluate(&zf);
        let scale: f64 = p.terms().map(|(e, c)| {
            c.to_complex().norm() * e.entries().iter().zip(&zf).map(|(&k, x)| x.norm().powi(k as i32)).product::<f64>()
        }).sum();
        prop_assert!((got - want).norm() <= 1e-12 * scale.max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(2, 3, 4, true), b in poly(2, 3, 4, true), i in 0usize..2) {
        let lhs = (&a * &b).partial_derivative(i);
        let rhs = &(&a.partial_derivative(i) * &b) + &(&a * &b.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn parser_rejects_malformed_input() {
    let r = ring(2);
    for bad in ["x1^", "x1 +* x2", "(x1", "x3", "x1^-1", "x1^(-2)", "1/0", ""] {
        assert!(parse_polynomial(bad, &r).is_err(), "{bad:?} accepted");
    }
}
