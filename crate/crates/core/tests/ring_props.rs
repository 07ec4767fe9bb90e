mod support;

use std::sync::Arc;

use mfcat_core::ring::{monomial_basis, GradeVector, GradedRing, Homogeneity, Monomial, Polynomial};
use proptest::prelude::*;

use support::q;

fn ring3() -> Arc<GradedRing> {
    GradedRing::weighted(&[("x", 1), ("y", 2), ("z", 3)])
}

/// Up to five terms with small exponents and coefficients in [-5, 5] / {1, 2, 3}.
fn poly(ring: Arc<GradedRing>) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0u32..4, n), -5i64..=5, 1i64..=3), 0..5).prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms.into_iter().map(|(e, a, b)| (Monomial(e), q(a) / q(b))),
        )
    })
}

fn homogeneous(ring: Arc<GradedRing>, d: i64) -> impl Strategy<Value = Polynomial> {
    let basis = monomial_basis(&ring, &GradeVector::new(vec![d])).unwrap();
    prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        Polynomial::from_terms(&ring, basis.iter().cloned().zip(cs.into_iter().map(q)))
    })
}

/// Coefficient of `t^d` in `prod 1/(1 - t^{w_i})`, by truncated series
/// multiplication.
fn series_coefficient(weights: &[i64], d: usize) -> u64 {
    let mut series = vec![0u64; d + 1];
    series[0] = 1;
    for &w in weights {
        let w = w as usize;
        for k in w..=d {
            series[k] += series[k - w];
        }
    }
    series[d]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_round_trips(p in poly(ring3())) {
        let text = p.to_string();
        prop_assert_eq!(Polynomial::parse(&ring3(), &text).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in poly(ring3()), b in poly(ring3()), c in poly(ring3())) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        // canonical serialization is independent of construction order
        prop_assert_eq!((&a * &b).to_string(), (&b * &a).to_string());
    }

    #[test]
    fn degrees_add_under_multiplication(
        a in (0i64..5).prop_flat_map(|d| homogeneous(ring3(), d)),
        b in (0i64..5).prop_flat_map(|d| homogeneous(ring3(), d)),
    ) {
        let prod = &a * &b;
        match (a.homogeneity(), b.homogeneity()) {
            (Homogeneity::Homogeneous(da), Homogeneity::Homogeneous(db)) => {
                prop_assert_eq!(prod.homogeneity(), Homogeneity::Homogeneous(&da + &db));
            }
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn monomial_basis_matches_series(d in 0usize..12) {
        let r = ring3();
        let basis = monomial_basis(&r, &GradeVector::new(vec![d as i64])).unwrap();
        prop_assert_eq!(basis.len() as u64, series_coefficient(&[1, 2, 3], d));
        for m in &basis {
            prop_assert_eq!(r.degree_of(m), GradeVector::new(vec![d as i64]));
        }
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly(ring3()), b in poly(ring3()), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn multigraded_basis_counts() {
    let r = GradedRing::new(
        vec![("x".into(), GradeVector::new(vec![1, 0])), ("p".into(), GradeVector::new(vec![-3, 2]))],
        2,
        Some(0),
    );
    // the slicing channel must have positive degrees
    assert!(r.is_err());
    let r = GradedRing::new(
        vec![("x".into(), GradeVector::new(vec![1, 0])), ("y".into(), GradeVector::new(vec![1, 1]))],
        2,
        Some(0),
    )
    .unwrap();
    assert_eq!(monomial_basis(&r, &GradeVector::new(vec![3, 1])).unwrap().len(), 1);
    assert_eq!(monomial_basis(&r, &GradeVector::new(vec![3, 4])).unwrap().len(), 0);
}

#[test]
fn parse_errors_are_reported() {
    let r = ring3();
    assert!(Polynomial::parse(&r, "x y").is_err());
    assert!(Polynomial::parse(&r, "w + 1").is_err());
    assert!(Polynomial::parse(&r, "x^").is_err());
    assert!(Polynomial::parse(&r, "(x + y").is_err());
    assert_eq!(Polynomial::parse(&r, " 1/2 * x ^ 2 ").unwrap().to_string(), "1/2*x^2");
}
