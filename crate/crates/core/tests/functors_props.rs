mod support;

use std::sync::Arc;

use mfcat_core::functors::{
    coker_presentation, knorrer_lift, koszul_brane, rees_degenerate, segal_canonicalize, segal_hom_dimension,
    tensor_product, BaseModule, BigradedLabel, KoszulData, ReesChart,
};
use mfcat_core::library::{power_brane, xy_brane};
use mfcat_core::mfcore::{make_mf, MatrixFactorization, ShiftList};
use mfcat_core::ring::{monomial_basis, GradeVector, GradedRing, Monomial, Polynomial, Rational};
use mfcat_core::Error;
use proptest::prelude::*;

use support::{monomials, q, quotient_dimension};

fn gv(k: i64) -> GradeVector {
    GradeVector::new(vec![k])
}

fn sl(v: &[i64]) -> ShiftList {
    ShiftList::new(v.iter().map(|&x| gv(x)).collect())
}

fn ring4() -> Arc<GradedRing> {
    GradedRing::standard(&["x", "y", "z", "u"])
}

fn linear_form() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-2i64..=2, 4).prop_map(|cs| {
        let r = ring4();
        Polynomial::from_terms(&r, cs.into_iter().enumerate().map(|(i, c)| (Monomial::var(4, i, 1), q(c))))
    })
}

fn koszul_data(ranks: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = KoszulData> {
    ranks.prop_flat_map(|r| {
        prop::collection::vec((linear_form(), linear_form()), r).prop_map(|pairs| {
            let ring = ring4();
            let (s, s_y): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            let mut w = Polynomial::zero(&ring);
            for (a, b) in s.iter().zip(&s_y) {
                w = &w + &(a * b);
            }
            let n = s.len();
            KoszulData::with_degrees(&ring, s, s_y, &w, Some(gv(2)), vec![gv(1); n], gv(0)).unwrap()
        })
    })
}

/// `(f, g)` in one variable `x` with `deg f = a`, `deg g = b`.
fn power(a: u32, b: u32) -> MatrixFactorization {
    power_brane(&GradedRing::standard(&["x"]), "x", a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn koszul_branes_verify(data in koszul_data(1..=4)) {
        let k = koszul_brane(&data).unwrap();
        let half = 1usize << (data.rank() - 1);
        prop_assert_eq!(k.rank(), (half, half));
        prop_assert!(k.verify().is_ok());
        prop_assert_eq!(k.potential(), data.potential());
    }

    #[test]
    fn koszul_concat_is_tensor(a in koszul_data(1..=1), b in koszul_data(1..=1)) {
        let t = tensor_product(&koszul_brane(&a).unwrap(), &koszul_brane(&b).unwrap()).unwrap();
        let c = koszul_brane(&a.concat(&b).unwrap()).unwrap();
        prop_assert_eq!(t.permute_basis(&[0, 1], &[1, 0]), c);
    }

    #[test]
    fn tensor_is_associative_up_to_reordering(d in 2u32..=4, a1 in 1u32..=3, a2 in 1u32..=3, a3 in 1u32..=3) {
        let (a1, a2, a3) = (a1.min(d - 1), a2.min(d - 1), a3.min(d - 1));
        let (b1, b2, b3) = (d - a1, d - a2, d - a3);
        let r = GradedRing::standard(&["x", "y", "z"]);
        let (a, b, c) = (power_brane(&r, "x", a1, b1), power_brane(&r, "y", a2, b2), power_brane(&r, "z", a3, b3));
        let left = tensor_product(&tensor_product(&a, &b).unwrap(), &c).unwrap();
        let right = tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap();
        prop_assert!(left.verify().is_ok());
        prop_assert_eq!(left.permute_basis(&[0, 2, 3, 1], &[0, 2, 3, 1]), right);
    }

    #[test]
    fn coker_is_additive(a in 1u32..=3, b in 1u32..=3, t in -2i64..=2) {
        let e = power(a, b);
        let f = power(a + b - 1, 1).twist(&gv(t));
        prop_assume!(e.check_compatible(&f).is_ok());
        let sum = e.direct_sum(&f).unwrap();
        let (ce, cf, cs) = (coker_presentation(&e).unwrap(), coker_presentation(&f).unwrap(), coker_presentation(&sum).unwrap());
        for k in -3..=6 {
            prop_assert_eq!(cs.hilbert(k).unwrap(), ce.hilbert(k).unwrap() + cf.hilbert(k).unwrap());
        }
    }

    #[test]
    fn coker_matches_quotient_count(a in 1u32..=3, b in 1u32..=3, t in -2i64..=2) {
        // coker(x^b) on a generator of twist t is (R/(x^b)) shifted by t
        let e = power(a, b).twist(&gv(t));
        let r = e.ring().clone();
        let g = Polynomial::parse(&r, &format!("x^{b}")).unwrap();
        let c = coker_presentation(&e).unwrap();
        for k in -4..=6 {
            prop_assert_eq!(c.hilbert(k).unwrap(), quotient_dimension(&r, &[g.clone()], k + t));
        }
    }

    #[test]
    fn segal_hom_depends_on_difference(a in -3i64..=3, b in -3i64..=3, a2 in -3i64..=3, b2 in -3i64..=3, k in -4i64..=4) {
        let r = GradedRing::standard(&["x", "y", "z"]);
        let l = |a, b| BigradedLabel::new(a, b, 3);
        prop_assert_eq!(
            segal_hom_dimension(l(a, b), l(a2, b2), &r).unwrap(),
            segal_hom_dimension(l(a + k, b), l(a2 + k, b2), &r).unwrap()
        );
        let c = segal_canonicalize(l(a, b));
        prop_assert!(c.is_canonical());
        // the relation (a, b) ~ (a + N, b - 2)
        prop_assert_eq!(segal_canonicalize(l(a + 3, b - 2)), c);
    }

    #[test]
    fn rees_fibers(
        terms in prop::collection::vec((prop::collection::vec(0u32..3, 2), 1i64..=3), 1..5),
        weights in prop::collection::vec(1u64..=2, 2),
    ) {
        let r = GradedRing::ungraded(&["x", "p"]);
        let w = Polynomial::from_terms(&r, terms.iter().map(|(e, c)| (Monomial(e.clone()), q(*c))));
        prop_assume!(!w.is_zero());
        let chart_weight = |m: &Monomial| m.0.iter().zip(&weights).map(|(&e, &wt)| e as u64 * wt).sum::<u64>();
        let order = w.terms().map(|(m, _)| chart_weight(m)).min().unwrap();
        let fam = rees_degenerate(&w, &ReesChart::new(weights.clone(), order), None).unwrap();
        prop_assert_eq!(fam.specialize_int(1), w.clone());
        let leading = Polynomial::from_terms(
            &r,
            w.terms().filter(|(m, _)| chart_weight(m) == order).map(|(m, c)| (m.clone(), c.clone())),
        );
        prop_assert_eq!(fam.specialize(&Rational::from_integer(0.into())), leading);
        if order > 0 {
            let shallow = rees_degenerate(&w, &ReesChart::new(weights, order + 1), None);
            let is_shallow = matches!(shallow, Err(Error::FiltrationTooShallow { .. }));
            prop_assert!(is_shallow);
        }
    }
}

#[test]
fn knorrer_lift_of_free_module() {
    let r = GradedRing::standard(&["x", "y", "z"]);
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    let data = KoszulData::new(&r, vec![p("y")], vec![p("x")], &p("x*y")).unwrap();
    let k = koszul_brane(&data).unwrap();
    let base = BaseModule {
        base_variables: vec!["z".into()],
        shifts: sl(&[0, 2]),
    };
    let lift = knorrer_lift(&base, &data).unwrap();
    assert_eq!(lift, k.direct_sum(&k.twist(&gv(2))).unwrap());
    let leak = BaseModule {
        base_variables: vec!["x".into()],
        shifts: sl(&[0]),
    };
    assert!(matches!(knorrer_lift(&leak, &data), Err(Error::VariableLeak { .. })));
    let unknown = BaseModule {
        base_variables: vec!["q".into()],
        shifts: sl(&[0]),
    };
    assert!(matches!(knorrer_lift(&unknown, &data), Err(Error::UnknownVariable { .. })));
}

#[test]
fn koszul_errors() {
    let r = ring4();
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    assert!(matches!(
        KoszulData::new(&r, vec![p("x")], vec![p("y")], &p("x*z")),
        Err(Error::ContractionMismatch)
    ));
    assert!(matches!(
        KoszulData::with_degrees(&r, vec![p("x")], vec![p("y^2")], &p("x*y^2"), Some(gv(3)), vec![gv(1)], gv(0)),
        Err(Error::HomogeneityViolation { ref matrix, .. }) if matrix == "s_Y"
    ));
}

#[test]
fn coker_of_xy_brane_is_a_line() {
    let c = coker_presentation(&xy_brane()).unwrap();
    assert_eq!(c.hilbert_range(0, 10).unwrap(), vec![1; 11]);
    // oracle: R/(y) in degree k
    let r = xy_brane().ring().clone();
    for k in 0..=10 {
        assert_eq!(quotient_dimension(&r, &[Polynomial::parse(&r, "y").unwrap()], k), 1);
    }
}

#[test]
fn coker_of_twisted_rank_two() {
    // beta = [[x, 0], [0, x^2]] on generators of twists 0 and 1
    let r = GradedRing::standard(&["x"]);
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    let z = Polynomial::zero(&r);
    let e = make_mf(
        &r,
        &p("x^3"),
        sl(&[0, 1]),
        sl(&[2, 2]),
        vec![vec![p("x^2"), z.clone()], vec![z.clone(), p("x")]],
        vec![vec![p("x"), z.clone()], vec![z, p("x^2")]],
    )
    .unwrap();
    let c = coker_presentation(&e).unwrap();
    let expected: Vec<usize> = (-2..=4)
        .map(|k| quotient_dimension(&r, &[p("x")], k) + quotient_dimension(&r, &[p("x^2")], k + 1))
        .collect();
    assert_eq!(c.hilbert_range(-2, 4).unwrap(), expected);
}

#[test]
fn segal_table_for_cubic() {
    let r = GradedRing::standard(&["x", "y", "z"]);
    let l = |a, b| BigradedLabel::new(a, b, 3);
    assert_eq!(segal_canonicalize(l(5, 4)), l(11, 0));
    for a in 0..=2 {
        for a2 in 0..=2 {
            for b in 0..=1 {
                for b2 in 0..=1 {
                    let expect = if b == b2 { 0 } else { monomials(&[1, 1, 1], a2 - a).len() };
                    assert_eq!(segal_hom_dimension(l(a, b), l(a2, b2), &r).unwrap(), expect);
                }
            }
        }
    }
    assert!(matches!(
        segal_hom_dimension(l(0, 0), BigradedLabel::new(0, 1, 4), &r),
        Err(Error::DegreeMismatch(_))
    ));
    assert_eq!(monomial_basis(&r, &gv(2)).unwrap().len(), 6);
}
