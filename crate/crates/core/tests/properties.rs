use std::f64::consts::PI;

use proptest::prelude::*;

use bkh::amalgam::Exponent;
use bkh::bessel_kingman::{kernel, point_convolution, TestFunction};
use bkh::finite_hypergroup::FiniteHypergroup;
use bkh::quadrature::QuadSpec;
use bkh::report::ReportBuilder;
use bkh::specfun::{bessel_j, bessel_j_norm, bessel_j_zeros};
use bkh::Alpha;

fn alpha() -> impl Strategy<Value = Alpha> {
    (0.5f64..4.0).prop_map(|a| Alpha::new(a).unwrap())
}

fn hypergroup() -> impl Strategy<Value = FiniteHypergroup> {
    prop_oneof![
        (2usize..7).prop_map(|n| FiniteHypergroup::cyclic(n).unwrap()),
        (0.01f64..0.99).prop_map(|a| FiniteHypergroup::two_point(a).unwrap()),
    ]
}

fn vector_for(h: FiniteHypergroup) -> impl Strategy<Value = (FiniteHypergroup, Vec<f64>)> {
    let n = h.size();
    (Just(h), prop::collection::vec(-5.0f64..5.0, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalized_bessel_is_even(a in alpha(), x in 0.0f64..200.0) {
        prop_assert_eq!(bessel_j_norm(&a, x), bessel_j_norm(&a, -x));
    }

    #[test]
    fn normalized_bessel_is_bounded_by_one(a in alpha(), x in 0.0f64..500.0) {
        prop_assert!(bessel_j_norm(&a, x).abs() <= 1.0 + 1e-14);
    }

    #[test]
    fn three_term_recurrence(nu in 1.0f64..6.0, x in 0.5f64..150.0) {
        let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
        let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()), "{lhs} vs {rhs}");
    }

    #[test]
    fn zero_spacing_approaches_pi(nu in 0.5f64..5.0) {
        let zeros = bessel_j_zeros(nu, 40).unwrap();
        let gaps: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
        for g in &gaps {
            prop_assert!(*g >= PI - 1e-9, "gap {g}");
        }
        for w in gaps.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
        for z in &zeros {
            prop_assert!(bessel_j(nu, *z).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_is_symmetric(a in alpha(), x in 0.05f64..10.0, y in 0.05f64..10.0, t in 1e-3f64..0.999) {
        let z = (x - y).abs() + t * (x + y - (x - y).abs());
        prop_assume!(z > 0.0);
        let k = kernel(&a, x, y, z).unwrap();
        let swapped = [kernel(&a, y, x, z).unwrap(), kernel(&a, z, y, x).unwrap(), kernel(&a, x, z, y).unwrap()];
        for s in swapped {
            prop_assert!((k - s).abs() <= 1e-9 * k.abs(), "{k} vs {s}");
        }
    }

    #[test]
    fn point_convolution_is_commutative(a in alpha(), x in 0.0f64..4.0, y in 0.0f64..4.0) {
        let spec = QuadSpec::default();
        let f = TestFunction::bump();
        let xy = point_convolution(&a, x, y, &f, &spec).unwrap();
        let yx = point_convolution(&a, y, x, &f, &spec).unwrap();
        prop_assert!((xy - yx).abs() < 1e-10);
    }

    #[test]
    fn finite_haar_measure_is_invariant((h, f) in hypergroup().prop_flat_map(vector_for), y in 0usize..7) {
        let y = y % h.size();
        let w = h.haar_weights().unwrap();
        let moved = h.discrete_translate(y, &f).unwrap();
        let before: f64 = f.iter().zip(&w).map(|(v, wk)| v * wk).sum();
        let after: f64 = moved.iter().zip(&w).map(|(v, wk)| v * wk).sum();
        prop_assert!((before - after).abs() < 1e-12 * (1.0 + before.abs()));
    }

    #[test]
    fn finite_window_norms_coincide((h, f) in hypergroup().prop_flat_map(vector_for), p in 1.0f64..6.0) {
        let eq = h.norm_equalities(&f, p).unwrap();
        prop_assert!(eq.max_gap() < 1e-12 * (1.0 + eq.lp_norm), "{eq:?}");
    }

    #[test]
    fn conjugate_exponents(p in 1.0f64..1e6) {
        let e = Exponent::new(p).unwrap();
        let c = e.conjugate();
        prop_assert!((e.reciprocal() + c.reciprocal() - 1.0).abs() < 1e-12);
        match (e, c.conjugate()) {
            (Exponent::Finite(a), Exponent::Finite(b)) => prop_assert!((a - b).abs() <= 1e-9 * a),
            (Exponent::Infinite, Exponent::Infinite) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn report_passes_iff_all_margins_hold(
        rows in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, 0.0f64..0.5), 0..12)
    ) {
        let mut b = ReportBuilder::new("young", Some(1.0), 0.1);
        for (i, (lhs, rhs, tol)) in rows.iter().enumerate() {
            if i % 2 == 0 {
                b.close(format!("row {i}"), *lhs, *rhs, *tol);
            } else {
                b.at_most(format!("row {i}"), *lhs, *rhs);
            }
        }
        let r = b.finish();
        let expected = rows.iter().enumerate().all(|(i, (l, r, t))| {
            if i % 2 == 0 { (l - r).abs() <= *t } else { l <= r }
        });
        prop_assert_eq!(r.passed, expected);
        prop_assert_eq!(r.failures().count() == 0, expected);
    }
}

#[test]
fn infinite_exponent_conjugates_to_one() {
    assert_eq!(Exponent::Infinite.conjugate(), Exponent::Finite(1.0));
    assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinite);
}
