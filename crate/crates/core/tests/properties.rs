use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kappa_core::bounds::{kappa_interval, Interval};
use kappa_core::charpoly::char_poly;
use kappa_core::digraph::{Digraph, Orientation};
use kappa_core::spectral::perron_root;
use kappa_core::twist::{apply, apply_monodromy, phi_matrix_for};
use kappa_core::{CurveSystem, IntMatrix, IntPolynomial, RotationDirection, WeightVector};

fn system() -> impl Strategy<Value = CurveSystem> {
    (4u64..=12, prop::bool::ANY).prop_map(|(g, minus)| {
        let dir = if minus { RotationDirection::Minus } else { RotationDirection::Plus };
        CurveSystem::with_rotation(g, dir).unwrap()
    })
}

fn system_and_weights() -> impl Strategy<Value = (CurveSystem, Vec<u64>)> {
    system().prop_flat_map(|s| {
        let n = s.dimension();
        (Just(s), prop::collection::vec(0u64..1_000_000, n))
    })
}

fn square(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(lo..=hi, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monodromy_preserves_cone_and_matches_sequential((sys, w) in system_and_weights()) {
        let w = WeightVector::from_u64(&w);
        let m = phi_matrix_for(&sys);
        let by_matrix = apply(&m, &w).unwrap();
        let by_steps = apply_monodromy(&sys, &w).unwrap();
        prop_assert_eq!(&by_matrix, &by_steps);
        // image dominates the rotated input, so nonzero vectors stay nonzero
        let before: BigInt = w.as_slice().iter().sum();
        let after: BigInt = by_matrix.as_slice().iter().sum();
        prop_assert!(after >= before);
    }

    #[test]
    fn intersection_is_symmetric_and_rotation_invariant(sys in system(), k in -20i64..20) {
        for u in sys.basis() {
            prop_assert_eq!(sys.intersection(u, u), 0);
            for v in sys.basis() {
                let i = sys.intersection(u, v);
                prop_assert_eq!(i, sys.intersection(v, u));
                prop_assert_eq!(i, sys.intersection(sys.rotate(u, k), sys.rotate(v, k)));
            }
        }
    }

    #[test]
    fn orientation_duality(m in square(6, 0, 3), j in 0usize..6) {
        let rows = Digraph::from_matrix(&m, Orientation::Rows).unwrap();
        let cols_t = Digraph::from_matrix(&m.transpose(), Orientation::Columns).unwrap();
        prop_assert_eq!(rows.path_counts(j), cols_t.path_counts(j));
        prop_assert_eq!(rows.edge_count(), m.entry_sum());
        prop_assert_eq!(rows.self_loop_census(), Digraph::from_matrix(&m, Orientation::Columns).unwrap().self_loop_census());
    }

    #[test]
    fn char_poly_of_transpose_and_trace(m in square(7, -50, 50)) {
        let p = char_poly(&m).unwrap();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), m.rows());
        prop_assert_eq!(&p, &char_poly(&m.transpose()).unwrap());
        prop_assert_eq!(p.coeff(m.rows() - 1), -m.trace());
        let det = m.determinant().unwrap();
        let sign = if m.rows() % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        prop_assert_eq!(p.coeff(0), sign * det);
    }

    #[test]
    fn perron_root_transpose_and_row_sum(m in square(5, 1, 9)) {
        let tol = BigRational::new(1.into(), BigInt::from(10u64.pow(10)));
        let a = perron_root(&m, &tol).unwrap();
        let b = perron_root(&m.transpose(), &tol).unwrap();
        prop_assert!(a.width() <= tol);
        prop_assert!(a.lower <= b.upper && b.lower <= a.upper);
        prop_assert!(a.upper <= BigRational::from(m.max_row_sum()));
        let squared = perron_root(&m.mul(&m).unwrap(), &tol).unwrap();
        let lo = &a.lower * &a.lower;
        let hi = &a.upper * &a.upper;
        let slack = &tol * (&hi + BigRational::from(BigInt::from(1)));
        prop_assert!(squared.lower <= &hi + &slack && lo <= &squared.upper + &slack);
    }

    #[test]
    fn polynomial_division_round_trip(
        a in prop::collection::vec(-20i64..20, 1..8),
        b in prop::collection::vec(-20i64..20, 0..5),
    ) {
        let mut b = b;
        b.push(1);
        let a = IntPolynomial::from_i64(&a);
        let b = IntPolynomial::from_i64(&b);
        let prod = a.mul(&b);
        prop_assert!(b.divides(&prod));
        let (q, r) = prod.div_rem_monic(&b).unwrap();
        prop_assert_eq!(q, a);
        prop_assert!(r.is_zero());
    }

    #[test]
    fn kappa_interval_is_monotone(g in 4u64..5000, x in 0.01f64..2.0, w in 0.0f64..0.5) {
        let narrow = kappa_interval(g, &Interval::point(x)).unwrap();
        let wide = kappa_interval(g, &Interval::new(x, x + w)).unwrap();
        prop_assert!(wide.lower.contains_interval(&narrow.lower));
        prop_assert!(narrow.lower.contains(1.0 / ((2 * g - 1) as f64 * x)));
    }
}
