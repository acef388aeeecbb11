//! Independent reference computations checked against the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use kappa_core::charpoly::char_poly;
use kappa_core::digraph::{matrix_is_irreducible, primitivity_exponent, Digraph, Orientation};
use kappa_core::spectral::{
    bisect_root, default_tolerance, dominant_root_check, expected_char_poly, perron_root, perron_vector,
};
use kappa_core::twist::{phi_matrix, phi_matrix_for};
use kappa_core::{CurveSystem, IntMatrix, IntPolynomial};

/// Faddeev-LeVerrier over the rationals: `c_{n-k} = -tr(M M_k) / k`.
fn leverrier(m: &IntMatrix) -> IntPolynomial {
    let n = m.rows();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for k in 1..=n {
        let amk = mul(&a, &mk);
        let tr = (0..n).fold(BigRational::zero(), |s, i| s + &amk[i][i]);
        let c = -tr / BigRational::from(BigInt::from(k));
        coeffs[n - k] = c.clone();
        mk = amk;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    IntPolynomial::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect(),
    )
}

/// Plain power iteration in floating point.
fn float_radius(m: &IntMatrix) -> f64 {
    let a = m.to_f64_rows();
    let n = a.len();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let w: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * v[j]).sum::<f64>() + v[i])
            .collect();
        let s: f64 = w.iter().sum::<f64>() / v.iter().sum::<f64>();
        lambda = s - 1.0;
        let norm: f64 = w.iter().sum();
        v = w.iter().map(|x| x / norm).collect();
    }
    lambda
}

#[test]
fn char_poly_matches_leverrier_on_phi() {
    for g in 4..=8 {
        let m = phi_matrix(g).unwrap();
        assert_eq!(char_poly(&m).unwrap(), leverrier(&m), "g = {g}");
    }
}

#[test]
fn char_poly_matches_leverrier_on_dense_signed_matrices() {
    let rows: Vec<Vec<i64>> = (0..7)
        .map(|i| (0..7).map(|j| ((i * 7 + j) * 37 % 23) as i64 - 11).collect())
        .collect();
    let m = IntMatrix::from_rows(&rows).unwrap();
    assert_eq!(char_poly(&m).unwrap(), leverrier(&m));
}

#[test]
fn phi_constant_and_trace_terms() {
    for g in 4..=20 {
        let p = char_poly(&phi_matrix(g).unwrap()).unwrap();
        assert_eq!(p.coeff(0), BigInt::one());
        assert_eq!(p.coeff(p.degree() - 1), BigInt::from(-1));
        assert!(p.is_palindromic());
    }
}

#[test]
fn closed_form_divides_char_poly_at_doubled_genus() {
    for g in 4..=12 {
        let q = char_poly(&phi_matrix(2 * g - 1).unwrap()).unwrap();
        assert!(expected_char_poly(g).unwrap().divides(&q), "g = {g}");
    }
}

#[test]
fn perron_root_agrees_with_power_iteration() {
    for g in [4, 5, 9, 15] {
        let m = phi_matrix(g).unwrap();
        let enc = perron_root(&m, &default_tolerance()).unwrap();
        let f = float_radius(&m);
        assert!(enc.lower_f64() - 1e-9 <= f && f <= enc.upper_f64() + 1e-9, "g = {g}: {f} vs {enc:?}");
    }
}

#[test]
fn perron_root_agrees_with_bisection() {
    for g in [5, 9, 13] {
        let m = phi_matrix(g).unwrap();
        let p = char_poly(&m).unwrap();
        let tol = default_tolerance();
        let enc = perron_root(&m, &tol).unwrap();
        let hi = BigRational::from(m.max_row_sum());
        let lo = enc.lower.clone() - &tol;
        let bis = bisect_root(&p, &lo, &hi, &tol).unwrap().expect("sign change");
        assert!(bis.lower <= enc.upper && enc.lower <= bis.upper);
    }
}

#[test]
fn perron_root_at_five_lies_in_lemma_range() {
    let enc = perron_root(&phi_matrix(5).unwrap(), &default_tolerance()).unwrap();
    // 16^(1/8) and 29^(1/3)
    assert!(enc.lower_f64() >= 16f64.powf(0.125));
    assert!(enc.upper_f64() <= 29f64.powf(1.0 / 3.0));
}

#[test]
fn perron_root_matches_own_char_poly_roots() {
    for g in [5, 8, 12] {
        let m = phi_matrix(g).unwrap();
        let enc = perron_root(&m, &default_tolerance()).unwrap();
        let check = dominant_root_check(&char_poly(&m).unwrap(), &enc, 1e-6).unwrap();
        assert!(check.holds);
        assert!((check.max_modulus() - enc.lower_f64()).abs() < 1e-6);
    }
}

#[test]
fn perron_vector_at_nine_is_positive() {
    let v = perron_vector(&phi_matrix(9).unwrap(), &default_tolerance()).unwrap();
    assert_eq!(v.weights.len(), 32);
    assert!(v.is_strictly_positive());
    let total: BigRational = v.weights.iter().sum();
    assert!(total.is_one());
    assert!(v.residual <= default_tolerance() * &v.eigenvalue.upper);
}

#[test]
fn path_counts_are_row_sums_of_powers() {
    let m = phi_matrix(7).unwrap();
    for orientation in [Orientation::Columns, Orientation::Rows] {
        let g = Digraph::from_matrix(&m, orientation).unwrap();
        for j in 0..6 {
            let pow = g.adjacency().pow(j as u32).unwrap();
            assert_eq!(g.path_counts(j), pow.row_sums());
        }
    }
    // columns orientation counts are column sums of M^j
    let g = Digraph::from_matrix(&m, Orientation::Columns).unwrap();
    assert_eq!(g.path_counts(5), m.pow(5).unwrap().column_sums());
}

/// Reachability by exact length, recomputed from boolean matrix powers.
fn boolean_cover(m: &IntMatrix, v: usize, k: usize) -> Vec<usize> {
    let p = m.pow(k as u32).unwrap();
    (0..m.rows()).filter(|&u| p.get(u, v).is_positive()).collect()
}

#[test]
fn exact_length_cover_matches_matrix_powers() {
    let sys = CurveSystem::new(6).unwrap();
    let m = phi_matrix_for(&sys);
    let graph = Digraph::for_curves(&sys, &m, Orientation::Columns).unwrap();
    let a1 = sys.position(sys.a(1));
    for k in 0..12 {
        let cover: Vec<usize> = graph.exact_length_cover(a1, k).into_iter().collect();
        assert_eq!(cover, boolean_cover(&m, a1, k), "k = {k}");
    }
}

#[test]
fn primitivity_exponent_matches_brute_force() {
    for g in 4..=9 {
        let m = phi_matrix(g).unwrap();
        assert!(matrix_is_irreducible(&m));
        let r = primitivity_exponent(&m, 4 * g as usize).unwrap().unwrap();
        assert!(m.pow(r as u32).unwrap().is_strictly_positive());
        assert!(!m.pow(r as u32 - 1).unwrap().is_strictly_positive());
        assert!(r <= (2 * g - 1) as usize);
    }
}

#[test]
fn twist_matrix_matches_pairing_formula() {
    // mu + i(mu, x) x, evaluated entry by entry
    let sys = CurveSystem::new(5).unwrap();
    for x in sys.basis() {
        let t = kappa_core::twist::twist_map(&sys, x);
        for u in sys.basis() {
            for v in sys.basis() {
                let mut want = i64::from(u == v);
                if u == x {
                    want += i64::from(sys.intersection(v, x));
                }
                assert_eq!(
                    t.get(sys.position(u), sys.position(v)).to_i64().unwrap(),
                    want
                );
            }
        }
    }
}
