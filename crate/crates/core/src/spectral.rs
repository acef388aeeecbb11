//! Certified Perron roots and Perron vectors of nonnegative integer matrices,
//! and root moduli of integer polynomials.
//!
//! The Perron root is enclosed with Collatz-Wielandt quotients: for an
//! irreducible nonnegative `M` and any strictly positive `z`,
//!
//! ```text
//! min_i (Mz)_i / z_i  <=  rho(M)  <=  max_i (Mz)_i / z_i
//! ```
//!
//! The quotients are evaluated exactly on an integer vector. Floating point
//! only supplies a good starting vector; it never enters the certificate.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::MIN_GENUS;
use crate::digraph;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;

/// Default enclosure width.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(10)))
}

/// The closed-form characteristic polynomial
/// `x^(4g-4) - x^(4g-5) - x^(2g-1) - 10x^(2g-2) - x^(2g-3) - x + 1`.
pub fn expected_char_poly(genus: u64) -> Result<IntPolynomial> {
    if genus < MIN_GENUS {
        return Err(Error::GenusTooSmall {
            genus,
            min: MIN_GENUS,
        });
    }
    let g = genus as usize;
    Ok(IntPolynomial::from_terms(&[
        (4 * g - 4, 1),
        (4 * g - 5, -1),
        (2 * g - 1, -1),
        (2 * g - 2, -10),
        (2 * g - 3, -1),
        (1, -1),
        (0, 1),
    ]))
}

/// Converts a positive decimal tolerance to an exact rational.
pub fn tolerance_from_f64(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance);
    }
    BigRational::from_float(tol).ok_or(Error::NonPositiveTolerance)
}

#[derive(Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl RootEnclosure {
    pub fn point(x: BigRational) -> Self {
        RootEnclosure {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// `self` lies inside `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo <= &self.lower && &self.upper <= hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigInt::from(2)
    }

    /// Endpoints rounded outward to `f64`.
    pub fn to_f64_outward(&self) -> (f64, f64) {
        let lo = rational_to_f64(&self.lower);
        let hi = rational_to_f64(&self.upper);
        (lo.next_down(), hi.next_up())
    }

    pub fn lower_f64(&self) -> f64 {
        rational_to_f64(&self.lower)
    }

    pub fn upper_f64(&self) -> f64 {
        rational_to_f64(&self.upper)
    }

    pub fn width_f64(&self) -> f64 {
        rational_to_f64(&self.width())
    }

    /// Enclosure of `log(lambda)`, rounded outward.
    pub fn ln_outward(&self) -> (f64, f64) {
        let (lo, hi) = self.to_f64_outward();
        // two ulps cover the libm error of ln
        (lo.ln().next_down().next_down(), hi.ln().next_up().next_up())
    }
}

impl fmt::Debug for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.15}, {:.15}] (width {:.3e})",
            self.lower_f64(),
            self.upper_f64(),
            self.width_f64()
        )
    }
}

impl Serialize for RootEnclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EnclosureRepr {
            lower: self.lower.to_string(),
            upper: self.upper.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootEnclosure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = EnclosureRepr::deserialize(d)?;
        let parse = |s: &str| {
            s.parse::<BigRational>()
                .map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}")))
        };
        Ok(RootEnclosure {
            lower: parse(&r.lower)?,
            upper: parse(&r.upper)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct EnclosureRepr {
    lower: String,
    upper: String,
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_perron_input(m: &IntMatrix, tol: &BigRational) -> Result<usize> {
    let n = m.ensure_square()?;
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    m.nonnegative()?;
    if n == 0 || !digraph::matrix_is_irreducible(m) {
        return Err(Error::Reducible);
    }
    Ok(n)
}

/// Certified enclosure of the spectral radius of an irreducible nonnegative
/// integer matrix, of width at most `tol`.
pub fn perron_root(m: &IntMatrix, tol: &BigRational) -> Result<RootEnclosure> {
    check_perron_input(m, tol)?;
    certified_vector(m, tol).map(|(_, enc)| enc)
}

const MAX_EXACT_STEPS: usize = 20_000;
// working precision for rescaled integer iterates
const ITERATE_BITS: u64 = 192;

/// Positive integer vector whose Collatz-Wielandt quotients enclose the
/// Perron root to within `tol`.
fn certified_vector(m: &IntMatrix, tol: &BigRational) -> Result<(Vec<BigInt>, RootEnclosure)> {
    let sparse = m.sparse_rows();
    let float_v = float_perron_vector(m);
    let vmax = float_v.iter().cloned().fold(0.0f64, f64::max);
    let scale = 2f64.powi(62);
    let mut z: Vec<BigInt> = float_v
        .iter()
        .map(|&x| {
            let s = (x / vmax * scale).round();
            if s.is_finite() && s >= 1.0 {
                BigInt::from(s as u64)
            } else {
                BigInt::one()
            }
        })
        .collect();

    for _ in 0..MAX_EXACT_STEPS {
        let mz = sparse_mul(&sparse, &z);
        let enc = collatz_wielandt(&z, &mz);
        if &enc.width() <= tol {
            return Ok((z, enc));
        }
        // step with M + I so periodic matrices still converge
        z = mz.into_iter().zip(&z).map(|(a, b)| a + b).collect();
        rescale(&mut z);
    }
    Err(Error::NoConvergence {
        what: "Collatz-Wielandt refinement",
        iterations: MAX_EXACT_STEPS,
    })
}

fn sparse_mul(rows: &[Vec<(usize, BigInt)>], z: &[BigInt]) -> Vec<BigInt> {
    rows.iter()
        .map(|row| row.iter().map(|(j, a)| a * &z[*j]).sum())
        .collect()
}

fn collatz_wielandt(z: &[BigInt], mz: &[BigInt]) -> RootEnclosure {
    // quotients compared by cross-multiplication; only the extremes are reduced
    let mut lo = 0;
    let mut hi = 0;
    for i in 1..z.len() {
        if &mz[i] * &z[lo] < &mz[lo] * &z[i] {
            lo = i;
        }
        if &mz[i] * &z[hi] > &mz[hi] * &z[i] {
            hi = i;
        }
    }
    RootEnclosure {
        lower: BigRational::new(mz[lo].clone(), z[lo].clone()),
        upper: BigRational::new(mz[hi].clone(), z[hi].clone()),
    }
}

fn rescale(z: &mut [BigInt]) {
    let bits = z.iter().map(|a| a.bits()).max().unwrap_or(0);
    if bits > ITERATE_BITS {
        let shift = bits - ITERATE_BITS;
        for a in z.iter_mut() {
            let s: BigInt = &*a >> shift;
            *a = if s.is_zero() { BigInt::one() } else { s };
        }
    }
}

/// Floating-point estimate of the Perron vector: power iteration on `M + I`
/// followed by a few steps of shifted inverse iteration. Entries are
/// positive (nonpositive ones are clamped to a tiny positive value).
pub fn float_perron_vector(m: &IntMatrix) -> Vec<f64> {
    let a = m.to_f64_rows();
    let n = a.len();
    let sparse: Vec<Vec<(usize, f64)>> = m
        .sparse_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|(j, x)| (j, x.to_f64().unwrap_or(f64::MAX))).collect())
        .collect();
    let matvec = |v: &[f64]| -> Vec<f64> {
        sparse
            .iter()
            .map(|row| row.iter().map(|&(j, x)| x * v[j]).sum())
            .collect()
    };
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let mv = matvec(&v);
        let w: Vec<f64> = mv.iter().zip(&v).map(|(x, y)| x + y).collect();
        let s: f64 = w.iter().sum();
        if !(s > 0.0) || !s.is_finite() {
            break;
        }
        let next: Vec<f64> = w.iter().map(|x| x / s).collect();
        let delta = next
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        v = next;
        lambda = s - 1.0;
        if delta < 1e-15 {
            break;
        }
    }

    // shifted inverse iteration
    let shift = lambda * (1.0 + 1e-12) + 1e-300;
    for _ in 0..4 {
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= shift;
        }
        let Some(w) = lu_solve(shifted, v.clone()) else {
            break;
        };
        let s: f64 = w.iter().sum();
        if !s.is_finite() || s == 0.0 {
            break;
        }
        let next: Vec<f64> = w.iter().map(|x| x / s).collect();
        if next.iter().any(|x| !x.is_finite()) {
            break;
        }
        v = next;
    }
    let vmax = v.iter().cloned().fold(0.0f64, f64::max);
    v.iter()
        .map(|&x| if x > 0.0 { x } else { vmax * 1e-300 })
        .collect()
}

fn lu_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[piv][k] == 0.0 {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Positive Perron vector normalized to sum 1, together with its eigenvalue
/// enclosure and the exact residual `max_i |(Mv)_i - lambda v_i|` at the
/// enclosure midpoint.
#[derive(Clone, Debug)]
pub struct PerronVector {
    pub weights: Vec<BigRational>,
    pub eigenvalue: RootEnclosure,
    pub residual: BigRational,
}

impl PerronVector {
    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(Signed::is_positive)
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational_to_f64).collect()
    }
}

/// Perron vector of a primitive nonnegative integer matrix with
/// `residual <= tol * lambda`.
pub fn perron_vector(m: &IntMatrix, tol: &BigRational) -> Result<PerronVector> {
    check_perron_input(m, tol)?;
    let period = digraph::matrix_period(m);
    if period != 1 {
        return Err(Error::NotPrimitive { period });
    }
    // every row of an irreducible integer matrix sums to at least 1, so
    // lambda >= 1 and residual <= width * max_i v_i <= tol * lambda
    let (z, enc) = certified_vector(m, tol)?;
    let total: BigInt = z.iter().sum();
    let weights: Vec<BigRational> = z
        .iter()
        .map(|a| BigRational::new(a.clone(), total.clone()))
        .collect();
    let lambda = enc.midpoint();
    let mz = m.mul_vec(&z)?;
    let residual = mz
        .iter()
        .zip(&z)
        .map(|(a, b)| {
            (BigRational::new(a.clone(), total.clone()) - &lambda * BigRational::new(b.clone(), total.clone())).abs()
        })
        .fold(BigRational::zero(), |acc, r| if r > acc { r } else { acc });
    Ok(PerronVector {
        weights,
        eigenvalue: enc,
        residual,
    })
}

/// Refines a root of `p` inside `[lower, upper]` by exact bisection. The
/// endpoints must bracket a sign change (or hit a root).
pub fn bisect_root(
    p: &IntPolynomial,
    lower: &BigRational,
    upper: &BigRational,
    tol: &BigRational,
) -> Result<Option<RootEnclosure>> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let mut lo = lower.clone();
    let mut hi = upper.clone();
    let mut s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == 0 {
        return Ok(Some(RootEnclosure::point(lo)));
    }
    if s_hi == 0 {
        return Ok(Some(RootEnclosure::point(hi)));
    }
    if s_lo == s_hi {
        return Ok(None);
    }
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / BigInt::from(2);
        let s = p.sign_at(&mid);
        if s == 0 {
            return Ok(Some(RootEnclosure::point(mid)));
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    Ok(Some(RootEnclosure {
        lower: lo,
        upper: hi,
    }))
}

/// `true` if `p` changes sign across the enclosure or vanishes at an endpoint.
pub fn brackets_root(p: &IntPolynomial, enc: &RootEnclosure) -> bool {
    let a = p.sign_at(&enc.lower);
    let b = p.sign_at(&enc.upper);
    a == 0 || b == 0 || a != b
}

/// An approximate root with a radius such that the union of all disks
/// contains every root of the polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDisk {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl RootDisk {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.center().norm()
    }
}

/// All complex roots of a monic integer polynomial by Aberth-Ehrlich
/// iteration, with inclusion radii `n |p(z_i) / prod_{j != i}(z_i - z_j)|`
/// (inflated by a bound on the rounding error of evaluating `p`).
pub fn polynomial_roots(p: &IntPolynomial) -> Result<Vec<RootDisk>> {
    if !p.is_monic() {
        return Err(Error::Parse("root finding requires a monic polynomial".into()));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    let dcoeffs: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    // Fujiwara bound on root moduli
    let bound = (0..n)
        .map(|k| (coeffs[k].abs()).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();

    let horner = |cs: &[f64], x: Complex64| -> Complex64 {
        cs.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    };

    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pz = horner(&coeffs, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let dpz = horner(&dcoeffs, z[i]);
            let ratio = pz / dpz;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    let eps = f64::EPSILON;
    let gamma = 4.0 * (2 * n + 2) as f64 * eps;
    let disks = (0..n)
        .map(|i| {
            let x = z[i];
            let pz = horner(&coeffs, x);
            let err = gamma * horner(&abs_coeffs, Complex64::new(x.norm(), 0.0)).re;
            let denom: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (x - z[j]).norm())
                .product();
            let w = (pz.norm() + err) / denom;
            let r = if w.is_finite() {
                n as f64 * w * (1.0 + 1e-10)
            } else {
                f64::INFINITY
            };
            RootDisk {
                re: x.re,
                im: x.im,
                radius: r,
            }
        })
        .collect();
    Ok(disks)
}

/// Result of comparing all root moduli of a polynomial with an enclosure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominantRootCheck {
    /// Certified upper bound on the largest root modulus.
    pub max_modulus_upper: f64,
    /// Certified lower bound on the largest root modulus (from an isolated
    /// inclusion disk); zero if no disk is isolated.
    pub max_modulus_lower: f64,
    pub max_radius: f64,
    pub holds: bool,
}

impl DominantRootCheck {
    pub fn max_modulus(&self) -> f64 {
        0.5 * (self.max_modulus_lower + self.max_modulus_upper)
    }
}

/// Checks that every root of `p` has modulus at most `enc.upper + tol`.
/// Fails (returns `holds = false`) if the roots could not be resolved to
/// within `tol`.
pub fn dominant_root_check(p: &IntPolynomial, enc: &RootEnclosure, tol: f64) -> Result<DominantRootCheck> {
    // repeated roots slow Aberth down and inflate inclusion radii
    let disks = polynomial_roots(&p.squarefree_part())?;
    let max_modulus_upper = disks
        .iter()
        .map(|d| d.modulus() + d.radius)
        .fold(0.0f64, f64::max);
    let max_radius = disks.iter().map(|d| d.radius).fold(0.0f64, f64::max);
    let isolated = |i: usize| {
        let di = &disks[i];
        disks.iter().enumerate().all(|(j, dj)| {
            j == i || (di.center() - dj.center()).norm() > di.radius + dj.radius
        })
    };
    let max_modulus_lower = (0..disks.len())
        .filter(|&i| isolated(i))
        .map(|i| (disks[i].modulus() - disks[i].radius).max(0.0))
        .fold(0.0f64, f64::max);
    let holds = max_radius <= tol && max_modulus_upper <= enc.upper_f64().next_up() + tol;
    Ok(DominantRootCheck {
        max_modulus_upper,
        max_modulus_lower,
        max_radius,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn one_by_one() {
        let enc = perron_root(&m(&[vec![2]]), &default_tolerance()).unwrap();
        assert_eq!(enc, RootEnclosure::point(q(2, 1)));
    }

    #[test]
    fn permutation_has_radius_one() {
        let p = m(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        let enc = perron_root(&p, &default_tolerance()).unwrap();
        assert!(enc.contains(&q(1, 1)));
    }

    #[test]
    fn golden_ratio() {
        let fib = m(&[vec![1, 1], vec![1, 0]]);
        let tol = q(1, 1_000_000_000_000);
        let enc = perron_root(&fib, &tol).unwrap();
        assert!(enc.width() <= tol);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(enc.lower_f64() <= phi + 1e-15 && phi - 1e-15 <= enc.upper_f64());
        // the enclosure brackets the root of x^2 - x - 1
        assert!(brackets_root(&IntPolynomial::from_i64(&[-1, -1, 1]), &enc));
    }

    #[test]
    fn perron_root_errors() {
        let tol = default_tolerance();
        assert_eq!(
            perron_root(&IntMatrix::identity(2), &tol).unwrap_err(),
            Error::Reducible
        );
        assert!(matches!(
            perron_root(&m(&[vec![1, -1], vec![1, 1]]), &tol).unwrap_err(),
            Error::NegativeEntry { .. }
        ));
        assert_eq!(
            perron_root(&m(&[vec![1]]), &BigRational::zero()).unwrap_err(),
            Error::NonPositiveTolerance
        );
    }

    #[test]
    fn symmetric_vector() {
        let v = perron_vector(&m(&[vec![1, 1], vec![1, 1]]), &default_tolerance()).unwrap();
        assert_eq!(v.weights, vec![q(1, 2), q(1, 2)]);
        assert!(v.residual.is_zero());
    }

    #[test]
    fn vector_needs_primitivity() {
        let swap = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            perron_vector(&swap, &default_tolerance()).unwrap_err(),
            Error::NotPrimitive { period: 2 }
        );
    }

    #[test]
    fn bisection() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let tol = q(1, 1 << 40);
        let enc = bisect_root(&p, &q(1, 1), &q(2, 1), &tol).unwrap().unwrap();
        assert!(enc.width() <= tol);
        assert!((enc.lower_f64() - 2f64.sqrt()).abs() < 1e-11);
        assert!(bisect_root(&p, &q(2, 1), &q(3, 1), &tol).unwrap().is_none());
    }

    #[test]
    fn dominant_roots() {
        let enc2 = RootEnclosure::point(q(2, 1));
        let c = dominant_root_check(&IntPolynomial::from_i64(&[2, -3, 1]), &enc2, 1e-9).unwrap();
        assert!(c.holds, "{c:?}");
        assert!((c.max_modulus() - 2.0).abs() < 1e-9);

        let enc1 = RootEnclosure::point(q(1, 1));
        let c = dominant_root_check(&IntPolynomial::from_i64(&[4, 0, 1]), &enc1, 1e-9).unwrap();
        assert!(!c.holds);
        assert!((c.max_modulus() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn roots_of_cyclotomic_product() {
        // (x^3 - 1)^2 has double roots on the unit circle
        let p = IntPolynomial::from_i64(&[-1, 0, 0, 1]).pow(2);
        let disks = polynomial_roots(&p).unwrap();
        assert_eq!(disks.len(), 6);
        for d in &disks {
            assert!((d.modulus() - 1.0).abs() <= d.radius + 1e-7, "{d:?}");
            assert!(d.radius < 1e-5);
        }
    }

    #[test]
    fn enclosure_json() {
        let enc = RootEnclosure {
            lower: q(3, 2),
            upper: q(7, 4),
        };
        let s = serde_json::to_string(&enc).unwrap();
        assert_eq!(s, r#"{"lower":"3/2","upper":"7/4"}"#);
        let back: RootEnclosure = serde_json::from_str(&s).unwrap();
        assert_eq!(back, enc);
    }

    #[test]
    fn expected_polynomial_shape() {
        assert_eq!(
            expected_char_poly(9).unwrap().to_string(),
            "x^32 - x^31 - x^17 - 10x^16 - x^15 - x + 1"
        );
        assert_eq!(
            expected_char_poly(4).unwrap().to_string(),
            "x^12 - x^11 - x^7 - 10x^6 - x^5 - x + 1"
        );
        for g in 4..40 {
            let p = expected_char_poly(g).unwrap();
            assert!(p.is_palindromic() && p.is_monic());
            assert_eq!(p.degree(), (4 * g - 4) as usize);
        }
        assert!(expected_char_poly(3).is_err());
    }
}
