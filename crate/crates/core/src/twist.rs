//! Dehn twists and the rotation acting on the cone of nonnegative weights
//! spanned by the curve family.
//!
//! Matrices use the column convention: column `u` holds the image of the
//! basis vector `u`. Twisting along `x` (either handedness) sends a weight
//! vector `mu` to `mu + i(mu, x) x`, where `i(mu, x) = sum_v mu_v i(v, x)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{CurveId, CurveSystem};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Nonnegative integer weights on the curve basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigInt>);

impl WeightVector {
    pub fn new(weights: Vec<BigInt>) -> Result<Self> {
        if let Some(index) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight { index });
        }
        Ok(WeightVector(weights))
    }

    pub fn zeros(dim: usize) -> Self {
        WeightVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(sys: &CurveSystem, u: CurveId) -> Self {
        let mut w = Self::zeros(sys.dimension());
        w.0[sys.position(u)] = BigInt::from(1);
        w
    }

    pub fn from_u64(weights: &[u64]) -> Self {
        WeightVector(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn get(&self, sys: &CurveSystem, u: CurveId) -> &BigInt {
        &self.0[sys.position(u)]
    }

    /// `true` if every coordinate is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|w| w.is_positive())
    }

    /// Nonzero coordinates labelled by curve.
    pub fn support(&self, sys: &CurveSystem) -> Vec<(CurveId, BigInt)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (sys.curve_at(p), w.clone()))
            .collect()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "WeightVector({})", parts.join(", "))
    }
}

/// One generator of the mapping class used to build the monodromy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// Left-handed twist along the curve.
    Twist(CurveId),
    /// Inverse (right-handed) twist along the curve.
    InverseTwist(CurveId),
    /// The order `g - 1` rotation.
    Rotation,
}

/// The word for `rho . T_{a0} . T_{b1} . T_{c0} . T_{d0}^{-1}`, listed in the
/// order the factors act (rightmost first).
pub fn monodromy_word(sys: &CurveSystem) -> [Generator; 5] {
    [
        Generator::InverseTwist(sys.d(0)),
        Generator::Twist(sys.c(0)),
        Generator::Twist(sys.b(1)),
        Generator::Twist(sys.a(0)),
        Generator::Rotation,
    ]
}

/// `i(mu, x)` for a weight vector `mu`.
pub fn pairing(sys: &CurveSystem, mu: &[BigInt], x: CurveId) -> BigInt {
    sys.neighbours(x)
        .into_iter()
        .map(|(v, w)| &mu[sys.position(v)] * BigInt::from(w))
        .sum()
}

/// Matrix of the twist along `x` on the weight cone: identity plus the
/// rank-one update putting `i(v, x)` in row `x`, column `v`.
pub fn twist_map(sys: &CurveSystem, x: CurveId) -> IntMatrix {
    let x = sys.curve(x.family, x.index as i64);
    let mut m = IntMatrix::identity(sys.dimension());
    let row = sys.position(x);
    for (v, w) in sys.neighbours(x) {
        m.add_to(row, sys.position(v), &BigInt::from(w));
    }
    m
}

/// Permutation matrix of one rotation step.
pub fn rotation_map(sys: &CurveSystem) -> IntMatrix {
    let n = sys.dimension();
    let mut m = IntMatrix::zeros(n, n);
    for u in sys.basis() {
        m.set(sys.position(sys.rotate(u, 1)), sys.position(u), BigInt::from(1));
    }
    m
}

pub fn generator_map(sys: &CurveSystem, gen: Generator) -> IntMatrix {
    match gen {
        Generator::Twist(x) | Generator::InverseTwist(x) => twist_map(sys, x),
        Generator::Rotation => rotation_map(sys),
    }
}

/// Transition matrix of the monodromy for the given curve system.
pub fn phi_matrix_for(sys: &CurveSystem) -> IntMatrix {
    monodromy_word(sys)
        .iter()
        .fold(IntMatrix::identity(sys.dimension()), |acc, &gen| {
            generator_map(sys, gen)
                .mul(&acc)
                .expect("generator maps share the basis dimension")
        })
}

/// Transition matrix of the monodromy at genus `g`, rotation incrementing
/// indices.
pub fn phi_matrix(genus: u64) -> Result<IntMatrix> {
    Ok(phi_matrix_for(&CurveSystem::new(genus)?))
}

/// Exact matrix-vector product.
pub fn apply(m: &IntMatrix, w: &WeightVector) -> Result<WeightVector> {
    let out = m.mul_vec(w.as_slice())?;
    WeightVector::new(out)
}

/// Applies one generator directly from the intersection pairing, without
/// building a matrix.
pub fn apply_generator(sys: &CurveSystem, gen: Generator, w: &WeightVector) -> Result<WeightVector> {
    if w.dim() != sys.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sys.dimension(),
            got: w.dim(),
        });
    }
    match gen {
        Generator::Twist(x) | Generator::InverseTwist(x) => {
            let mut out = w.as_slice().to_vec();
            let t = pairing(sys, w.as_slice(), x);
            out[sys.position(x)] += t;
            Ok(WeightVector(out))
        }
        Generator::Rotation => {
            let mut out = vec![BigInt::zero(); sys.dimension()];
            for (p, weight) in w.as_slice().iter().enumerate() {
                out[sys.position(sys.rotate(sys.curve_at(p), 1))] = weight.clone();
            }
            Ok(WeightVector(out))
        }
    }
}

/// Applies the monodromy by running its word generator by generator.
pub fn apply_monodromy(sys: &CurveSystem, w: &WeightVector) -> Result<WeightVector> {
    monodromy_word(sys)
        .iter()
        .try_fold(w.clone(), |acc, &gen| apply_generator(sys, gen, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::RotationDirection;

    fn sys(g: u64) -> CurveSystem {
        CurveSystem::new(g).unwrap()
    }

    fn support_names(s: &CurveSystem, w: &WeightVector) -> Vec<(String, i64)> {
        w.support(s)
            .into_iter()
            .map(|(c, v)| (c.to_string(), i64::try_from(v).unwrap()))
            .collect()
    }

    #[test]
    fn twist_examples() {
        let s = sys(6);
        let img = apply(&twist_map(&s, s.d(0)), &WeightVector::unit(&s, s.a(0))).unwrap();
        assert_eq!(support_names(&s, &img), [("a0".into(), 1), ("d0".into(), 1)]);

        let img = apply(&twist_map(&s, s.c(0)), &WeightVector::unit(&s, s.d(0))).unwrap();
        assert_eq!(support_names(&s, &img), [("c0".into(), 2), ("d0".into(), 1)]);

        let img = apply(&twist_map(&s, s.a(0)), &WeightVector::unit(&s, s.c(1))).unwrap();
        assert_eq!(img, WeightVector::unit(&s, s.c(1)));
    }

    #[test]
    fn twist_maps_are_unipotent() {
        let s = sys(5);
        for x in s.basis() {
            assert_eq!(twist_map(&s, x).determinant().unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn rotation_has_order_g_minus_one() {
        for g in 4..=9 {
            let s = sys(g);
            let r = rotation_map(&s);
            let n = s.dimension();
            for k in 1..(g - 1) as u32 {
                assert_ne!(r.pow(k).unwrap(), IntMatrix::identity(n));
            }
            assert_eq!(r.pow((g - 1) as u32).unwrap(), IntMatrix::identity(n));
            assert_eq!(r.determinant().unwrap(), BigInt::from(1));
            let img = apply(&r, &WeightVector::unit(&s, s.a(0))).unwrap();
            assert_eq!(img, WeightVector::unit(&s, s.a(1)));
        }
    }

    #[test]
    fn a1_column() {
        for g in 4..=10 {
            let s = sys(g);
            let m = phi_matrix_for(&s);
            let img = apply(&m, &WeightVector::unit(&s, s.a(1))).unwrap();
            let mut expected = WeightVector::zeros(s.dimension()).into_inner();
            expected[s.position(s.a(1))] = 1.into();
            expected[s.position(s.a(2))] = 1.into();
            expected[s.position(s.b(2))] = 1.into();
            expected[s.position(s.c(1))] = 2.into();
            expected[s.position(s.d(1))] = 1.into();
            assert_eq!(img.into_inner(), expected, "g = {g}");
        }
    }

    #[test]
    fn a2_column_is_rotated_unit() {
        for g in 5..=10 {
            let s = sys(g);
            let img = apply(&phi_matrix_for(&s), &WeightVector::unit(&s, s.a(2))).unwrap();
            assert_eq!(img, WeightVector::unit(&s, s.a(3)));
        }
    }

    #[test]
    fn trace_and_determinant() {
        for g in 4..=12 {
            let m = phi_matrix(g).unwrap();
            assert_eq!(m.trace(), BigInt::from(1));
            assert_eq!(m.determinant().unwrap(), BigInt::from(1));
            m.nonnegative().unwrap();
        }
        let minus = CurveSystem::with_rotation(7, RotationDirection::Minus).unwrap();
        assert_eq!(phi_matrix_for(&minus).determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn a0_commutes_with_b1_c0() {
        for g in 4..=8 {
            let s = sys(g);
            let ta = twist_map(&s, s.a(0));
            let tbc = twist_map(&s, s.b(1)).mul(&twist_map(&s, s.c(0))).unwrap();
            assert_eq!(ta.mul(&tbc).unwrap(), tbc.mul(&ta).unwrap());
        }
    }

    #[test]
    fn apply_rejects_bad_dimension() {
        let s = sys(4);
        let w = WeightVector::zeros(3);
        assert!(apply(&phi_matrix_for(&s), &w).is_err());
        assert!(apply_monodromy(&s, &w).is_err());
        assert!(WeightVector::new(vec![BigInt::from(-1)]).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let w = WeightVector::from_u64(&[3, 0, 7]);
        assert_eq!(apply(&IntMatrix::identity(3), &w).unwrap(), w);
    }
}
