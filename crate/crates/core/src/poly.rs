//! Integer polynomials in one variable, stored by ascending degree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    // coeffs[k] is the coefficient of x^k; no trailing zeros
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds `sum c x^e` from `(exponent, coefficient)` terms; repeated
    /// exponents add up.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let deg = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for &(e, c) in terms {
            coeffs[e] += c;
        }
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Coefficient list equals its own reversal.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if !divisor.is_monic() {
            return Err(Error::Parse("divisor must be monic".into()));
        }
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other
            .div_rem_monic(self)
            .is_ok_and(|(_, r)| r.is_zero())
    }

    pub fn derivative(&self) -> IntPolynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder: `lc(d)^k * self mod d` with integer arithmetic.
    fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let lr = r.leading();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = Self::new(next).primitive_part();
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Exact quotient by a divisor of this polynomial over the integers.
    pub fn div_exact(&self, d: &IntPolynomial) -> Result<IntPolynomial> {
        if d.is_zero() {
            return Err(Error::Parse("division by zero polynomial".into()));
        }
        let dd = d.degree();
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.degree() < dd {
            return Err(Error::Parse("divisor does not divide".into()));
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % &lc).is_zero() {
                return Err(Error::Parse("divisor does not divide".into()));
            }
            let c = top / &lc;
            for (i, x) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * x;
            }
            quot[k] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::Parse("divisor does not divide".into()));
        }
        Ok(Self::new(quot))
    }

    /// Product of the distinct irreducible factors: same roots, all simple.
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.is_zero() || self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Sign of `p(x)` at a rational point, computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings(coeffs: &[String]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Self::from_strings(&v).map_err(serde::de::Error::custom)
    }
}
