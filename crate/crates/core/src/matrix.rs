//! Dense square-or-rectangular matrices over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    // row-major
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &BigInt) {
        self.data[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product; zero entries of `self` are skipped, so put the
    /// sparser factor on the left.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `self^k` by repeated left multiplication with `self`.
    pub fn pow(&self, k: u32) -> Result<IntMatrix> {
        let n = self.ensure_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            for (s, a) in sums.iter_mut().zip(self.row(i)) {
                *s += a;
            }
        }
        sums
    }

    pub fn entry_sum(&self) -> BigInt {
        self.data.iter().sum()
    }

    pub fn max_row_sum(&self) -> BigInt {
        self.row_sums().into_iter().max().unwrap_or_else(BigInt::zero)
    }

    pub fn nonnegative(&self) -> Result<()> {
        match self.data.iter().position(|a| a.is_negative()) {
            Some(p) => Err(Error::NegativeEntry {
                row: p / self.cols,
                col: p % self.cols,
            }),
            None => Ok(()),
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.data.iter().all(|a| a.is_positive())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|a| !a.is_zero()).count()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        let n = self.ensure_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|a| a.to_f64().unwrap_or(f64::INFINITY))
                    .collect()
            })
            .collect()
    }

    /// Sparse copy: for every row, the `(column, value)` pairs that are nonzero.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(j, a)| (j, a.clone()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// JSON shape for matrices: a basis header and row-major decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub basis: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn new(basis: Vec<String>, m: &IntMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(ToString::to_string).collect())
            .collect();
        MatrixDocument { basis, rows }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
                    })
                    .collect::<Result<Vec<BigInt>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_rows(&rows)?;
        if !self.basis.is_empty() && self.basis.len() != m.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                got: m.rows(),
            });
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn product_and_power() {
        let fib = m(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(fib.pow(10).unwrap(), m(&[vec![89, 55], vec![55, 34]]));
        assert_eq!(fib.pow(0).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(
            m(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]])
                .determinant()
                .unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            m(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(),
            BigInt::from(0)
        );
        assert!(m(&[vec![1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn sums_and_trace() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.trace(), BigInt::from(5));
        assert_eq!(a.row_sums(), vec![BigInt::from(3), BigInt::from(7)]);
        assert_eq!(a.column_sums(), vec![BigInt::from(4), BigInt::from(6)]);
        assert_eq!(a.transpose().row_sums(), a.column_sums());
        assert_eq!(a.entry_sum(), BigInt::from(10));
    }

    #[test]
    fn document_round_trip() {
        let a = m(&[vec![1, 0], vec![12345678901234, 4]]);
        let doc = MatrixDocument::new(vec!["x".into(), "y".into()], &a);
        assert_eq!(doc.rows[1][0], "12345678901234");
        assert_eq!(doc.to_matrix().unwrap(), a);
    }
}
