//! Exact characteristic polynomials of integer matrices.
//!
//! `det(xI - M)` is computed modulo enough word-sized primes to exceed twice
//! a Hadamard-type bound on its coefficients, and lifted by Chinese
//! remaindering into the symmetric range. Each modular image comes from a
//! Hessenberg reduction over `GF(p)`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;

/// Monic characteristic polynomial `det(xI - M)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let bound = coefficient_bound(m);
    // need modulus > 2 * bound to recover signed coefficients
    let target = bound << 1u32;

    let mut modulus = BigUint::one();
    let mut acc: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    for p in primes_below(1u64 << 62) {
        let residues = charpoly_mod_p(m, p);
        crt_accumulate(&mut acc, &mut modulus, &residues, p);
        if modulus > target {
            break;
        }
    }

    let half = &modulus >> 1u32;
    let coeffs = acc
        .into_iter()
        .map(|c| {
            if c > half {
                -BigInt::from_biguint(Sign::Plus, &modulus - c)
            } else {
                BigInt::from_biguint(Sign::Plus, c)
            }
        })
        .collect();
    Ok(IntPolynomial::new(coeffs))
}

/// `prod_j (1 + ||col_j||_2)` rounded up. Each coefficient of the
/// characteristic polynomial is a signed sum of principal minors, and each
/// k-by-k minor is bounded by the product of its column norms.
fn coefficient_bound(m: &IntMatrix) -> BigUint {
    let n = m.rows();
    let mut bound = BigUint::one();
    for j in 0..n {
        let sq: BigUint = (0..n)
            .map(|i| m.get(i, j).magnitude().pow(2))
            .fold(BigUint::zero(), |a, b| a + b);
        let mut norm = sq.sqrt();
        if &norm * &norm < sq {
            norm += 1u32;
        }
        bound *= norm + 1u32;
    }
    bound
}

fn crt_accumulate(acc: &mut [BigUint], modulus: &mut BigUint, residues: &[u64], p: u64) {
    let pb = BigUint::from(p);
    // inverse of modulus mod p
    let m_mod_p = (&*modulus % &pb).to_u64().expect("reduced mod p");
    let inv = mod_inv(m_mod_p, p);
    for (a, &r) in acc.iter_mut().zip(residues) {
        let a_mod_p = (&*a % &pb).to_u64().expect("reduced mod p");
        let diff = (r + p - a_mod_p) % p;
        let t = mul_mod(diff, inv, p);
        *a += &*modulus * BigUint::from(t);
    }
    *modulus *= pb;
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic witness set for 64-bit integers
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(limit: u64) -> impl Iterator<Item = u64> {
    let start = if limit % 2 == 0 { limit - 1 } else { limit - 2 };
    (0..)
        .map(move |k| start - 2 * k)
        .take_while(|&c| c > 2)
        .filter(|&c| is_prime_u64(c))
}

fn to_residue(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Coefficients (ascending) of `det(xI - M)` mod `p`.
fn charpoly_mod_p(m: &IntMatrix, p: u64) -> Vec<u64> {
    let n = m.rows();
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|a| to_residue(a, p)).collect())
        .collect();
    hessenberg_mod_p(&mut h, p);
    hessenberg_charpoly(&h, p)
}

/// Similarity reduction to upper Hessenberg form over GF(p).
fn hessenberg_mod_p(h: &mut [Vec<u64>], p: u64) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = mod_inv(h[k + 1][k], p);
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let f = mul_mod(h[i][k], inv, p);
            // row_i -= f * row_{k+1}
            let (upper, lower) = h.split_at_mut(i);
            let src = &upper[k + 1];
            for (dst, &s) in lower[0].iter_mut().zip(src.iter()) {
                if s != 0 {
                    *dst = (*dst + p - mul_mod(f, s, p)) % p;
                }
            }
            // col_{k+1} += f * col_i
            for row in h.iter_mut() {
                let s = row[i];
                if s != 0 {
                    row[k + 1] = (row[k + 1] + mul_mod(f, s, p)) % p;
                }
            }
        }
    }
}

fn hessenberg_charpoly(h: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = h.len();
    // polys[m] = charpoly of leading m-by-m block, ascending coefficients
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let col = m - 1;
        // (x - h[col][col]) * polys[m-1]
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let diag = h[col][col];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(diag, c, p)) % p;
        }
        // - sum_{i < col} h[i][col] * prod_{k=i+1}^{col} h[k][k-1] * polys[i]
        let mut prod = 1u64;
        for i in (0..col).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(h[i][col], prod, p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n >= 1")
}

/// Bit length of the coefficient bound used to size the modular lift.
pub fn coefficient_bound_bits(m: &IntMatrix) -> u64 {
    coefficient_bound(m).bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity() {
        assert_eq!(
            char_poly(&IntMatrix::identity(2)).unwrap(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
    }

    #[test]
    fn small_matrices() {
        // [[2,1],[1,1]]: x^2 - 3x + 1
        assert_eq!(
            char_poly(&m(&[vec![2, 1], vec![1, 1]])).unwrap(),
            IntPolynomial::from_i64(&[1, -3, 1])
        );
        // companion of x^3 - 2x + 5 (needs pivoting: zero subdiagonal start)
        let c = m(&[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(char_poly(&c).unwrap(), IntPolynomial::from_i64(&[5, -2, 0, 1]));
        // zeros in the first column below the diagonal
        let z = m(&[vec![1, 2, 3], vec![0, 4, 5], vec![0, 0, 6]]);
        assert_eq!(
            char_poly(&z).unwrap(),
            IntPolynomial::from_i64(&[-24, 34, -11, 1])
        );
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let big = 1i64 << 40;
        let a = m(&[vec![big, 1], vec![-1, big]]);
        // x^2 - 2^41 x + 2^80 + 1
        let p = char_poly(&a).unwrap();
        let b = BigInt::from(big);
        assert_eq!(p.coeff(0), &b * &b + 1);
        assert_eq!(p.coeff(1), -(b * BigInt::from(2)));
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes_below(1 << 62).take(3).collect();
        assert!(ps.iter().all(|&p| p < (1 << 62) && is_prime_u64(p)));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
    }
}
