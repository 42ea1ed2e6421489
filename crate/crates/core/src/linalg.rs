//! Exact dense linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Solves `a x = rhs` exactly with Bareiss fraction-free elimination followed
/// by rational back substitution. Returns `None` when `a` is singular.
pub fn solve_fraction_free(a: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for p in 0..n {
        let pivot_row = (p..n).find(|&r| !m[r][p].is_zero())?;
        m.swap(p, pivot_row);
        for r in p + 1..n {
            for c in p + 1..=n {
                let v = &m[p][p] * &m[r][c] - &m[r][p] * &m[p][c];
                // Exact by Sylvester's identity.
                m[r][c] = v / &prev;
            }
            m[r][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for p in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[p][n].clone());
        for c in p + 1..n {
            acc -= BigRational::from_integer(m[p][c].clone()) * &x[c];
        }
        x[p] = acc / BigRational::from_integer(m[p][p].clone());
    }
    Some(x)
}

pub fn to_rational(a: &[Vec<BigInt>]) -> RationalMatrix {
    a.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// Inverse of a lower triangular matrix with nonzero diagonal.
pub fn invert_lower_triangular(a: &RationalMatrix) -> Option<RationalMatrix> {
    let n = a.len();
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        // Column j of the inverse by forward substitution on e_j.
        for i in j..n {
            let mut acc = if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for l in j..i {
                if !a[i][l].is_zero() {
                    acc -= &a[i][l] * &inv[l][j];
                }
            }
            if a[i][i].is_zero() {
                return None;
            }
            inv[i][j] = acc / &a[i][i];
        }
    }
    Some(inv)
}
