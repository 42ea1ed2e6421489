//! Explicit eigenbasis of `W([m])`.
//!
//! Submonoids of the chain `[m]` are the subsets containing `0`. The matrix
//!
//! ```text
//! Q_{A,B} = (-1)^{#A-#B} ∏_{a ∈ A∖B} (1 + #{b ∈ B : b ≤ a})   if B ⊆ A
//!         = 0                                              otherwise
//! ```
//!
//! satisfies `W Q = Q D` with `D_{B,B} = #B + 1`, and `(Q⁻¹ 1)_A = (#A+1)!/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::linalg::{invert_lower_triangular, mat_mul, to_rational, RationalMatrix};
use crate::mask::SubsetMask;
use crate::monoid::CayleyMonoid;
use crate::transfer::TransferMatrix;

#[derive(Clone, Debug)]
pub struct ChainEigenmatrix {
    transfer: TransferMatrix,
    q: Vec<Vec<BigInt>>,
}

fn entry(a: SubsetMask, b: SubsetMask) -> BigInt {
    if !b.is_subset(a) {
        return BigInt::zero();
    }
    let magnitude: BigInt = a
        .difference(b)
        .iter()
        .map(|x| BigInt::from(1 + b.iter().filter(|&y| y <= x).count()))
        .product();
    if (a.len() - b.len()) % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

impl ChainEigenmatrix {
    pub fn new(m: usize) -> Result<Self> {
        let transfer = TransferMatrix::build(&CayleyMonoid::chain(m)?)?;
        let members = transfer.lattice().members();
        let q = members
            .iter()
            .map(|&a| members.iter().map(|&b| entry(a, b)).collect())
            .collect();
        Ok(ChainEigenmatrix { transfer, q })
    }

    pub fn transfer(&self) -> &TransferMatrix {
        &self.transfer
    }

    pub fn q(&self) -> &[Vec<BigInt>] {
        &self.q
    }

    /// Eigenvalue `#B + 1` attached to column `B`.
    pub fn eigenvalues(&self) -> Vec<u64> {
        self.transfer
            .lattice()
            .members()
            .iter()
            .map(|b| b.len() as u64 + 1)
            .collect()
    }

    fn q_inverse(&self) -> RationalMatrix {
        invert_lower_triangular(&to_rational(&self.q)).expect("Q has unit diagonal")
    }

    /// `Q⁻¹ W Q`, computed exactly.
    pub fn conjugated(&self) -> RationalMatrix {
        let w: Vec<Vec<BigInt>> = self
            .transfer
            .entries()
            .iter()
            .map(|row| row.iter().map(|x| BigInt::from(x.clone())).collect())
            .collect();
        let wq = mat_mul(&to_rational(&w), &to_rational(&self.q));
        mat_mul(&self.q_inverse(), &wq)
    }

    /// Whether `Q⁻¹ W Q = diag(#B + 1)`.
    pub fn diagonalizes(&self) -> bool {
        let c = self.conjugated();
        let ev = self.eigenvalues();
        c.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| {
                if i == j {
                    *v == BigRational::from_integer(BigInt::from(ev[i]))
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// `Q⁻¹ 1`.
    pub fn inverse_times_ones(&self) -> Vec<BigRational> {
        self.q_inverse()
            .iter()
            .map(|row| row.iter().sum())
            .collect()
    }

    /// `b_j = Σ_{#A = j-1} (1ᵀQ)_A (Q⁻¹1)_A`, indexed by eigenvalue `j`.
    pub fn b_coefficients(&self) -> Vec<(u64, BigRational)> {
        let n = self.q.len();
        let col_sums: Vec<BigInt> = (0..n).map(|b| (0..n).map(|a| &self.q[a][b]).sum()).collect();
        let inv_ones = self.inverse_times_ones();
        let ev = self.eigenvalues();
        let mut out: Vec<(u64, BigRational)> = Vec::new();
        let mut lambdas = ev.clone();
        lambdas.sort_unstable();
        lambdas.dedup();
        for l in lambdas {
            let b = (0..n)
                .filter(|&i| ev[i] == l)
                .map(|i| BigRational::from_integer(col_sums[i].clone()) * &inv_ones[i])
                .sum();
            out.push((l, b));
        }
        out
    }
}

/// `(#A + 1)! / 2`.
pub fn half_factorial(k: usize) -> BigRational {
    let f: BigInt = (1..=k as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    BigRational::new(f, BigInt::from(2))
}
