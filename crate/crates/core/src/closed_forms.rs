//! Closed formulas used to cross-check the transfer-matrix pipeline.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::order::PartialOrder;

/// `c[m]` = number of chains `x_0 < x_1 < ... < x_m` in a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCountVector {
    pub c: Vec<BigUint>,
}

impl ChainCountVector {
    /// Length of the longest chain.
    pub fn height(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
}

/// Chain counts via powers of the strict-order adjacency matrix:
/// `c_m = 1ᵀ Lᵐ 1`.
pub fn chain_counts(p: &PartialOrder) -> ChainCountVector {
    let n = p.size();
    let mut v = vec![BigUint::one(); n];
    let mut c = Vec::new();
    while v.iter().any(|x| !x.is_zero()) {
        c.push(v.iter().sum());
        v = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| p.lt(x, y))
                    .map(|y| &v[y])
                    .sum()
            })
            .collect();
    }
    ChainCountVector { c }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `#SubMon(G × [n]) = Σ_m c_m 2^{n-m} C(n, m)` for a finite Abelian group
/// with subgroup chain counts `c`; terms with `m > n` vanish.
pub fn abelian_group_count(c: &ChainCountVector, n: usize) -> BigUint {
    c.c.iter()
        .enumerate()
        .take(n + 1)
        .map(|(m, cm)| cm * binomial(n, m) * (BigUint::one() << (n - m)))
        .sum()
}

/// Rows `0..=n_max` of the Stirling triangle of the second kind.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = prev.get(k).map_or(BigUint::zero(), |s| s * BigUint::from(k));
                let add = if k > 0 { prev[k - 1].clone() } else { BigUint::zero() };
                stay + add
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling2_table(n).swap_remove(n).swap_remove(k)
}

/// `Σ_k (-1)^{n+k} k! S(n,k) (k+1)^m`.
pub fn poly_bernoulli_alternating(m: usize, n: usize) -> BigInt {
    let s = stirling2_table(n);
    (0..=n)
        .map(|k| {
            let term = BigInt::from(factorial(k) * &s[n][k] * BigUint::from(k + 1).pow(m as u32));
            if (n + k) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `Σ_k k!² S(m+1,k+1) S(n+1,k+1)`.
pub fn poly_bernoulli_symmetric(m: usize, n: usize) -> BigUint {
    let s = stirling2_table(m.max(n) + 1);
    (0..=m.min(n))
        .map(|k| {
            let f = factorial(k);
            &f * &f * &s[m + 1][k + 1] * &s[n + 1][k + 1]
        })
        .sum()
}

/// Poly-Bernoulli number `B_{m,n}`; both finite-sum formulas are evaluated
/// and must agree.
pub fn poly_bernoulli(m: usize, n: usize) -> Result<BigUint> {
    let a = poly_bernoulli_alternating(m, n);
    let b = poly_bernoulli_symmetric(m, n);
    if a != BigInt::from(b.clone()) {
        return Err(Error::FormulaMismatch {
            formula: "poly-Bernoulli sums",
            m,
            n,
        });
    }
    Ok(b)
}

/// `b_j([m]) = ½ (-1)^{m+j} j! S(m+1, j-1)` for `2 ≤ j ≤ m+2`.
pub fn chain_b_coefficient(m: usize, j: usize) -> Result<BigRational> {
    if !(2..=m + 2).contains(&j) {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: m + 3,
        });
    }
    let mag = BigInt::from(factorial(j) * stirling2(m + 1, j - 1));
    let signed = if (m + j) % 2 == 1 { -mag } else { mag };
    Ok(BigRational::new(signed, BigInt::from(2)))
}

/// `Λ([m]) = {2, ..., m+2}`.
pub fn lambda_chain(m: usize) -> Vec<u64> {
    (2..=m as u64 + 2).collect()
}

/// `Λ([m] × [1]) = {2, ..., C(m+3,2)} ∖ {C(m+3,2) − 1}`, valid for `m ≥ 1`.
pub fn lambda_chain_x1(m: usize) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::IndexOutOfRange { index: 0, len: 0 });
    }
    let top = ((m + 3) * (m + 2) / 2) as u64;
    Ok((2..=top).filter(|&l| l != top - 1).collect())
}

/// `Λ(M_k) = {2} ∪ {2^i + 2 : 0 ≤ i ≤ k}`.
pub fn lambda_mk(k: usize) -> Result<Vec<u64>> {
    if k == 0 || k > 62 {
        return Err(Error::IndexOutOfRange { index: k, len: 63 });
    }
    let mut out = vec![2u64];
    out.extend((0..=k).map(|i| (1u64 << i) + 2));
    Ok(out)
}

/// Subsemigroups of a finite join-semilattice are twice its submonoids.
pub fn submonoid_subsemigroup_bridge(count: &BigUint) -> BigUint {
    count * 2u32
}
