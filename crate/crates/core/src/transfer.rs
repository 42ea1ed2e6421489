//! The transfer matrix `W(M)` of the submonoid graph and the submonoid counts
//! of `M × [n]` it produces.
//!
//! A submonoid `R ≤ M × [n+1]` projecting onto `A` splits into its part over
//! `[n]` and the ideal `I ⊆ A` sitting over level `n+1`, with `I ∪ π(R') = A`.
//! Hence `m_A(n+1) = Σ_B w(A,B) m_B(n)` with `m_A(0) = 1`, and the total
//! count is `1ᵀ Wⁿ 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::IdealStructure;
use crate::lattice::SubmonoidLattice;
use crate::limits::Limits;
use crate::monoid::CayleyMonoid;

/// `entries[a][b] = w(A, B)` with rows and columns in canonical lattice order.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    lattice: SubmonoidLattice,
    entries: Vec<Vec<BigUint>>,
}

impl TransferMatrix {
    pub fn build(m: &CayleyMonoid) -> Result<Self> {
        Self::build_with_limits(m, &Limits::default())
    }

    pub fn build_with_limits(m: &CayleyMonoid, limits: &Limits) -> Result<Self> {
        Self::from_lattice(SubmonoidLattice::with_limits(m, limits)?)
    }

    pub fn from_lattice(lattice: SubmonoidLattice) -> Result<Self> {
        let members = lattice.members();
        let m = lattice.monoid();
        let entries = members
            .par_iter()
            .map(|&a| {
                let ideals = IdealStructure::new(m, a)?;
                let mut counter = ideals.counter();
                Ok(members
                    .iter()
                    .map(|&b| BigUint::from(ideals.weight_with(&mut counter, b)))
                    .collect())
            })
            .collect::<Result<Vec<Vec<BigUint>>>>()?;
        let w = TransferMatrix { lattice, entries };
        assert!(w.is_lower_triangular(), "transfer matrix must be lower triangular");
        Ok(w)
    }

    pub fn lattice(&self) -> &SubmonoidLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Vec<BigUint>] {
        &self.entries
    }

    pub fn entry(&self, a: usize, b: usize) -> &BigUint {
        &self.entries[a][b]
    }

    pub fn diagonal(&self) -> Vec<BigUint> {
        (0..self.len()).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row[i + 1..].iter().all(Zero::is_zero))
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(w, _)| !w.is_zero())
                    .fold(BigUint::zero(), |acc, (w, x)| acc + w * x)
            })
            .collect()
    }

    /// `m_A(n)` for every `A`: the number of submonoids of `M × [n]` whose
    /// projection to `M` is `A`.
    pub fn projection_counts(&self, n: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::one(); self.len()];
        for _ in 0..n {
            v = self.mul_vec(&v);
        }
        v
    }

    /// `S_0, ..., S_{n_max}` with `S_n = #SubMon(M × [n]) = 1ᵀ Wⁿ 1`.
    pub fn count_sequence(&self, n_max: usize) -> CountSequence {
        let mut v = vec![BigUint::one(); self.len()];
        let mut values = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n > 0 {
                v = self.mul_vec(&v);
            }
            values.push(v.iter().sum());
        }
        CountSequence { values }
    }

    /// `(Wⁿ)_{A,B}`: submonoids `R ≤ M × [n]` with `π_n R = A` and
    /// `π_{n-1}(R ∩ (M × [n-1])) = B`.
    pub fn counts_by_projection(&self, n: usize, a: usize, b: usize) -> Result<BigUint> {
        for i in [a, b] {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
        }
        let mut v = vec![BigUint::zero(); self.len()];
        v[b] = BigUint::one();
        for _ in 0..n {
            v = self.mul_vec(&v);
        }
        Ok(v.swap_remove(a))
    }

    /// Growth data: `S_n = Θ(n^k i^n)` with `k ≤ k_bound`.
    pub fn asymptotics(&self) -> Asymptotics {
        let diag = self.diagonal();
        let i = diag.iter().max().cloned().unwrap_or_default();
        let top: Vec<usize> = (0..self.len()).filter(|&a| diag[a] == i).collect();
        // Longest path (in edges) within the maximal-diagonal vertices; edges
        // only go from higher to lower index, so process in increasing order.
        let mut longest = vec![0usize; self.len()];
        for (pos, &a) in top.iter().enumerate() {
            longest[a] = top[..pos]
                .iter()
                .filter(|&&b| !self.entries[a][b].is_zero())
                .map(|&b| longest[b] + 1)
                .max()
                .unwrap_or(0);
        }
        Asymptotics {
            i,
            r: top.len(),
            k_bound: top.iter().map(|&a| longest[a]).max().unwrap_or(0),
        }
    }

    /// JSON dump: the lattice legend (hex masks) and the matrix.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "size": self.lattice.monoid().size(),
            "legend": self.lattice.hex_members(),
            "matrix": self
                .entries
                .iter()
                .map(|row| row.iter().map(|x| serde_json::Value::String(x.to_string())).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Asymptotics {
    /// Largest diagonal entry (maximal number of ideals of a submonoid).
    pub i: BigUint,
    /// Number of submonoids attaining `i`.
    pub r: usize,
    /// Longest path among the submonoids attaining `i`, self-loops excluded.
    pub k_bound: usize,
}

/// `S_0, S_1, ...` for a fixed monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    pub values: Vec<BigUint>,
}

impl CountSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `n,S_n` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,S_n\n");
        for (n, s) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{s}\n"));
        }
        out
    }
}
