//! Brute-force enumerators used as ground truth. Nothing here calls into the
//! lattice, ideal or transfer-matrix code: each count is a plain filter over
//! every candidate subset.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::mask::SubsetMask;
use crate::monoid::CayleyMonoid;

fn closed(m: &CayleyMonoid, s: SubsetMask) -> bool {
    s.iter().all(|x| s.iter().all(|y| s.contains(m.op(x, y))))
}

/// `M × [n]`, with `(x, k)` at index `x·(n+1) + k`.
pub fn product_with_chain(m: &CayleyMonoid, n: usize, limits: &Limits) -> Result<CayleyMonoid> {
    let size = (n + 1) * m.size();
    if size > limits.max_oracle_size {
        return Err(Error::SizeLimitExceeded {
            what: "oracle product size",
            requested: size as u128,
            limit: limits.max_oracle_size as u128,
        });
    }
    m.product(&CayleyMonoid::chain(n)?)
}

/// Every submonoid of `M × [n]`, ascending by mask value.
pub fn brute_force_submonoids(m: &CayleyMonoid, n: usize, limits: &Limits) -> Result<Vec<SubsetMask>> {
    let p = product_with_chain(m, n, limits)?;
    let e = p.identity();
    let others: Vec<usize> = (0..p.size()).filter(|&x| x != e).collect();
    let found = (0..1u64 << others.len())
        .into_par_iter()
        .filter_map(|bits| {
            let s = SubsetMask::from_bits(bits)
                .iter()
                .map(|i| others[i])
                .collect::<SubsetMask>()
                .with(e);
            closed(&p, s).then_some(s)
        })
        .collect::<Vec<_>>();
    let mut found = found;
    found.sort();
    Ok(found)
}

/// `#SubMon(M × [n])`.
pub fn brute_force_submonoid_count(m: &CayleyMonoid, n: usize) -> Result<BigUint> {
    brute_force_submonoid_count_with_limits(m, n, &Limits::default())
}

pub fn brute_force_submonoid_count_with_limits(
    m: &CayleyMonoid,
    n: usize,
    limits: &Limits,
) -> Result<BigUint> {
    Ok(BigUint::from(brute_force_submonoids(m, n, limits)?.len()))
}

/// `#{I ⊆ A : A·I ⊆ I, I ∪ B = A}`, trying all `2^|A|` subsets.
pub fn brute_force_weight(m: &CayleyMonoid, a: SubsetMask, b: SubsetMask) -> BigUint {
    let elems: Vec<usize> = a.iter().collect();
    let count = (0..1u64 << elems.len())
        .filter(|&bits| {
            let ideal: SubsetMask = SubsetMask::from_bits(bits).iter().map(|i| elems[i]).collect();
            ideal.union(b) == a
                && ideal
                    .iter()
                    .all(|i| elems.iter().all(|&x| ideal.contains(m.op(x, i))))
        })
        .count();
    BigUint::from(count)
}

/// `m_A(n) = #{R ≤ M × [n] : π_n R = A}`, where `π_n` forgets the chain
/// coordinate.
pub fn brute_force_projection_count(m: &CayleyMonoid, n: usize, a: SubsetMask) -> Result<BigUint> {
    brute_force_projection_count_with_limits(m, n, a, &Limits::default())
}

pub fn brute_force_projection_count_with_limits(
    m: &CayleyMonoid,
    n: usize,
    a: SubsetMask,
    limits: &Limits,
) -> Result<BigUint> {
    let count = brute_force_submonoids(m, n, limits)?
        .into_iter()
        .filter(|r| project(*r, n) == a)
        .count();
    Ok(BigUint::from(count))
}

/// Image of a subset of `M × [n]` under the projection to `M`.
pub fn project(r: SubsetMask, n: usize) -> SubsetMask {
    r.iter().map(|i| i / (n + 1)).collect()
}
