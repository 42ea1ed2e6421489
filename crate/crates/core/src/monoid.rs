//! Finite commutative monoids given by Cayley tables.
//!
//! Elements are the indices `0..size`. Products of monoids use the row-major
//! encoding `(x, y) -> x * size(N) + y`, which is part of the public contract:
//! subset masks of a product refer to elements through this encoding.
//!
//! The named lattices fix their element order as follows:
//!
//! * `M_k`: `⊥ = 0`, the middle elements `1..=k`, `⊤ = k + 1`.
//! * `N_5`: `(⊥, a, b, c, ⊤) = (0, 1, 2, 3, 4)` with `⊥ < a < c < ⊤` and
//!   `⊥ < b < ⊤`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};
use crate::order::PartialOrder;

/// A validated finite commutative monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyMonoid {
    size: usize,
    table: Vec<u8>,
    identity: usize,
}

/// On-disk Cayley table: `{"size": n, "identity": e, "table": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyJson {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl CayleyMonoid {
    /// Validates a square table and identity; checks are exhaustive.
    pub fn from_table(table: &[Vec<usize>], identity: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::MalformedTable("table is empty".into()));
        }
        if size > MAX_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                what: "monoid size",
                requested: size as u128,
                limit: MAX_ELEMENTS as u128,
            });
        }
        if let Some(row) = table.iter().position(|r| r.len() != size) {
            return Err(Error::MalformedTable(format!(
                "row {row} has length {} but the table has {size} rows",
                table[row].len()
            )));
        }
        if identity >= size {
            return Err(Error::MalformedTable(format!(
                "identity {identity} out of range for size {size}"
            )));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::MalformedTable(format!(
                        "entry ({x}, {y}) = {v} out of range"
                    )));
                }
                flat.push(v as u8);
            }
        }
        let m = CayleyMonoid {
            size,
            table: flat,
            identity,
        };
        m.validate()?;
        Ok(m)
    }

    fn from_fn_unchecked(size: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(op(x, y) as u8);
            }
        }
        CayleyMonoid {
            size,
            table,
            identity,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            if self.op(self.identity, x) != x {
                return Err(Error::IdentityViolation {
                    identity: self.identity,
                    x,
                });
            }
            for y in 0..x {
                if self.op(x, y) != self.op(y, x) {
                    return Err(Error::CommutativityViolation { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(x, self.op(y, z)) {
                        return Err(Error::AssociativityViolation { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::from_fn_unchecked(1, 0, |_, _| 0)
    }

    /// The chain `[m] = {0, ..., m}` under `max`.
    pub fn chain(m: usize) -> Result<Self> {
        let size = m + 1;
        check_size("chain size", size as u128)?;
        Ok(Self::from_fn_unchecked(size, 0, usize::max))
    }

    /// Cartesian product with componentwise operation; `(x, y)` is encoded as
    /// `x * other.size() + y`.
    pub fn product(&self, other: &CayleyMonoid) -> Result<Self> {
        let size = self.size as u128 * other.size as u128;
        check_size("product size", size)?;
        let nb = other.size;
        Ok(Self::from_fn_unchecked(
            self.size * nb,
            self.identity * nb + other.identity,
            |p, q| self.op(p / nb, q / nb) * nb + other.op(p % nb, q % nb),
        ))
    }

    /// The `k`-fold product of `[1]` with itself (the power set of a `k`-set).
    pub fn boolean(k: usize) -> Result<Self> {
        let one = Self::chain(1)?;
        let mut m = Self::trivial();
        for _ in 0..k {
            m = m.product(&one)?;
        }
        Ok(m)
    }

    /// The lattice `M_k = {⊥, 1, ..., k, ⊤}` under join.
    pub fn mk(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parse("M_k needs k >= 1".into()));
        }
        let top = k + 1;
        check_size("M_k size", (k + 2) as u128)?;
        Ok(Self::from_fn_unchecked(k + 2, 0, |x, y| {
            if x == y || y == 0 {
                x
            } else if x == 0 {
                y
            } else {
                top
            }
        }))
    }

    /// The pentagon lattice `N_5` under join.
    pub fn n5() -> Self {
        // ⊥=0, a=1, b=2, c=3, ⊤=4; ⊥<a<c<⊤, ⊥<b<⊤.
        let below = [0b00001u8, 0b00011, 0b00101, 0b01011, 0b11111];
        let leq = |x: usize, y: usize| below[y] >> x & 1 == 1;
        Self::from_fn_unchecked(5, 0, |x, y| {
            (0..5)
                .filter(|&z| leq(x, z) && leq(y, z))
                .min_by_key(|&z| below[z].count_ones())
                .expect("N5 has a top")
        })
    }

    /// The cyclic group `Z/m` under addition.
    pub fn cyclic_group(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parse("cyclic group needs m >= 1".into()));
        }
        check_size("cyclic group order", m as u128)?;
        Ok(Self::from_fn_unchecked(m, 0, |x, y| (x + y) % m))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn all(&self) -> SubsetMask {
        SubsetMask::full(self.size)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.op(x, y)).collect())
            .collect()
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.op(x, x) == x)
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).any(|y| self.op(x, y) == self.identity))
    }

    /// The join-semilattice order `x <= y iff x * y = y`.
    pub fn semilattice_order(&self) -> Result<PartialOrder> {
        if let Some(x) = (0..self.size).find(|&x| self.op(x, x) != x) {
            return Err(Error::NotIdempotent { x });
        }
        PartialOrder::from_fn(self.size, |x, y| self.op(x, y) == y)
    }

    /// `{x * y : y in set}`.
    pub fn translate(&self, x: usize, set: SubsetMask) -> SubsetMask {
        set.iter().map(|y| self.op(x, y)).collect()
    }

    pub fn to_json(&self) -> CayleyJson {
        CayleyJson {
            size: self.size,
            identity: self.identity,
            table: self.table(),
        }
    }

    pub fn from_json(json: &CayleyJson) -> Result<Self> {
        if json.size != json.table.len() {
            return Err(Error::MalformedTable(format!(
                "size {} does not match {} table rows",
                json.size,
                json.table.len()
            )));
        }
        Self::from_table(&json.table, json.identity)
    }
}

fn check_size(what: &'static str, size: u128) -> Result<()> {
    if size > MAX_ELEMENTS as u128 {
        return Err(Error::SizeLimitExceeded {
            what,
            requested: size,
            limit: MAX_ELEMENTS as u128,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn revalidate(m: &CayleyMonoid) {
        CayleyMonoid::from_table(&m.table(), m.identity()).unwrap();
    }

    #[test]
    fn small_tables() {
        let t = CayleyMonoid::from_table(&[vec![0]], 0).unwrap();
        assert_eq!(t, CayleyMonoid::trivial());
        let c1 = CayleyMonoid::from_table(&[vec![0, 1], vec![1, 1]], 0).unwrap();
        assert_eq!(c1, CayleyMonoid::chain(1).unwrap());
        let c2 = CayleyMonoid::from_table(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        assert_eq!(c2, CayleyMonoid::cyclic_group(2).unwrap());
        assert!(c2.is_group() && !c2.is_idempotent());
    }

    #[test]
    fn validation_names_witnesses() {
        assert_eq!(
            CayleyMonoid::from_table(&[vec![0, 1], vec![0, 1]], 0),
            Err(Error::CommutativityViolation { x: 1, y: 0 })
        );
        assert_eq!(
            CayleyMonoid::from_table(&[vec![1, 1], vec![1, 1]], 0),
            Err(Error::IdentityViolation { identity: 0, x: 0 })
        );
        // Commutative, has identity 0, but (1*1)*2 != 1*(1*2).
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 0]];
        assert!(matches!(
            CayleyMonoid::from_table(&t, 0),
            Err(Error::AssociativityViolation { .. })
        ));
        assert!(CayleyMonoid::from_table(&[vec![0, 1]], 0).is_err());
        assert!(CayleyMonoid::from_table(&[vec![0]], 1).is_err());
    }

    #[test]
    fn constructors_satisfy_axioms() {
        for m in [
            CayleyMonoid::trivial(),
            CayleyMonoid::chain(3).unwrap(),
            CayleyMonoid::mk(3).unwrap(),
            CayleyMonoid::n5(),
            CayleyMonoid::cyclic_group(6).unwrap(),
            CayleyMonoid::boolean(3).unwrap(),
            CayleyMonoid::chain(2)
                .unwrap()
                .product(&CayleyMonoid::cyclic_group(2).unwrap())
                .unwrap(),
        ] {
            revalidate(&m);
        }
        assert_eq!(CayleyMonoid::cyclic_group(1).unwrap(), CayleyMonoid::trivial());
        assert_eq!(CayleyMonoid::chain(0).unwrap(), CayleyMonoid::trivial());
    }

    #[test]
    fn product_encoding_is_row_major() {
        let a = CayleyMonoid::chain(1).unwrap();
        let b = CayleyMonoid::cyclic_group(3).unwrap();
        let p = a.product(&b).unwrap();
        assert_eq!(p.size(), 6);
        // (1, 2) * (0, 2) = (1, 1)
        assert_eq!(p.op(1 * 3 + 2, 2), 1 * 3 + 1);
        assert_eq!(p.identity(), 0);
        let t = a.product(&CayleyMonoid::trivial()).unwrap();
        assert_eq!(t, a);
    }

    #[test]
    fn product_size_guard() {
        let big = CayleyMonoid::boolean(5).unwrap();
        assert!(matches!(
            big.product(&big),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn semilattice_orders() {
        let o = CayleyMonoid::chain(2).unwrap().semilattice_order().unwrap();
        assert!(o.leq(0, 1) && o.leq(1, 2) && !o.leq(2, 1));
        assert_eq!(
            CayleyMonoid::cyclic_group(2).unwrap().semilattice_order(),
            Err(Error::NotIdempotent { x: 1 })
        );
        let grid = CayleyMonoid::boolean(2).unwrap().semilattice_order().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let componentwise = (x >> 1) <= (y >> 1) && (x & 1) <= (y & 1);
                assert_eq!(grid.leq(x, y), componentwise);
            }
        }
        let n5 = CayleyMonoid::n5().semilattice_order().unwrap();
        assert!(n5.leq(1, 3) && !n5.leq(2, 3) && !n5.leq(1, 2) && n5.leq(2, 4));
        let m3 = CayleyMonoid::mk(3).unwrap();
        assert_eq!(m3.op(1, 2), 4);
        assert_eq!(m3.op(3, 3), 3);
    }

    #[test]
    fn json_round_trip() {
        let m = CayleyMonoid::n5();
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back: CayleyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(CayleyMonoid::from_json(&back).unwrap(), m);
    }
}
