//! Saturated transfer systems on finite lattices and their correspondence
//! with submonoids of `(P, ∨)`.
//!
//! A saturated transfer system is a partial order `R` on a lattice `P` with
//!
//! 1. `x R y ⇒ x ≤ y`;
//! 2. `x R z ⇒ (x ∧ y) R (z ∧ y)` for every `y`;
//! 3. `x R z` and `x ≤ y ≤ z` ⇒ `x R y` and `y R z`.
//!
//! By (3) every system is the transitive closure of the covering pairs it
//! contains. On the cylinder `P × [1]` the covers are horizontal covers in
//! each layer plus vertical pairs `(x,0) → (x,1)`, so a system there is
//! determined by its two layers and its set of vertical pairs.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SubmonoidLattice;
use crate::limits::Limits;
use crate::mask::{submasks, SubsetMask};
use crate::monoid::CayleyMonoid;
use crate::order::PartialOrder;
use crate::transfer::{CountSequence, TransferMatrix};

/// A finite lattice with precomputed meets and joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    order: PartialOrder,
    meet: Vec<u8>,
    join: Vec<u8>,
}

impl FiniteLattice {
    /// Fails with [`Error::NotALattice`] if some pair lacks a meet or a join.
    pub fn from_order(order: PartialOrder) -> Result<Self> {
        let n = order.size();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let lower = order.down_set(x).intersection(order.down_set(y));
                let upper = order.up_set(x).intersection(order.up_set(y));
                let glb = lower.iter().find(|&z| lower.is_subset(order.down_set(z)));
                let lub = upper.iter().find(|&z| upper.is_subset(order.up_set(z)));
                match (glb, lub) {
                    (Some(m), Some(j)) => {
                        meet.push(m as u8);
                        join.push(j as u8);
                    }
                    (None, _) => return Err(Error::NotALattice { x, y, missing: "meet" }),
                    (_, None) => return Err(Error::NotALattice { x, y, missing: "join" }),
                }
            }
        }
        Ok(FiniteLattice { order, meet, join })
    }

    /// The join-semilattice order of an idempotent monoid, which always has
    /// all meets since the identity is a bottom element.
    pub fn from_monoid(m: &CayleyMonoid) -> Result<Self> {
        Self::from_order(m.semilattice_order()?)
    }

    /// `P × [1]` with `(x, i)` encoded as `2x + i`.
    pub fn cylinder(&self) -> Self {
        let n = self.size();
        let order = PartialOrder::from_fn(2 * n, |p, q| p % 2 <= q % 2 && self.leq(p / 2, q / 2))
            .expect("product of orders");
        Self::from_order(order).expect("product of lattices is a lattice")
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y] as usize
    }

    pub fn bottom(&self) -> usize {
        (0..self.size())
            .find(|&x| self.order.up_set(x) == SubsetMask::full(self.size()))
            .expect("a lattice has a bottom")
    }

    /// `(P, ∨)` as a monoid with the bottom as identity.
    pub fn join_monoid(&self) -> CayleyMonoid {
        let n = self.size();
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect();
        CayleyMonoid::from_table(&table, self.bottom()).expect("joins form a commutative monoid")
    }
}

/// A relation on a lattice, stored as `rows[x] = {y : x R y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransferRelation {
    rows: Vec<SubsetMask>,
}

/// Serialized form: the non-reflexive pairs `x R y`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl TransferRelation {
    /// Equality: the finest system.
    pub fn discrete(size: usize) -> Self {
        TransferRelation {
            rows: (0..size).map(SubsetMask::singleton).collect(),
        }
    }

    /// `≤` itself: the coarsest system.
    pub fn full(lattice: &FiniteLattice) -> Self {
        TransferRelation {
            rows: (0..lattice.size()).map(|x| lattice.order().up_set(x)).collect(),
        }
    }

    /// Reflexive relation containing the given pairs.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = Self::discrete(size);
        for &(x, y) in pairs {
            r.rows[x] = r.rows[x].with(y);
        }
        r
    }

    pub fn from_matrix(rel: &[Vec<bool>]) -> Self {
        TransferRelation {
            rows: rel
                .iter()
                .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(y, _)| y).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> SubsetMask {
        self.rows[x]
    }

    /// Whether `self ⊆ other` as sets of pairs.
    pub fn refines(&self, other: &TransferRelation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn to_json(&self) -> RelationJson {
        let pairs = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        RelationJson {
            size: self.size(),
            pairs,
        }
    }

    pub fn from_json(json: &RelationJson) -> Result<Self> {
        if let Some(&(x, y)) = json.pairs.iter().find(|&&(x, y)| x >= json.size || y >= json.size) {
            return Err(Error::Parse(format!("pair ({x}, {y}) out of range")));
        }
        Ok(Self::from_pairs(json.size, &json.pairs))
    }

    /// Restriction to the elements `offset, offset + stride, ...`, reindexed.
    fn layer(&self, offset: usize, stride: usize) -> TransferRelation {
        let n = self.size() / stride;
        TransferRelation {
            rows: (0..n)
                .map(|x| {
                    let row = self.rows[x * stride + offset];
                    (0..n).filter(|&y| row.contains(y * stride + offset)).collect()
                })
                .collect(),
        }
    }

    fn transitive_closure(&mut self) {
        let n = self.size();
        for k in 0..n {
            let via = self.rows[k];
            for x in 0..n {
                if self.rows[x].contains(k) {
                    self.rows[x] = self.rows[x].union(via);
                }
            }
        }
    }
}

/// First clause of the definition that a relation breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongSize { expected: usize, got: usize },
    NotRefining { x: usize, y: usize },
    NotReflexive { x: usize },
    NotTransitive { x: usize, y: usize, z: usize },
    NotRestrictionClosed { x: usize, z: usize, y: usize },
    NotSaturated { x: usize, y: usize, z: usize },
}

/// Checks every clause, returning the first violation found.
pub fn check_saturated_transfer_system(
    lattice: &FiniteLattice,
    r: &TransferRelation,
) -> std::result::Result<(), Violation> {
    let n = lattice.size();
    if r.size() != n {
        return Err(Violation::WrongSize {
            expected: n,
            got: r.size(),
        });
    }
    for x in 0..n {
        if let Some(y) = r.rows[x].difference(lattice.order().up_set(x)).first() {
            return Err(Violation::NotRefining { x, y });
        }
    }
    for x in 0..n {
        if !r.relates(x, x) {
            return Err(Violation::NotReflexive { x });
        }
    }
    for x in 0..n {
        for y in r.rows[x].iter() {
            if let Some(z) = r.rows[y].difference(r.rows[x]).first() {
                return Err(Violation::NotTransitive { x, y, z });
            }
        }
    }
    for x in 0..n {
        for z in r.rows[x].iter() {
            for y in 0..n {
                if !r.relates(lattice.meet(x, y), lattice.meet(z, y)) {
                    return Err(Violation::NotRestrictionClosed { x, z, y });
                }
            }
            let between = lattice.order().up_set(x).intersection(lattice.order().down_set(z));
            for y in between.iter() {
                if !r.relates(x, y) || !r.relates(y, z) {
                    return Err(Violation::NotSaturated { x, y, z });
                }
            }
        }
    }
    Ok(())
}

pub fn is_saturated_transfer_system(lattice: &FiniteLattice, r: &TransferRelation) -> bool {
    check_saturated_transfer_system(lattice, r).is_ok()
}

/// Smallest saturated transfer system containing the seed pairs (which must
/// refine `≤`): close under transitivity, restriction and saturation until
/// nothing changes.
pub fn close(lattice: &FiniteLattice, seed: &TransferRelation) -> TransferRelation {
    let n = lattice.size();
    let mut r = seed.clone();
    for x in 0..n {
        r.rows[x] = r.rows[x].with(x);
    }
    loop {
        let before = r.clone();
        r.transitive_closure();
        for x in 0..n {
            for z in r.rows[x].iter() {
                for y in 0..n {
                    let (a, b) = (lattice.meet(x, y), lattice.meet(z, y));
                    r.rows[a] = r.rows[a].with(b);
                }
                let between = lattice.order().up_set(x).intersection(lattice.order().down_set(z));
                r.rows[x] = r.rows[x].union(between);
                for y in between.iter() {
                    r.rows[y] = r.rows[y].with(z);
                }
            }
        }
        if r == before {
            return r;
        }
    }
}

fn check_budget(lattice: &FiniteLattice, limits: &Limits) -> Result<()> {
    if lattice.size() > limits.max_st_lattice_size {
        return Err(Error::SizeLimitExceeded {
            what: "saturated transfer system lattice size",
            requested: lattice.size() as u128,
            limit: limits.max_st_lattice_size as u128,
        });
    }
    Ok(())
}

/// Every saturated transfer system on `lattice`, sorted by pair count and
/// then by rows. Each subset of covering pairs is closed to a fixed point and
/// the results are deduplicated.
pub fn enumerate_saturated_transfer_systems(
    lattice: &FiniteLattice,
    limits: &Limits,
) -> Result<Vec<TransferRelation>> {
    check_budget(lattice, limits)?;
    let covers = lattice.order().covers();
    if covers.len() > 30 {
        return Err(Error::SizeLimitExceeded {
            what: "covering pairs",
            requested: covers.len() as u128,
            limit: 30,
        });
    }
    let n = lattice.size();
    let found: HashSet<TransferRelation> = (0..1u64 << covers.len())
        .into_par_iter()
        .map(|bits| {
            let pairs: Vec<(usize, usize)> = SubsetMask::from_bits(bits)
                .iter()
                .map(|i| covers[i])
                .collect();
            close(lattice, &TransferRelation::from_pairs(n, &pairs))
        })
        .collect();
    let mut systems: Vec<TransferRelation> = found.into_iter().collect();
    systems.sort_by(|a, b| a.pair_count().cmp(&b.pair_count()).then_with(|| a.cmp(b)));
    for s in &systems {
        if let Err(v) = check_saturated_transfer_system(lattice, s) {
            return Err(Error::InvalidRelation(format!("closure produced {v:?}")));
        }
    }
    Ok(systems)
}

/// Minimal elements of the connected components of `r`.
pub fn chi(lattice: &FiniteLattice, r: &TransferRelation) -> Result<SubsetMask> {
    let n = lattice.size();
    let mut component: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while c[root] != root {
            root = c[root];
        }
        c[x] = root;
        root
    }
    for x in 0..n {
        for y in r.rows[x].iter() {
            let (a, b) = (find(&mut component, x), find(&mut component, y));
            component[a] = b;
        }
    }
    let minimal: Vec<usize> = (0..n)
        .filter(|&m| (0..n).all(|x| x == m || !r.relates(x, m)))
        .collect();
    let mut roots_seen = HashSet::new();
    for &m in &minimal {
        if !roots_seen.insert(find(&mut component, m)) {
            return Err(Error::NonUniqueMinimal { element: m });
        }
    }
    if let Some(x) = (0..n).find(|&x| !roots_seen.contains(&find(&mut component, x))) {
        return Err(Error::NonUniqueMinimal { element: x });
    }
    Ok(minimal.into_iter().collect())
}

/// Systems `S` on `P × [1]` with bottom layer `q` and top layer `r`,
/// enumerated by their vertical pairs.
fn cylinder_fillings(
    cylinder: &FiniteLattice,
    r: &TransferRelation,
    q: &TransferRelation,
) -> usize {
    let n = r.size();
    let mut base = TransferRelation::discrete(2 * n);
    for x in 0..n {
        for y in q.rows[x].iter() {
            base.rows[2 * x] = base.rows[2 * x].with(2 * y);
        }
        for y in r.rows[x].iter() {
            base.rows[2 * x + 1] = base.rows[2 * x + 1].with(2 * y + 1);
        }
    }
    submasks(SubsetMask::full(n))
        .filter(|vertical| {
            let mut s = base.clone();
            for v in vertical.iter() {
                s.rows[2 * v] = s.rows[2 * v].with(2 * v + 1);
            }
            s.transitive_closure();
            is_saturated_transfer_system(cylinder, &s)
                && s.layer(0, 2) == *q
                && s.layer(1, 2) == *r
        })
        .count()
}

/// `#{S ∈ SatTr(P × [1]) : S_0 = q, S_1 = r}`.
pub fn st_weight(lattice: &FiniteLattice, r: &TransferRelation, q: &TransferRelation) -> Result<BigUint> {
    st_weight_with_limits(lattice, r, q, &Limits::default())
}

pub fn st_weight_with_limits(
    lattice: &FiniteLattice,
    r: &TransferRelation,
    q: &TransferRelation,
    limits: &Limits,
) -> Result<BigUint> {
    check_budget(lattice, limits)?;
    for s in [r, q] {
        if let Err(v) = check_saturated_transfer_system(lattice, s) {
            return Err(Error::InvalidRelation(format!("{v:?}")));
        }
    }
    Ok(BigUint::from(cylinder_fillings(&lattice.cylinder(), r, q)))
}

/// The weighted graph `ST(P)`: `weights[r][q] = st_weight(r, q)`.
#[derive(Clone, Debug)]
pub struct StGraph {
    pub systems: Vec<TransferRelation>,
    pub weights: Vec<Vec<BigUint>>,
}

impl StGraph {
    pub fn build(lattice: &FiniteLattice, limits: &Limits) -> Result<Self> {
        let systems = enumerate_saturated_transfer_systems(lattice, limits)?;
        let cylinder = lattice.cylinder();
        let weights = systems
            .par_iter()
            .map(|r| {
                systems
                    .iter()
                    .map(|q| BigUint::from(cylinder_fillings(&cylinder, r, q)))
                    .collect()
            })
            .collect();
        Ok(StGraph { systems, weights })
    }

    /// `#SatTr(P × [n]) = Σ_{R,Q} (Wⁿ)_{R,Q}` for `n = 0..=n_max`.
    pub fn count_sequence(&self, n_max: usize) -> CountSequence {
        let mut v = vec![BigUint::one(); self.systems.len()];
        let mut values = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n > 0 {
                v = self
                    .weights
                    .iter()
                    .map(|row| row.iter().zip(&v).map(|(w, x)| w * x).sum())
                    .collect();
            }
            values.push(v.iter().sum());
        }
        CountSequence { values }
    }
}

pub fn st_count_sequence(lattice: &FiniteLattice, n_max: usize, limits: &Limits) -> Result<CountSequence> {
    Ok(StGraph::build(lattice, limits)?.count_sequence(n_max))
}

/// Outcome of comparing `ST(P)` with `G(P)` through `χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub systems: usize,
    pub submonoids: usize,
    /// `χ` is injective and hits every submonoid.
    pub bijective: bool,
    /// `R ⊆ R' ⟺ χ(R') ⊆ χ(R)` for all pairs.
    pub order_reversing: bool,
    pub pairs_checked: usize,
    /// `(R, Q, st_weight, w(χR, χQ))` for the first disagreeing pair.
    pub first_mismatch: Option<(usize, usize, BigUint, BigUint)>,
}

impl IsomorphismReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_reversing && self.first_mismatch.is_none()
    }
}

pub fn verify_graph_isomorphism(lattice: &FiniteLattice, limits: &Limits) -> Result<IsomorphismReport> {
    let st = StGraph::build(lattice, limits)?;
    let monoid = lattice.join_monoid();
    let w = TransferMatrix::from_lattice(SubmonoidLattice::with_limits(&monoid, limits)?)?;
    let images = st
        .systems
        .iter()
        .map(|r| chi(lattice, r))
        .collect::<Result<Vec<_>>>()?;
    let index: Vec<Option<usize>> = images.iter().map(|&m| w.lattice().index_of(m)).collect();
    let distinct: HashSet<SubsetMask> = images.iter().copied().collect();
    let bijective = index.iter().all(Option::is_some)
        && distinct.len() == images.len()
        && images.len() == w.len();
    let k = st.systems.len();
    let mut order_reversing = true;
    for a in 0..k {
        for b in 0..k {
            let finer = st.systems[a].refines(&st.systems[b]);
            if finer != images[b].is_subset(images[a]) {
                order_reversing = false;
            }
        }
    }
    let mut first_mismatch = None;
    let mut pairs_checked = 0;
    if bijective {
        'outer: for r in 0..k {
            for q in 0..k {
                pairs_checked += 1;
                let g = w.entry(index[r].expect("bijective"), index[q].expect("bijective"));
                if st.weights[r][q] != *g {
                    first_mismatch = Some((r, q, st.weights[r][q].clone(), g.clone()));
                    break 'outer;
                }
            }
        }
    }
    Ok(IsomorphismReport {
        systems: k,
        submonoids: w.len(),
        bijective,
        order_reversing,
        pairs_checked,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(m: &CayleyMonoid) -> FiniteLattice {
        FiniteLattice::from_monoid(m).unwrap()
    }

    #[test]
    fn extreme_systems_are_valid() {
        for m in [CayleyMonoid::chain(2).unwrap(), CayleyMonoid::boolean(2).unwrap(), CayleyMonoid::n5()] {
            let l = lattice(&m);
            assert!(is_saturated_transfer_system(&l, &TransferRelation::discrete(l.size())));
            assert!(is_saturated_transfer_system(&l, &TransferRelation::full(&l)));
        }
    }

    #[test]
    fn violations_are_reported() {
        let l = lattice(&CayleyMonoid::chain(2).unwrap());
        // 0 R 2 without 0 R 1: restricting along 1 already fails.
        let r = TransferRelation::from_pairs(3, &[(0, 2)]);
        assert_eq!(
            check_saturated_transfer_system(&l, &r),
            Err(Violation::NotRestrictionClosed { x: 0, z: 2, y: 1 })
        );
        // 0 R 2 and 0 R 1 without 1 R 2 is restriction closed but not saturated.
        let r = TransferRelation::from_pairs(3, &[(0, 1), (0, 2)]);
        assert_eq!(
            check_saturated_transfer_system(&l, &r),
            Err(Violation::NotSaturated { x: 0, y: 1, z: 2 })
        );
        let backwards = TransferRelation::from_pairs(3, &[(2, 0)]);
        assert_eq!(
            check_saturated_transfer_system(&l, &backwards),
            Err(Violation::NotRefining { x: 2, y: 0 })
        );
        let grid = lattice(&CayleyMonoid::boolean(2).unwrap());
        // 1 R 3 restricted along 2 gives 0 R 2, which is missing.
        let r = TransferRelation::from_pairs(4, &[(1, 3)]);
        assert!(matches!(
            check_saturated_transfer_system(&grid, &r),
            Err(Violation::NotRestrictionClosed { .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let limits = Limits::default();
        let count = |m: CayleyMonoid| {
            enumerate_saturated_transfer_systems(&lattice(&m), &limits)
                .unwrap()
                .len()
        };
        assert_eq!(count(CayleyMonoid::chain(1).unwrap()), 2);
        assert_eq!(count(CayleyMonoid::chain(2).unwrap()), 4);
        assert_eq!(count(CayleyMonoid::boolean(2).unwrap()), 7);
    }

    #[test]
    fn chi_extremes() {
        let l = lattice(&CayleyMonoid::boolean(2).unwrap());
        assert_eq!(chi(&l, &TransferRelation::discrete(4)).unwrap(), SubsetMask::full(4));
        assert_eq!(chi(&l, &TransferRelation::full(&l)).unwrap(), SubsetMask::singleton(0));
        // Two minima in one component.
        let bad = TransferRelation::from_pairs(4, &[(1, 3), (2, 3)]);
        assert!(matches!(chi(&l, &bad), Err(Error::NonUniqueMinimal { .. })));
    }

    #[test]
    fn not_a_lattice() {
        // Two incomparable maximal elements over a bottom.
        let order = PartialOrder::from_fn(3, |x, y| x == y || x == 0).unwrap();
        assert!(matches!(
            FiniteLattice::from_order(order),
            Err(Error::NotALattice { missing: "join", .. })
        ));
    }

    #[test]
    fn chain_one_weights() {
        let l = lattice(&CayleyMonoid::chain(1).unwrap());
        let eq = TransferRelation::discrete(2);
        let full = TransferRelation::full(&l);
        assert_eq!(st_weight(&l, &eq, &eq).unwrap(), BigUint::from(3u32));
        assert_eq!(st_weight(&l, &full, &full).unwrap(), BigUint::from(2u32));
        assert_eq!(st_weight(&l, &eq, &full).unwrap(), BigUint::from(2u32));
        assert_eq!(st_weight(&l, &full, &eq).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn relation_json() {
        let r = TransferRelation::from_pairs(3, &[(1, 2), (0, 2)]);
        let json = r.to_json();
        assert_eq!(json.pairs, vec![(0, 2), (1, 2)]);
        assert_eq!(TransferRelation::from_json(&json).unwrap(), r);
        let bad = RelationJson { size: 2, pairs: vec![(0, 5)] };
        assert!(TransferRelation::from_json(&bad).is_err());
    }
}
