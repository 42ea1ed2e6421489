//! Submonoid enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::mask::SubsetMask;
use crate::monoid::CayleyMonoid;
use crate::order::PartialOrder;

/// Up to this many elements, submonoids are found by filtering every mask
/// that contains the identity; above it, by a closure search.
pub const MASK_FILTER_MAX_SIZE: usize = 20;

/// Smallest submonoid containing `seed`.
pub fn closure(m: &CayleyMonoid, seed: SubsetMask) -> SubsetMask {
    let mut set = seed.with(m.identity());
    let mut frontier = set;
    loop {
        let mut fresh = SubsetMask::EMPTY;
        for x in frontier.iter() {
            fresh = fresh.union(m.translate(x, set));
        }
        fresh = fresh.difference(set);
        if fresh.is_empty() {
            return set;
        }
        set = set.union(fresh);
        frontier = fresh;
    }
}

/// Whether `a` contains the identity and is closed under the operation.
pub fn is_submonoid(m: &CayleyMonoid, a: SubsetMask) -> bool {
    a.contains(m.identity())
        && a.is_subset(m.all())
        && a.iter().all(|x| {
            a.iter()
                .filter(|&y| y >= x)
                .all(|y| a.contains(m.op(x, y)))
        })
}

/// All submonoids of a monoid, in the canonical order: ascending by
/// cardinality, ties broken by numeric mask value. This is a linear extension
/// of inclusion.
#[derive(Clone, Debug)]
pub struct SubmonoidLattice {
    monoid: CayleyMonoid,
    members: Vec<SubsetMask>,
    index: HashMap<SubsetMask, usize>,
}

impl SubmonoidLattice {
    pub fn new(monoid: &CayleyMonoid) -> Result<Self> {
        Self::with_limits(monoid, &Limits::default())
    }

    pub fn with_limits(monoid: &CayleyMonoid, limits: &Limits) -> Result<Self> {
        let n = monoid.size();
        if n > limits.max_monoid_size {
            return Err(Error::SizeLimitExceeded {
                what: "submonoid enumeration (monoid size)",
                requested: n as u128,
                limit: limits.max_monoid_size as u128,
            });
        }
        let mut members = if n <= MASK_FILTER_MAX_SIZE {
            filter_masks(monoid)
        } else {
            closure_search(monoid, limits.max_submonoids)?
        };
        members.sort_by_key(|m| (m.len(), m.bits()));
        let index = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(SubmonoidLattice {
            monoid: monoid.clone(),
            members,
            index,
        })
    }

    pub fn monoid(&self) -> &CayleyMonoid {
        &self.monoid
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> Result<SubsetMask> {
        self.members.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.members.len(),
        })
    }

    pub fn index_of(&self, mask: SubsetMask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Index of the whole monoid, always the last member.
    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    /// Inclusion on members, indexed canonically. Only defined up to 64
    /// members.
    pub fn inclusion_order(&self) -> Result<PartialOrder> {
        if self.members.len() > crate::mask::MAX_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                what: "submonoid poset size",
                requested: self.members.len() as u128,
                limit: crate::mask::MAX_ELEMENTS as u128,
            });
        }
        PartialOrder::from_fn(self.members.len(), |a, b| {
            self.members[a].is_subset(self.members[b])
        })
    }

    /// Members as hex strings, in canonical order.
    pub fn hex_members(&self) -> Vec<String> {
        self.members.iter().map(|m| m.to_hex()).collect()
    }
}

fn filter_masks(m: &CayleyMonoid) -> Vec<SubsetMask> {
    let n = m.size();
    let e = m.identity();
    let low = (1u64 << e) - 1;
    (0..1u64 << (n - 1))
        .map(|k| SubsetMask::from_bits((k & low) | ((k & !low) << 1) | 1 << e))
        .filter(|&a| is_submonoid(m, a))
        .collect()
}

fn closure_search(m: &CayleyMonoid, cap: usize) -> Result<Vec<SubsetMask>> {
    let start = closure(m, SubsetMask::EMPTY);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for x in m.all().difference(a).iter() {
            let b = closure(m, a.with(x));
            if seen.insert(b) {
                if seen.len() > cap {
                    return Err(Error::SizeLimitExceeded {
                        what: "submonoid count",
                        requested: seen.len() as u128,
                        limit: cap as u128,
                    });
                }
                queue.push_back(b);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
