//! Ideals of submonoids and the weight function of the submonoid graph.
//!
//! For a commutative monoid `A` with identity, a subset `I ⊆ A` satisfies
//! `I·A = I` exactly when it is closed upwards under divisibility
//! `x ⪯ y ⟺ y ∈ x·A`: the identity gives `I ⊆ I·A`, and `I·A ⊆ I` says that
//! every multiple of a member is a member. Divisibility is a preorder, so
//! ideals are the up-sets of its condensation (mutually divisible elements
//! collapse into one class). In the idempotent case `⪯` is the join order
//! restricted to `A` and every class is a singleton.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::lattice::is_submonoid;
use crate::mask::SubsetMask;
use crate::monoid::CayleyMonoid;
use crate::order::PartialOrder;

/// Divisibility on a submonoid: `multiples[x] = x·A` for each `x ∈ A`.
#[derive(Clone, Debug)]
pub struct DivisibilityPreorder {
    elements: SubsetMask,
    multiples: Vec<SubsetMask>,
}

impl DivisibilityPreorder {
    pub fn new(m: &CayleyMonoid, a: SubsetMask) -> Self {
        let multiples = (0..m.size())
            .map(|x| {
                if a.contains(x) {
                    m.translate(x, a)
                } else {
                    SubsetMask::EMPTY
                }
            })
            .collect();
        DivisibilityPreorder {
            elements: a,
            multiples,
        }
    }

    pub fn elements(&self) -> SubsetMask {
        self.elements
    }

    /// `x ⪯ y`, i.e. `y` is a multiple of `x` within `A`.
    pub fn divides(&self, x: usize, y: usize) -> bool {
        self.multiples[x].contains(y)
    }

    pub fn multiples(&self, x: usize) -> SubsetMask {
        self.multiples[x]
    }

    /// Collapses mutually divisible elements into classes.
    pub fn condense(&self) -> CondensedPreorder {
        let mut class_of = vec![usize::MAX; self.multiples.len()];
        let mut classes: Vec<SubsetMask> = Vec::new();
        for x in self.elements.iter() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let class: SubsetMask = self
                .multiples[x]
                .iter()
                .filter(|&y| self.divides(y, x))
                .collect();
            for y in class.iter() {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c.first().expect("non-empty")).collect();
        let order = PartialOrder::from_fn(classes.len(), |c, d| self.divides(reps[c], reps[d]))
            .expect("condensed divisibility is a partial order");
        let strictly_above = (0..classes.len())
            .map(|c| order.up_set(c).without(c))
            .collect();
        let down = (0..classes.len()).map(|c| order.down_set(c)).collect();
        CondensedPreorder {
            classes,
            class_of,
            order,
            strictly_above,
            down,
        }
    }
}

/// Strongly connected classes of a divisibility preorder with the induced
/// partial order. Class sets are masks over class indices.
#[derive(Clone, Debug)]
pub struct CondensedPreorder {
    classes: Vec<SubsetMask>,
    class_of: Vec<usize>,
    order: PartialOrder,
    strictly_above: Vec<SubsetMask>,
    down: Vec<SubsetMask>,
}

impl CondensedPreorder {
    pub fn classes(&self) -> &[SubsetMask] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn all_classes(&self) -> SubsetMask {
        SubsetMask::full(self.classes.len())
    }

    /// Classes meeting `elements`.
    pub fn classes_of(&self, elements: SubsetMask) -> SubsetMask {
        elements
            .iter()
            .filter(|&x| self.class_of.get(x).is_some_and(|&c| c != usize::MAX))
            .map(|x| self.class_of[x])
            .collect()
    }

    /// Union of the given classes, as an element mask.
    pub fn expand(&self, class_set: SubsetMask) -> SubsetMask {
        class_set
            .iter()
            .fold(SubsetMask::EMPTY, |acc, c| acc.union(self.classes[c]))
    }

    pub fn up_closure(&self, class_set: SubsetMask) -> SubsetMask {
        class_set
            .iter()
            .fold(SubsetMask::EMPTY, |acc, c| acc.union(self.order.up_set(c)))
    }

    /// Number of up-closed class sets containing the up-closed set `required`.
    ///
    /// These are in bijection with the up-sets of the subposet on the
    /// complement of `required`, which are counted by branching on a maximal
    /// element: either it is in the up-set (drop it and recurse) or it is not
    /// (drop everything below it and recurse).
    pub fn count_upsets_containing(&self, required: SubsetMask) -> BigUint {
        BigUint::from(UpsetCounter::new(self).count_containing(required))
    }

    /// All up-closed class sets, expanded to element masks, in no particular order.
    pub fn upsets(&self) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        self.collect_upsets(self.all_classes(), SubsetMask::EMPTY, &mut out);
        out
    }

    fn collect_upsets(&self, remaining: SubsetMask, chosen: SubsetMask, out: &mut Vec<SubsetMask>) {
        match self.maximal_in(remaining) {
            None => out.push(self.expand(chosen)),
            Some(c) => {
                self.collect_upsets(remaining.without(c), chosen.with(c), out);
                self.collect_upsets(remaining.difference(self.down[c]), chosen, out);
            }
        }
    }

    /// Highest-index class of `remaining` with nothing above it in `remaining`.
    fn maximal_in(&self, remaining: SubsetMask) -> Option<usize> {
        let mut rest = remaining;
        while let Some(c) = rest.last() {
            if self.strictly_above[c].intersection(remaining).is_empty() {
                return Some(c);
            }
            rest = rest.without(c);
        }
        None
    }
}

/// Memoized up-set counter over one condensed preorder.
#[derive(Debug)]
pub struct UpsetCounter<'a> {
    poset: &'a CondensedPreorder,
    memo: HashMap<SubsetMask, u128>,
}

impl<'a> UpsetCounter<'a> {
    pub fn new(poset: &'a CondensedPreorder) -> Self {
        UpsetCounter {
            poset,
            memo: HashMap::new(),
        }
    }

    pub fn count_containing(&mut self, required: SubsetMask) -> u128 {
        debug_assert!(
            self.poset.up_closure(required) == required,
            "required class set must be up-closed"
        );
        self.count(self.poset.all_classes().difference(required))
    }

    /// Up-sets of the subposet induced on `remaining`.
    fn count(&mut self, remaining: SubsetMask) -> u128 {
        let Some(c) = self.poset.maximal_in(remaining) else {
            return 1;
        };
        if let Some(&v) = self.memo.get(&remaining) {
            return v;
        }
        let with_c = self.count(remaining.without(c));
        let without_c = self.count(remaining.difference(self.poset.down[c]));
        let total = with_c + without_c;
        self.memo.insert(remaining, total);
        total
    }
}

/// Ideals of a fixed submonoid `A`, ready to answer weight queries `w(A, B)`.
#[derive(Debug)]
pub struct IdealStructure {
    submonoid: SubsetMask,
    preorder: DivisibilityPreorder,
    condensed: CondensedPreorder,
}

impl IdealStructure {
    pub fn new(m: &CayleyMonoid, a: SubsetMask) -> Result<Self> {
        ensure_submonoid(m, a)?;
        let preorder = DivisibilityPreorder::new(m, a);
        let condensed = preorder.condense();
        Ok(IdealStructure {
            submonoid: a,
            preorder,
            condensed,
        })
    }

    pub fn submonoid(&self) -> SubsetMask {
        self.submonoid
    }

    pub fn preorder(&self) -> &DivisibilityPreorder {
        &self.preorder
    }

    pub fn condensed(&self) -> &CondensedPreorder {
        &self.condensed
    }

    /// Class set that every ideal `I` with `I ∪ B = A` must contain.
    fn required_for(&self, b: SubsetMask) -> SubsetMask {
        let missing = self.submonoid.difference(b);
        self.condensed
            .up_closure(self.condensed.classes_of(missing))
    }

    /// `w(A, B)` with a caller-provided counter, so one memo table serves a
    /// whole row of the transfer matrix.
    pub fn weight_with(&self, counter: &mut UpsetCounter<'_>, b: SubsetMask) -> u128 {
        if !b.is_subset(self.submonoid) {
            return 0;
        }
        counter.count_containing(self.required_for(b))
    }

    pub fn counter(&self) -> UpsetCounter<'_> {
        UpsetCounter::new(&self.condensed)
    }

    pub fn ideal_count(&self) -> BigUint {
        self.condensed.count_upsets_containing(SubsetMask::EMPTY)
    }

    pub fn ideals(&self) -> Vec<SubsetMask> {
        self.condensed.upsets()
    }
}

fn ensure_submonoid(m: &CayleyMonoid, a: SubsetMask) -> Result<()> {
    if is_submonoid(m, a) {
        Ok(())
    } else {
        Err(Error::NotASubmonoid { mask: a.to_hex() })
    }
}

/// All ideals of the submonoid `a` (with `a` as the ambient monoid),
/// including `∅` and `a`.
pub fn enumerate_ideals(m: &CayleyMonoid, a: SubsetMask) -> Result<Vec<SubsetMask>> {
    let mut ideals = IdealStructure::new(m, a)?.ideals();
    ideals.sort_by_key(|i| (i.len(), i.bits()));
    Ok(ideals)
}

/// `w(A, B) = #{I ideal of A : I ∪ B = A}`; zero when `B ⊄ A`.
pub fn weight(m: &CayleyMonoid, a: SubsetMask, b: SubsetMask) -> Result<BigUint> {
    ensure_submonoid(m, b)?;
    let ideals = IdealStructure::new(m, a)?;
    let mut counter = ideals.counter();
    Ok(BigUint::from(ideals.weight_with(&mut counter, b)))
}
