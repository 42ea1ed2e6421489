use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};

/// A finite partial order, stored as one up-set mask per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    up: Vec<SubsetMask>,
}

impl PartialOrder {
    /// Builds an order from a `leq` predicate and validates it.
    pub fn from_fn(size: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if size > MAX_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                what: "poset size",
                requested: size as u128,
                limit: MAX_ELEMENTS as u128,
            });
        }
        let up = (0..size)
            .map(|x| (0..size).filter(|&y| leq(x, y)).collect())
            .collect();
        let order = PartialOrder { up };
        order.validate()?;
        Ok(order)
    }

    /// Builds an order from a square boolean matrix, `leq[x][y]` meaning `x <= y`.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRelation("order matrix is not square".into()));
        }
        Self::from_fn(n, |x, y| leq[x][y])
    }

    /// The total order `0 < 1 < ... < size - 1`.
    pub fn chain(size: usize) -> Result<Self> {
        Self::from_fn(size, |x, y| x <= y)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::InvalidRelation(format!("not reflexive at {x}")));
            }
            for y in self.up[x].iter() {
                if y != x && self.leq(y, x) {
                    return Err(Error::InvalidRelation(format!(
                        "not antisymmetric at ({x}, {y})"
                    )));
                }
                if !self.up[y].is_subset(self.up[x]) {
                    return Err(Error::InvalidRelation(format!(
                        "not transitive through ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{y : x <= y}`.
    pub fn up_set(&self, x: usize) -> SubsetMask {
        self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down_set(&self, x: usize) -> SubsetMask {
        (0..self.size()).filter(|&y| self.leq(y, x)).collect()
    }

    /// Pairs `(x, y)` with `y` covering `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].without(x).iter() {
                let between = self.up[x].intersection(self.down_set(y));
                if between.len() == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Number of pairs `x < y`.
    pub fn strict_pair_count(&self) -> usize {
        self.up.iter().map(|u| u.len() - 1).sum()
    }

    /// Whether every pair of the given elements is incomparable.
    pub fn is_antichain(&self, set: SubsetMask) -> bool {
        set.iter()
            .all(|x| self.up[x].intersection(set) == SubsetMask::singleton(x))
    }

    /// Whether `set` is closed upwards.
    pub fn is_up_closed(&self, set: SubsetMask) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }
}
