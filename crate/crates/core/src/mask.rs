use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest element count a [`SubsetMask`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices of some ambient monoid, stored as a bit array.
///
/// Bit `i` is set when element `i` belongs to the subset. Bits at or above
/// the ambient size are always zero.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// The mask `{0, 1, ..., size - 1}`.
    pub fn full(size: usize) -> Self {
        debug_assert!(size <= MAX_ELEMENTS);
        if size == MAX_ELEMENTS {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << size) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        SubsetMask(1u64 << x)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(SubsetMask::EMPTY, |m, x| m.with(x))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_ELEMENTS && self.0 >> x & 1 == 1
    }

    #[must_use]
    pub fn with(self, x: usize) -> Self {
        SubsetMask(self.0 | 1u64 << x)
    }

    #[must_use]
    pub fn without(self, x: usize) -> Self {
        SubsetMask(self.0 & !(1u64 << x))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Lower-case hex with a `0x` prefix.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        u64::from_str_radix(digits, 16)
            .map(SubsetMask)
            .map_err(|e| Error::Parse(format!("bad mask {s:?}: {e}")))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl IntoIterator for SubsetMask {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SubsetMask::from_elements(iter)
    }
}

/// Iterator over the set bits of a mask.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterates every submask of `mask`, including the empty set and `mask` itself.
pub fn submasks(mask: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let m = mask.bits();
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(SubsetMask(cur))
    })
}

/// A mask together with the size of its ambient monoid, the serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskRecord {
    pub size: usize,
    pub mask: String,
}

impl MaskRecord {
    pub fn new(size: usize, mask: SubsetMask) -> Self {
        MaskRecord {
            size,
            mask: mask.to_hex(),
        }
    }

    pub fn decode(&self) -> Result<SubsetMask> {
        let mask = SubsetMask::from_hex(&self.mask)?;
        if self.size > MAX_ELEMENTS || !mask.is_subset(SubsetMask::full(self.size)) {
            return Err(Error::Parse(format!(
                "mask {} has bits outside an ambient set of size {}",
                self.mask, self.size
            )));
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_iteration_is_ascending() {
        let m = SubsetMask::from_elements([5, 0, 3]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.first(), Some(0));
        assert_eq!(m.last(), Some(5));
    }

    #[test]
    fn submask_enumeration_is_exhaustive() {
        let m = SubsetMask::from_elements([1, 4, 6]);
        let subs: Vec<_> = submasks(m).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(m)));
        assert_eq!(submasks(SubsetMask::EMPTY).count(), 1);
    }

    #[test]
    fn hex_record_rejects_out_of_range_bits() {
        let rec = MaskRecord::new(3, SubsetMask::from_bits(0b101));
        assert_eq!(rec.mask, "0x5");
        assert_eq!(rec.decode().unwrap(), SubsetMask::from_bits(5));
        let bad = MaskRecord {
            size: 2,
            mask: "0x5".into(),
        };
        assert!(bad.decode().is_err());
        assert_eq!(SubsetMask::full(64).len(), 64);
    }
}
