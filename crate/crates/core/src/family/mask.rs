use std::fmt;

use serde::{Deserialize, Serialize};

/// One subset of a ground set `[n]`, element `i` stored in bit `i − 1`.
///
/// The ground-set size lives in the owning family; a mask on its own only
/// promises that no bit at or above position 62 is set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// `[n] = {1, …, n}`.
    pub fn full(n: u32) -> Self {
        debug_assert!(n <= 62);
        SubsetMask((1u64 << n) - 1)
    }

    /// `{a, a+1, …, b}`; empty when `a > b`.
    pub fn range(a: u32, b: u32) -> Self {
        if a > b || b == 0 {
            return Self::EMPTY;
        }
        let a = a.max(1);
        SubsetMask(Self::full(b).0 & !Self::full(a - 1).0)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |m, e| {
            debug_assert!((1..=62).contains(&e));
            m | (1u64 << (e - 1))
        }))
    }

    pub fn singleton(e: u32) -> Self {
        SubsetMask(1u64 << (e - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=62).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn with(self, e: u32) -> Self {
        self.union(Self::singleton(e))
    }

    pub fn without(self, e: u32) -> Self {
        self.difference(Self::singleton(e))
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(e)
        })
    }

    /// Image under a relabelling `perm`, where `perm[i]` is the new
    /// 0-based position of the element in 0-based position `i`.
    pub fn relabel(self, perm: &[u32]) -> Self {
        SubsetMask(self.elements().fold(0, |m, e| m | (1u64 << perm[(e - 1) as usize])))
    }
}

impl fmt::Display for SubsetMask {
    /// Space-separated sorted elements, e.g. `1 3 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}
