use std::fmt;

use super::mask::SubsetMask;
use crate::error::{Error, Result};

/// Largest ground set an [`ExplicitFamily`] may live on (a `2^22`-bit table
/// is 512 KiB).
pub const EXPLICIT_CAP: u32 = 22;

/// Masks with bit `i` clear, for the in-word steps of the subset transform.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A family of subsets of `[n]`, stored as a `2^n`-bit membership table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExplicitFamily {
    n: u32,
    table: Vec<u64>,
}

fn words_for(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1usize << (n - 6)
    }
}

impl ExplicitFamily {
    pub fn empty(n: u32) -> Result<Self> {
        if n > EXPLICIT_CAP {
            return Err(Error::GroundTooLarge { n, cap: EXPLICIT_CAP });
        }
        Ok(Self { n, table: vec![0; words_for(n)] })
    }

    pub fn power_set(n: u32) -> Result<Self> {
        Self::from_predicate(n, |_| true)
    }

    pub fn from_members<I: IntoIterator<Item = SubsetMask>>(n: u32, members: I) -> Result<Self> {
        let mut fam = Self::empty(n)?;
        let full = SubsetMask::full(n);
        for s in members {
            if !s.is_subset_of(full) {
                let element = s.difference(full).elements().next().unwrap_or(n + 1);
                return Err(Error::ElementOutOfRange { element, n });
            }
            fam.insert(s);
        }
        Ok(fam)
    }

    pub fn from_predicate(n: u32, pred: impl Fn(SubsetMask) -> bool) -> Result<Self> {
        let mut fam = Self::empty(n)?;
        for x in 0..(1u64 << n) {
            if pred(SubsetMask(x)) {
                fam.insert(SubsetMask(x));
            }
        }
        Ok(fam)
    }

    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        let x = s.0;
        if x >> self.n != 0 {
            return false;
        }
        self.table[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub(crate) fn insert(&mut self, s: SubsetMask) {
        let x = s.0;
        debug_assert!(x >> self.n == 0);
        self.table[(x >> 6) as usize] |= 1 << (x & 63);
    }

    pub(crate) fn remove(&mut self, s: SubsetMask) {
        let x = s.0;
        self.table[(x >> 6) as usize] &= !(1 << (x & 63));
    }

    /// A copy with `s` added.
    pub fn with_member(&self, s: SubsetMask) -> Result<Self> {
        if !s.is_subset_of(SubsetMask::full(self.n)) {
            return Err(Error::ElementOutOfRange { element: 64 - s.0.leading_zeros(), n: self.n });
        }
        let mut out = self.clone();
        out.insert(s);
        Ok(out)
    }

    /// A copy with `s` removed.
    pub fn without_member(&self, s: SubsetMask) -> Self {
        let mut out = self.clone();
        if self.contains(s) {
            out.remove(s);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.table.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|&w| w == 0)
    }

    /// Members in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.table.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(SubsetMask(((wi as u64) << 6) | b))
            })
        })
    }

    pub fn table_words(&self) -> &[u64] {
        &self.table
    }

    /// All supersets (within `[n]`) of members.
    pub fn upward_closure(&self) -> Self {
        let mut t = self.table.clone();
        for i in 0..self.n {
            if i < 6 {
                let s = 1u32 << i;
                for w in t.iter_mut() {
                    *w |= (*w & LOW[i as usize]) << s;
                }
            } else {
                let stride = 1usize << (i - 6);
                for w in 0..t.len() {
                    if w & stride != 0 {
                        t[w] |= t[w ^ stride];
                    }
                }
            }
        }
        Self { n: self.n, table: t }
    }

    pub fn is_upward_closed(&self) -> bool {
        self.upward_closure() == *self
    }

    /// Inclusion-minimal members, ascending by mask.
    pub fn minimal_members(&self) -> Vec<SubsetMask> {
        let up = self.upward_closure();
        self.members().filter(|&x| x.elements().all(|e| !up.contains(x.without(e)))).collect()
    }

    pub fn is_subfamily_of(&self, other: &Self) -> bool {
        self.n == other.n && self.table.iter().zip(&other.table).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "ground sets differ");
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a | b).collect();
        Self { n: self.n, table }
    }

    /// Image under a permutation of the ground set (see [`SubsetMask::relabel`]).
    pub fn relabel(&self, perm: &[u32]) -> Self {
        assert_eq!(perm.len(), self.n as usize);
        let mut out = Self { n: self.n, table: vec![0; self.table.len()] };
        for m in self.members() {
            out.insert(m.relabel(perm));
        }
        out
    }

    /// `counts[k]` = number of members of size `k`.
    pub fn size_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n as usize + 1];
        for m in self.members() {
            counts[m.len() as usize] += 1;
        }
        counts
    }
}

impl fmt::Debug for ExplicitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExplicitFamily(n={}, {{", self.n)?;
        for (k, m) in self.members().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if k >= 32 {
                write!(f, "… {} members", self.len())?;
                break;
            }
            write!(f, "{{{m}}}")?;
        }
        f.write_str("})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(list: &[&[u32]]) -> Vec<SubsetMask> {
        list.iter().map(|s| SubsetMask::from_elements(s.iter().copied())).collect()
    }

    #[test]
    fn cap_is_enforced() {
        assert!(ExplicitFamily::empty(22).is_ok());
        assert_eq!(ExplicitFamily::empty(23).unwrap_err(), Error::GroundTooLarge { n: 23, cap: 22 });
    }

    #[test]
    fn closure_and_minimal_small() {
        let f = ExplicitFamily::from_members(3, sets(&[&[1]])).unwrap();
        let up = f.upward_closure();
        assert_eq!(up.len(), 4);
        assert_eq!(up.minimal_members(), sets(&[&[1]]));
        assert!(ExplicitFamily::empty(3).unwrap().minimal_members().is_empty());
    }

    #[test]
    fn closure_matches_brute_force_across_word_boundary() {
        for n in [5u32, 7, 9] {
            let gens = sets(&[&[1, 2], &[3, 5], &[2, 4, 5]]);
            let f = ExplicitFamily::from_members(n, gens.clone()).unwrap();
            let up = f.upward_closure();
            for x in 0..(1u64 << n) {
                let expect = gens.iter().any(|g| g.0 & !x == 0);
                assert_eq!(up.contains(SubsetMask(x)), expect, "n={n} x={x:b}");
            }
            assert_eq!(up.minimal_members(), gens.to_vec());
        }
    }

    #[test]
    fn members_ascending_and_relabel() {
        let f = ExplicitFamily::from_members(8, sets(&[&[8], &[1, 2], &[3]])).unwrap();
        let v: Vec<_> = f.members().collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let g = f.relabel(&[7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(g.contains(SubsetMask::from_elements([1])));
        assert!(g.contains(SubsetMask::from_elements([7, 8])));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ExplicitFamily::from_members(3, sets(&[&[4]])).is_err());
    }
}
