use std::collections::BTreeMap;

use rayon::prelude::*;

use super::canon::{canonicalize, IsoClass};
use crate::error::{Error, Result};
use crate::family::{candidate_compatible, ExplicitFamily, SubsetMask};

/// Default ground-set cap for [`enumerate_maximal`].
pub const ENUMERATION_CAP: u32 = 6;

struct Dfs<'a> {
    n: u32,
    r: u32,
    t: u32,
    all: &'a [u64],
    gens: Vec<u64>,
    found: BTreeMap<Vec<u64>, IsoClass>,
}

fn comparable(a: u64, b: u64) -> bool {
    a & b == a || a & b == b
}

impl Dfs<'_> {
    fn fits(&self, c: u64) -> bool {
        !self.gens.iter().any(|&g| comparable(g, c)) && candidate_compatible(&self.gens, c, self.r, self.t)
    }

    /// `c` is not yet a member and can be added.
    fn addable(&self, c: u64) -> bool {
        !self.gens.iter().any(|&g| g & !c == 0) && candidate_compatible(&self.gens, c, self.r, self.t)
    }

    fn run(&mut self, start: usize) -> Result<()> {
        let mut extended = false;
        for k in start..self.all.len() {
            let c = self.all[k];
            if self.fits(c) {
                extended = true;
                self.gens.push(c);
                self.run(k + 1)?;
                self.gens.pop();
            }
        }
        if !extended && !self.gens.is_empty() && !self.all.iter().any(|&c| self.addable(c)) {
            self.record()?;
        }
        Ok(())
    }

    fn record(&mut self) -> Result<()> {
        let fam = ExplicitFamily::from_members(self.n, self.gens.iter().map(|&g| SubsetMask(g)))?.upward_closure();
        let class = canonicalize(&fam)?;
        let key: Vec<u64> = class.canonical.members().map(|m| m.0).collect();
        self.found.entry(key).or_insert(class);
        Ok(())
    }
}

/// All `(r,t)`-maximal families on `[n]` up to isomorphism, sorted by
/// canonical member list.
///
/// Searches antichains of minimal members extended in ascending mask order;
/// an antichain is recorded when no set at all can be added to its upward
/// closure.
pub fn enumerate_maximal(n: u32, r: u32, t: u32) -> Result<Vec<IsoClass>> {
    enumerate_maximal_capped(n, r, t, ENUMERATION_CAP)
}

pub fn enumerate_maximal_capped(n: u32, r: u32, t: u32, cap: u32) -> Result<Vec<IsoClass>> {
    if n > cap {
        return Err(Error::GroundTooLarge { n, cap });
    }
    if n == 0 || r == 0 || t == 0 {
        return Err(Error::InvalidParameters("n, r and t must be positive".into()));
    }
    let all: Vec<u64> = (0..1u64 << n).filter(|c| c.count_ones() >= t).collect();
    let parts: Vec<Result<BTreeMap<Vec<u64>, IsoClass>>> = (0..all.len())
        .into_par_iter()
        .map(|k| {
            let mut dfs = Dfs { n, r, t, all: &all, gens: Vec::new(), found: BTreeMap::new() };
            if dfs.fits(all[k]) {
                // subtree whose smallest generator is all[k]
                dfs.gens.push(all[k]);
                dfs.run(k + 1)?;
            }
            Ok(dfs.found)
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in parts {
        for (k, v) in part? {
            merged.entry(k).or_insert(v);
        }
    }
    Ok(merged.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shifting::is_maximal;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_maximal(3, 2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_maximal(3, 3, 1).unwrap().len(), 1);
    }

    #[test]
    fn results_are_maximal() {
        for c in enumerate_maximal(4, 2, 2).unwrap() {
            assert!(c.canonical.is_upward_closed());
            assert!(is_maximal(&c.canonical, 2, 2));
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(enumerate_maximal(7, 2, 1).is_err());
        assert!(enumerate_maximal_capped(7, 3, 3, 7).is_ok());
    }
}
