//! Brute-force oracle for maximal families on tiny ground sets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use frontier_core::family::ExplicitFamily;

/// Family on `[n]`, `n ≤ 5`, as a 2^n-bit indicator over subset masks.
pub type Indicator = u64;

/// Every upset on `[n]`: an upset splits into the part avoiding `n` and the
/// traces of the part containing `n`, two upsets on `[n−1]` with `A ⊆ B`.
pub fn upsets(n: u32) -> Vec<Indicator> {
    if n == 0 {
        return vec![0, 1];
    }
    let prev = upsets(n - 1);
    let half = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &a in &prev {
        for &b in &prev {
            if a & !b == 0 {
                out.push(a | (b << half));
            }
        }
    }
    out
}

pub fn members(ind: Indicator, n: u32) -> Vec<u64> {
    (0..1u64 << n).filter(|&s| ind >> s & 1 == 1).collect()
}

/// All r-tuples, repetition allowed.
pub fn r_wise(ind: Indicator, n: u32, r: u32, t: u32) -> bool {
    fn rec(ms: &[u64], from: usize, acc: u64, left: u32, t: u32) -> bool {
        if left == 0 {
            return acc.count_ones() >= t;
        }
        (from..ms.len()).all(|k| rec(ms, k, acc & ms[k], left - 1, t))
    }
    rec(&members(ind, n), 0, (1u64 << n) - 1, r, t)
}

pub fn permute(ind: Indicator, n: u32, perm: &[u32]) -> Indicator {
    members(ind, n).into_iter().fold(0, |acc, s| {
        let img = (0..n).filter(|&e| s >> e & 1 == 1).fold(0u64, |m, e| m | 1 << perm[e as usize]);
        acc | 1 << img
    })
}

pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n as usize {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Orbit sizes of the maximal (r,t)-intersecting families on `[n]`, keyed by
/// the least indicator in each orbit.
pub fn oracle_classes(n: u32, r: u32, t: u32) -> BTreeMap<Indicator, u64> {
    let good: Vec<Indicator> = upsets(n).into_iter().filter(|&u| r_wise(u, n, r, t)).collect();
    let maximal: Vec<Indicator> =
        good.iter().copied().filter(|&u| !good.iter().any(|&v| v != u && u & !v == 0)).collect();
    let perms = permutations(n);
    let mut classes = BTreeMap::new();
    for &m in &maximal {
        let orbit: BTreeSet<Indicator> = perms.iter().map(|p| permute(m, n, p)).collect();
        classes.insert(*orbit.first().unwrap(), orbit.len() as u64);
    }
    classes
}

pub fn indicator(fam: &ExplicitFamily) -> Indicator {
    fam.members().fold(0, |acc, g| acc | 1 << g.bits())
}
