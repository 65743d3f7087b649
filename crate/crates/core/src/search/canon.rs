use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{ExplicitFamily, SubsetMask};

/// Largest ground set accepted by [`canonicalize`].
pub const CANON_CAP: u32 = 8;

/// One isomorphism class of families on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    /// The relabelling whose sorted member list is lexicographically least.
    #[serde(skip)]
    pub canonical: ExplicitFamily,
    pub orbit_size: u64,
    pub generators: Vec<SubsetMask>,
}

impl IsoClass {
    pub fn ground_size(&self) -> u32 {
        self.canonical.ground_size()
    }
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Element invariant: for each member size, how many members of that size
/// contain the element.
fn invariants(members: &[u64], n: u32) -> Vec<Vec<u32>> {
    let mut inv = vec![vec![0u32; n as usize + 1]; n as usize];
    for &m in members {
        let k = m.count_ones() as usize;
        for (e, row) in inv.iter_mut().enumerate() {
            if m >> e & 1 == 1 {
                row[k] += 1;
            }
        }
    }
    inv
}

fn apply(m: u64, perm: &[u32]) -> u64 {
    let mut out = 0u64;
    let mut bits = m;
    while bits != 0 {
        let e = bits.trailing_zeros() as usize;
        out |= 1 << perm[e];
        bits &= bits - 1;
    }
    out
}

struct Search<'a> {
    members: &'a [u64],
    blocks: Vec<Vec<usize>>,
    perm: Vec<u32>,
    best: Option<Vec<u64>>,
    ties: u64,
    scratch: Vec<u64>,
}

impl Search<'_> {
    fn finish(&mut self) {
        self.scratch.clear();
        self.scratch.extend(self.members.iter().map(|&m| apply(m, &self.perm)));
        self.scratch.sort_unstable();
        match &self.best {
            Some(b) if *b < self.scratch => {}
            Some(b) if *b == self.scratch => self.ties += 1,
            _ => {
                self.best = Some(self.scratch.clone());
                self.ties = 1;
            }
        }
    }

    /// Assigns the elements of block `b` (from position `k` on) to the
    /// block's remaining positions in every order.
    fn rec(&mut self, b: usize, k: usize, base: u32, used: u32) {
        if b == self.blocks.len() {
            self.finish();
            return;
        }
        let size = self.blocks[b].len();
        if k == size {
            self.rec(b + 1, 0, base + size as u32, 0);
            return;
        }
        let e = self.blocks[b][k];
        for pos in 0..size as u32 {
            if used >> pos & 1 == 0 {
                self.perm[e] = base + pos;
                self.rec(b, k + 1, base, used | 1 << pos);
            }
        }
    }
}

/// Canonical form and orbit size under permutations of `[n]`.
///
/// Only permutations sending elements with larger invariants to smaller
/// positions are tried; the optimal ones among them form a coset of the
/// automorphism group, so their number is `|Aut|`.
pub fn canonicalize(fam: &ExplicitFamily) -> Result<IsoClass> {
    let n = fam.ground_size();
    if n > CANON_CAP {
        return Err(Error::GroundTooLarge { n, cap: CANON_CAP });
    }
    let members: Vec<u64> = fam.members().map(|m| m.0).collect();
    let inv = invariants(&members, n);
    let mut order: Vec<usize> = (0..n as usize).collect();
    order.sort_by(|&a, &b| inv[b].cmp(&inv[a]).then(a.cmp(&b)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &e in &order {
        match blocks.last_mut() {
            Some(bl) if inv[bl[0]] == inv[e] => bl.push(e),
            _ => blocks.push(vec![e]),
        }
    }
    let mut s = Search {
        members: &members,
        blocks,
        perm: vec![0; n as usize],
        best: None,
        ties: 0,
        scratch: Vec::with_capacity(members.len()),
    };
    s.rec(0, 0, 0, 0);
    let best = s.best.unwrap_or_default();
    let canonical = ExplicitFamily::from_members(n, best.into_iter().map(SubsetMask))?;
    let generators = canonical.minimal_members();
    Ok(IsoClass { orbit_size: factorial(n) / s.ties, generators, canonical })
}

/// Whether two families on the same ground set are isomorphic.
pub fn isomorphic(a: &ExplicitFamily, b: &ExplicitFamily) -> Result<bool> {
    if a.ground_size() != b.ground_size() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonicalize(a)?.canonical == canonicalize(b)?.canonical)
}
