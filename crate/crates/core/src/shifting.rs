//! The shifting operator `σ_{i,j}`, fixpoint iteration and maximal closure.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{candidate_compatible, is_r_wise_t_intersecting, ExplicitFamily, SubsetMask};

/// `s_{i,j}(G)` relative to `fam`: `G − j + i` when `G ∩ {i,j} = {j}` and
/// that set is not already a member, otherwise `G`.
pub fn shift_set(fam: &ExplicitFamily, g: SubsetMask, i: u32, j: u32) -> SubsetMask {
    if g.contains(j) && !g.contains(i) {
        let moved = g.without(j).with(i);
        if !fam.contains(moved) {
            return moved;
        }
    }
    g
}

/// `σ_{i,j}(fam)`. Any ordered pair of distinct elements is allowed.
pub fn shift_once(fam: &ExplicitFamily, i: u32, j: u32) -> Result<ExplicitFamily> {
    let n = fam.ground_size();
    if i == j {
        return Err(Error::InvalidParameters(format!("shift needs i != j, got i = j = {i}")));
    }
    for e in [i, j] {
        if e == 0 || e > n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
    }
    let mut out = fam.clone();
    for g in fam.members() {
        let moved = shift_set(fam, g, i, j);
        if moved != g {
            out.remove(g);
            out.insert(moved);
        }
    }
    Ok(out)
}

/// Fixed by every `σ_{i,j}` with `i < j`.
pub fn is_shifted(fam: &ExplicitFamily) -> bool {
    fam.members().all(|g| g.elements().all(|j| (1..j).all(|i| g.contains(i) || fam.contains(g.without(j).with(i)))))
}

/// `Σ_{G} Σ_{g∈G} g`.
pub fn potential(fam: &ExplicitFamily) -> u64 {
    fam.members().map(|g| g.elements().map(u64::from).sum::<u64>()).sum()
}

/// Order in which `shift_fixpoint` scans the pairs `i < j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftPolicy {
    #[default]
    Lex,
    ReverseLex,
    /// A fresh ChaCha8 shuffle of the pairs after every change.
    Seeded(u64),
}

impl std::fmt::Display for ShiftPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Lex => f.write_str("lex"),
            Self::ReverseLex => f.write_str("reverse-lex"),
            Self::Seeded(seed) => write!(f, "seed:{seed}"),
        }
    }
}

impl std::str::FromStr for ShiftPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(Self::Lex),
            "reverse-lex" => Ok(Self::ReverseLex),
            _ => s.strip_prefix("seed:").and_then(|v| v.parse().ok()).map(Self::Seeded).ok_or_else(|| {
                Error::InvalidParameters(format!("unknown policy {s:?} (expected lex, reverse-lex or seed:<u64>)"))
            }),
        }
    }
}

/// The standard policy set: lex, reverse-lex and seeds `0..seeds`.
pub fn default_policies(seeds: u64) -> Vec<ShiftPolicy> {
    let mut v = vec![ShiftPolicy::Lex, ShiftPolicy::ReverseLex];
    v.extend((0..seeds).map(ShiftPolicy::Seeded));
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftStep {
    pub i: u32,
    pub j: u32,
    /// Potential after the step.
    pub potential: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftTrace {
    pub steps: Vec<ShiftStep>,
    pub initial_potential: u64,
    pub final_potential: u64,
}

#[derive(Serialize)]
struct TraceLine {
    step: usize,
    i: u32,
    j: u32,
    potential: u64,
}

impl ShiftTrace {
    /// Whether the potential strictly decreases along the recorded steps.
    pub fn strictly_decreasing(&self) -> bool {
        let mut prev = self.initial_potential;
        for s in &self.steps {
            if s.potential >= prev {
                return false;
            }
            prev = s.potential;
        }
        prev == self.final_potential
    }

    /// One `{"step","i","j","potential"}` object per line, steps from 1.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (k, s) in self.steps.iter().enumerate() {
            let line = TraceLine { step: k + 1, i: s.i, j: s.j, potential: s.potential };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_json_lines(&self) -> String {
        let mut buf = Vec::new();
        self.write_json_lines(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }
}

fn pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Shift until no `σ_{i,j}` with `i < j` changes the family, rescanning
/// from the start of the policy's order after each change.
pub fn shift_fixpoint(fam: &ExplicitFamily, policy: ShiftPolicy) -> (ExplicitFamily, ShiftTrace) {
    let n = fam.ground_size();
    let mut order = pairs(n);
    let mut rng = match policy {
        ShiftPolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    if policy == ShiftPolicy::ReverseLex {
        order.reverse();
    }
    let mut cur = fam.clone();
    let initial = potential(&cur);
    let mut trace = ShiftTrace { steps: Vec::new(), initial_potential: initial, final_potential: initial };
    'scan: loop {
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        for &(i, j) in &order {
            let next = shift_once(&cur, i, j).expect("pairs are distinct and in range");
            if next != cur {
                cur = next;
                let p = potential(&cur);
                trace.steps.push(ShiftStep { i, j, potential: p });
                trace.final_potential = p;
                continue 'scan;
            }
        }
        return (cur, trace);
    }
}

/// Candidate order for `maximal_closure`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureOrder {
    /// Size descending, then mask ascending.
    #[default]
    SizeDescending,
    /// A ChaCha8 shuffle of the non-members.
    Seeded(u64),
}

fn add_up_set(fam: &mut ExplicitFamily, c: SubsetMask) {
    let n = fam.ground_size();
    let free = SubsetMask::full(n).difference(c).bits();
    let mut sub = free;
    loop {
        fam.insert(SubsetMask(c.bits() | sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

/// A `(r,t)`-maximal superfamily: start from the upward closure and add each
/// candidate (with its supersets) whenever the property survives.
pub fn maximal_closure(fam: &ExplicitFamily, r: u32, t: u32, order: ClosureOrder) -> Result<ExplicitFamily> {
    if r == 0 {
        return Err(Error::InvalidParameters("r must be positive".into()));
    }
    if !is_r_wise_t_intersecting(fam, r, t) {
        return Err(Error::NotIntersecting { r, t });
    }
    let n = fam.ground_size();
    let mut cur = fam.upward_closure();
    let mut gens: Vec<u64> = cur.minimal_members().iter().map(|m| m.0).collect();
    let mut candidates: Vec<SubsetMask> = (0..1u64 << n).map(SubsetMask).filter(|&c| !cur.contains(c)).collect();
    match order {
        ClosureOrder::SizeDescending => candidates.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.bits())),
        ClosureOrder::Seeded(seed) => candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    for c in candidates {
        if !cur.contains(c) && candidate_compatible(&gens, c.bits(), r, t) {
            add_up_set(&mut cur, c);
            gens.push(c.bits());
        }
    }
    Ok(cur)
}

/// `r`-wise `t`-intersecting and no non-member can be added.
pub fn is_maximal(fam: &ExplicitFamily, r: u32, t: u32) -> bool {
    if r == 0 || !is_r_wise_t_intersecting(fam, r, t) {
        return false;
    }
    let gens: Vec<u64> = fam.minimal_members().iter().map(|m| m.0).collect();
    let n = fam.ground_size();
    (0..1u64 << n).map(SubsetMask).all(|c| fam.contains(c) || !candidate_compatible(&gens, c.bits(), r, t))
}
