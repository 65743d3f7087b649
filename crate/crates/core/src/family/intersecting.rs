use super::explicit::ExplicitFamily;
use super::mask::SubsetMask;
use super::window::{FrontierParams, WindowFamily};

/// Anything backed by a membership table the intersection predicates can
/// run on.
pub trait SetFamily {
    fn table(&self) -> &ExplicitFamily;
}

impl SetFamily for ExplicitFamily {
    fn table(&self) -> &ExplicitFamily {
        self
    }
}

/// A window family's intersection properties coincide with those of its
/// window members (the lift to `n = m` is one of its realisations).
impl SetFamily for WindowFamily {
    fn table(&self) -> &ExplicitFamily {
        self.window()
    }
}

/// Whether every choice of at most `r` of `gens` (repetition allowed) meets
/// in at least `t` elements, with `acc` pre-intersected into every choice.
pub(crate) fn meets_from(gens: &[u64], acc: u64, r: u32, t: u32) -> bool {
    fn rec(gens: &[u64], start: usize, acc: u64, left: u32, t: u32) -> bool {
        for k in start..gens.len() {
            let x = acc & gens[k];
            if x.count_ones() < t {
                return false;
            }
            if left > 1 && !rec(gens, k + 1, x, left - 1, t) {
                return false;
            }
        }
        true
    }
    if r == 0 {
        return acc.count_ones() >= t;
    }
    rec(gens, 0, acc, r, t)
}

/// Whether adding `candidate` to a family with minimal members `gens` keeps
/// it `r`-wise `t`-intersecting (assuming it already is).
pub(crate) fn candidate_compatible(gens: &[u64], candidate: u64, r: u32, t: u32) -> bool {
    candidate.count_ones() >= t && meets_from(gens, candidate, r - 1, t)
}

/// `|G₁ ∩ ⋯ ∩ G_r| ≥ t` for all `r`-tuples of members.
///
/// Every member contains a minimal member, so the test runs over minimal
/// members only; any partial intersection already below `t` is a witness.
pub fn is_r_wise_t_intersecting<F: SetFamily + ?Sized>(fam: &F, r: u32, t: u32) -> bool {
    assert!(r >= 1, "r must be positive");
    let gens: Vec<u64> = fam.table().minimal_members().iter().map(|m| m.0).collect();
    meets_from(&gens, u64::MAX, r, t)
}

/// The lexicographically least `(t+ri)`-set `B ⊆ [n]` with
/// `|G ∩ B| ≥ t+(r−1)i` for every member `G`, i.e. a copy of the frontier
/// family containing `fam`. `None` when no copy contains it.
///
/// The search adds elements in increasing order and abandons a branch as
/// soon as some minimal member misses more than `i` elements of `B`.
pub fn embeds_in_frontier_copy(fam: &ExplicitFamily, params: FrontierParams) -> Option<SubsetMask> {
    let n = fam.ground_size();
    let k = params.window_size();
    let need = params.threshold();
    let slack = k - need;
    if k > n {
        return None;
    }
    let gens: Vec<u64> = fam.minimal_members().iter().map(|m| m.0).collect();
    if gens.iter().any(|g| g.count_ones() < need) {
        return None;
    }
    let mut misses = vec![0u32; gens.len()];
    search(1, n, 0, k, &gens, &mut misses, slack).map(SubsetMask)
}

fn search(e: u32, n: u32, chosen: u64, left: u32, gens: &[u64], misses: &mut [u32], slack: u32) -> Option<u64> {
    if left == 0 {
        return Some(chosen);
    }
    if n + 1 - e < left {
        return None;
    }
    let bit = 1u64 << (e - 1);
    let mut ok = true;
    for (g, m) in gens.iter().zip(misses.iter_mut()) {
        if g & bit == 0 {
            *m += 1;
            ok &= *m <= slack;
        }
    }
    let found = if ok { search(e + 1, n, chosen | bit, left - 1, gens, misses, slack) } else { None };
    for (g, m) in gens.iter().zip(misses.iter_mut()) {
        if g & bit == 0 {
            *m -= 1;
        }
    }
    found.or_else(|| search(e + 1, n, chosen, left, gens, misses, slack))
}
