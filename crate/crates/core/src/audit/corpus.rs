//! Fixed-seed corpus of shifted `(3,t)`-maximal families with `h ≥ 1`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{candidate_compatible, ExplicitFamily, SubsetMask};
use crate::shifting::{is_maximal, is_shifted, maximal_closure, shift_fixpoint, ClosureOrder, ShiftPolicy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub t: u32,
    pub family: ExplicitFamily,
}

#[derive(Serialize, Deserialize)]
struct Line {
    t: u32,
    n: u32,
    generators: Vec<Vec<u32>>,
}

fn random_seed_family(rng: &mut ChaCha8Rng, n: u32, t: u32) -> ExplicitFamily {
    let mut gens: Vec<u64> = Vec::new();
    let tries = rng.gen_range(1..=5);
    for _ in 0..tries {
        let density = rng.gen_range(0.5..0.95);
        let g = SubsetMask::from_elements((1..=n).filter(|_| rng.gen_bool(density)));
        if candidate_compatible(&gens, g.bits(), 3, t) {
            gens.push(g.bits());
        }
    }
    ExplicitFamily::from_members(n, gens.into_iter().map(SubsetMask)).expect("n <= cap")
}

fn stabilise(mut fam: ExplicitFamily, t: u32) -> Option<ExplicitFamily> {
    for _ in 0..8 {
        fam = maximal_closure(&fam, 3, t, ClosureOrder::SizeDescending).ok()?;
        fam = shift_fixpoint(&fam, ShiftPolicy::Lex).0;
        if is_maximal(&fam, 3, t) {
            return Some(fam);
        }
    }
    None
}

fn outside_star(fam: &ExplicitFamily, t: u32) -> bool {
    let star = SubsetMask::full(t);
    fam.minimal_members().iter().any(|g| !star.is_subset_of(*g))
}

/// `count` distinct shifted, `(3,t)`-maximal families with `h ≥ 1` on
/// `n ≤ n_max`, for `t ∈ 1..=3`. Deterministic in `seed`.
pub fn random_corpus(seed: u64, count: usize, n_max: u32) -> Result<Vec<CorpusEntry>> {
    if !(4..=12).contains(&n_max) {
        return Err(Error::InvalidParameters(format!("n_max must be in 4..=12, got {n_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::Precondition(format!("only {} distinct families found", out.len())));
        }
        let t = rng.gen_range(1..=3u32.min(n_max - 3));
        let n = rng.gen_range(t + 3..=n_max);
        let seed_fam = random_seed_family(&mut rng, n, t);
        let Some(fam) = stabilise(seed_fam, t) else { continue };
        if !is_shifted(&fam) || !outside_star(&fam, t) {
            continue;
        }
        let key = (t, n, fam.minimal_members().iter().map(|m| m.0).collect::<Vec<_>>());
        if seen.insert(key) {
            out.push(CorpusEntry { t, family: fam });
        }
    }
    Ok(out)
}

/// One `{"t","n","generators"}` object per line; generators are the minimal
/// members.
pub fn corpus_to_json_lines(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let line = Line {
            t: e.t,
            n: e.family.ground_size(),
            generators: e.family.minimal_members().iter().map(|g| g.elements().collect()).collect(),
        };
        out.push_str(&serde_json::to_string(&line).expect("serializes"));
        out.push('\n');
    }
    out
}

pub fn corpus_from_json_lines(text: &str) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            let line: Line =
                serde_json::from_str(l).map_err(|e| Error::Parse { line: k + 1, message: e.to_string() })?;
            let mut gens = Vec::with_capacity(line.generators.len());
            for g in line.generators {
                if let Some(&e) = g.iter().find(|&&e| e == 0 || e > line.n) {
                    return Err(Error::ElementOutOfRange { element: e, n: line.n });
                }
                gens.push(SubsetMask::from_elements(g));
            }
            let family = ExplicitFamily::from_members(line.n, gens)?.upward_closure();
            Ok(CorpusEntry { t: line.t, family })
        })
        .collect()
}
