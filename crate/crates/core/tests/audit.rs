use frontier_core::arith::{compare, p0_of_t, rat, Comparison, Scalar};
use frontier_core::audit::{
    audit_case_lemmas, audit_mifr, corpus_from_json_lines, corpus_to_json_lines, ekr_bound, h_param, hole_families,
    measure_bound_rhs, random_corpus, small_h_bound, two_wise_s, CaseLemma, CorpusEntry, EkrKind, Verdict,
};
use frontier_core::family::{frontier_lift, is_r_wise_t_intersecting, ExplicitFamily, FrontierParams, SubsetMask};
use frontier_core::measure::mu;
use frontier_core::search::enumerate_maximal;
use frontier_core::shifting::is_shifted;

const CORPUS: &str = include_str!("../data/mifr_corpus.jsonl");
const CORPUS_SEED: u64 = 20_240_611;

fn corpus() -> Vec<CorpusEntry> {
    corpus_from_json_lines(CORPUS).unwrap()
}

fn frontier_entries() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for t in 1..=6 {
        for i in 1..=2 {
            let params = FrontierParams::new(3, t, i).unwrap();
            let m = params.window_size();
            for n in m..=(m + 1).min(13) {
                out.push(CorpusEntry { t, family: frontier_lift(params, n).unwrap() });
            }
        }
    }
    out
}

/// Minimum of |G ∩ H| over all pairs of members.
fn oracle_s(fam: &ExplicitFamily) -> u32 {
    let members: Vec<SubsetMask> = fam.members().collect();
    members.iter().flat_map(|a| members.iter().map(move |b| a.intersection(*b).len())).min().unwrap()
}

fn oracle_h(fam: &ExplicitFamily, t: u32) -> u32 {
    (0..).find(|&i| fam.members().all(|g| g.intersection(SubsetMask::full(t + i)).len() >= t)).unwrap()
}

/// T_i straight from the definition: traces beyond [t+h−1] of the members
/// whose hole in [t+h−1] is exactly {t+h−i, …, t+h−1}.
fn oracle_hole(fam: &ExplicitFamily, t: u32, h: u32, i: u32) -> Vec<Vec<u32>> {
    let base = t + h - 1;
    let hole: Vec<u32> = (t + h - i..=base).collect();
    let mut traces: Vec<Vec<u32>> = fam
        .members()
        .filter(|g| {
            let missing: Vec<u32> = (1..=base).filter(|&e| !g.contains(e)).collect();
            missing == hole
        })
        .map(|g| g.elements().filter(|&e| e > base).map(|e| e - base).collect())
        .collect();
    traces.sort();
    traces
}

fn probabilities(t: u32) -> Vec<Scalar> {
    let mut ps: Vec<Scalar> = [rat(1, 7), rat(1, 5), rat(1, 3), rat(1, 2)].into_iter().map(Scalar::Rational).collect();
    ps.push(Scalar::Quadratic(p0_of_t(t)).simplify());
    ps
}

#[test]
fn corpus_file_is_reproducible() {
    let regenerated = random_corpus(CORPUS_SEED, 200, 10).unwrap();
    assert_eq!(corpus_to_json_lines(&regenerated), CORPUS);
    let parsed = corpus();
    assert_eq!(parsed, regenerated);
    assert_eq!(parsed.len(), 200);
    for e in &parsed {
        assert!(e.family.ground_size() <= 10);
        assert!(is_shifted(&e.family));
        assert!(is_r_wise_t_intersecting(&e.family, 3, e.t));
    }
}

#[test]
fn corpus_rejects_bad_lines() {
    assert!(corpus_from_json_lines("{\"t\":1,\"n\":3,\"generators\":[[4]]}\n").is_err());
    assert!(corpus_from_json_lines("{\"t\":1}\n").is_err());
    assert!(random_corpus(1, 1, 13).is_err());
}

#[test]
fn decomposition_matches_definitions() {
    for e in corpus().iter().chain(frontier_entries().iter()) {
        let (fam, t) = (&e.family, e.t);
        let s = two_wise_s(fam).unwrap();
        assert_eq!(s, oracle_s(fam));
        let hp = h_param(fam, t).unwrap();
        assert_eq!(hp.h, oracle_h(fam, t));
        assert!(hp.h >= 1);
        let w = hp.witness_h0.unwrap();
        assert!(fam.contains(w));
        assert_eq!(w.intersection(SubsetMask::full(t + hp.h - 1)), SubsetMask::full(t - 1));
        let d = hole_families(fam, t, hp.h).unwrap();
        assert_eq!(d.hole_ground(), fam.ground_size() - (t + hp.h - 1));
        for (i, hole) in d.holes.iter().enumerate() {
            let mine: Vec<Vec<u32>> = hole.window().members().map(|m| m.elements().collect()).collect();
            let mut mine = mine;
            mine.sort();
            assert_eq!(mine, oracle_hole(fam, t, hp.h, i as u32), "t={t} i={i}");
        }
    }
}

#[test]
fn hole_claims_and_measure_bound_hold() {
    let mut strengthened = 0;
    for e in corpus().iter().chain(frontier_entries().iter()) {
        let (fam, t) = (&e.family, e.t);
        let report = audit_mifr(fam, t).unwrap();
        assert!(report.all_hold(), "{}", report.to_table());
        strengthened += report
            .steps
            .iter()
            .filter(|s| s.claim_id == "mifr.t_h_strengthened" && s.verdict == Verdict::Holds)
            .count();
        let d = hole_families(fam, t, h_param(fam, t).unwrap().h).unwrap();
        for p in probabilities(t) {
            let lhs = mu(fam, &p).unwrap();
            let rhs = measure_bound_rhs(&d, &p).unwrap();
            let c = compare(&lhs, &rhs, 200);
            assert!(matches!(c, Comparison::Less | Comparison::Equal), "t={t} p={p}: {lhs} vs {rhs}");
        }
    }
    assert!(strengthened > 0);
}

#[test]
fn frontier_lifts_meet_the_measure_bound_with_equality() {
    for e in frontier_entries() {
        let d = hole_families(&e.family, e.t, h_param(&e.family, e.t).unwrap().h).unwrap();
        let p = Scalar::Rational(rat(1, 5));
        assert_eq!(mu(&e.family, &p).unwrap(), measure_bound_rhs(&d, &p).unwrap());
    }
}

#[test]
fn ekr_bounds_hold_on_all_small_maximal_families() {
    for n in 2..=6u32 {
        for s in 1..=3u32 {
            if s > n {
                continue;
            }
            for class in enumerate_maximal(n, 2, s).unwrap() {
                let fam = &class.canonical;
                let grid_power = [rat(1, i64::from(s) + 1), rat(1, i64::from(s) + 2), rat(1, 10)];
                for p in grid_power {
                    let p = Scalar::Rational(p);
                    let m = mu(fam, &p).unwrap();
                    let bound = ekr_bound(EkrKind::Power, s, &p).unwrap();
                    assert_ne!(compare(&m, &bound, 100), Comparison::Greater, "n={n} s={s} p={p}");
                }
                for p in [rat(1, 2), rat(2, 5), rat(1, 4)] {
                    let p = Scalar::Rational(p);
                    let m = mu(fam, &p).unwrap();
                    let bound = ekr_bound(EkrKind::Ratio, s, &p).unwrap();
                    assert_ne!(compare(&m, &bound, 100), Comparison::Greater, "n={n} s={s} p={p}");
                }
            }
        }
    }
    assert!(ekr_bound(EkrKind::Power, 2, &Scalar::Rational(rat(1, 2))).is_err());
    assert!(ekr_bound(EkrKind::Ratio, 2, &Scalar::Rational(rat(3, 5))).is_err());
}

#[test]
fn case_audits_match_hand_values() {
    let h2 = audit_case_lemmas(CaseLemma::H2, 10..=10, 200).unwrap();
    assert_eq!(h2.verdict("h2.bound", 10), Some(Verdict::Holds));
    let h3 = audit_case_lemmas(CaseLemma::H3, 3..=4, 200).unwrap();
    assert_eq!(h3.verdict("h3.bound", 4), Some(Verdict::Holds));
    assert_eq!(h3.verdict("h3.bound", 3), Some(Verdict::Fails));
    let h1 = audit_case_lemmas(CaseLemma::H1, 14..=15, 200).unwrap();
    assert_eq!(h1.verdict("h1.bound", 14), Some(Verdict::Fails));
    assert_eq!(h1.verdict("h1.bound", 15), Some(Verdict::Holds));
    // p0(28) = 1/5 exactly: the threshold holds with equality
    let at28 = audit_case_lemmas(CaseLemma::H1, 27..=28, 200).unwrap();
    assert_eq!(at28.verdict("h1.ekr_threshold", 27), Some(Verdict::Fails));
    assert_eq!(at28.verdict("h1.ekr_threshold", 28), Some(Verdict::Holds));
    assert!(audit_case_lemmas(CaseLemma::H1, 0..=3, 200).is_err());
    let (lo, hi) = (5, 4);
    assert!(audit_case_lemmas(CaseLemma::H1, lo..=hi, 200).is_err());
}

#[test]
fn small_h_bounds_have_exact_values() {
    assert_eq!(small_h_bound(2, 10).unwrap().as_rational(), Some(&rat(1057, 2187)));
    assert_eq!(small_h_bound(3, 4).unwrap().as_rational(), Some(&rat(240, 512)));
    // p0(4) = 1/2: p + t p³ q = 1/2 + 4 · 1/8 · 1/2
    assert_eq!(small_h_bound(1, 4).unwrap().as_rational(), Some(&rat(3, 4)));
    assert!(small_h_bound(4, 10).is_err());
}

#[test]
fn mid_case_has_no_undecided_links_on_a_sample() {
    let r = audit_case_lemmas(CaseLemma::Mid, 111..=400, 200).unwrap();
    assert_eq!(r.undecided(), 0);
    assert_eq!(r.claim("mid.end_to_end").unwrap().fails, 0);
    assert_eq!(r.claim("mid.point_seven").unwrap().fails, 0);
    assert_eq!(r.claim("mid.f_ge_one").unwrap().asserted_from, None);
    let half = Scalar::Rational(rat(1, 2));
    assert_eq!(compare(&Scalar::Quadratic(p0_of_t(111)), &half, 50), Comparison::Less);
}
