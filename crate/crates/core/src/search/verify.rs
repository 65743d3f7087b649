use num_traits::Zero;

use super::canon::{canonicalize, IsoClass};
use super::enumerate::{enumerate_maximal_capped, ENUMERATION_CAP};
use crate::arith::{compare, format_rational, p0_of_t, rat, Comparison, Rational, Scalar};
use crate::audit::{claim, AuditReport, AuditStep, ClaimSpec, Verdict};
use crate::error::{Error, Result};
use crate::family::{embeds_in_frontier_copy, frontier_lift, ExplicitFamily, FrontierParams};
use crate::measure::{frontier_closed_form, mu_rational};
use crate::shifting::{shift_fixpoint, shift_once, ShiftPolicy};

pub const RECOGNITION_CLAIMS: &[ClaimSpec] = &[
    claim(
        "recognition.single_shift",
        "if a single shift of G lies inside F_i^t(r) then G is a copy of F_i^t(r); lhs = counterexamples",
        Some(0),
    ),
    claim(
        "recognition.fixpoint",
        "if a shifted family obtained from G lies inside F_i^t(r) then G is a copy of F_i^t(r); lhs = counterexamples",
        Some(0),
    ),
];

pub const STABILITY_CLAIMS: &[ClaimSpec] = &[
    claim(
        "stability.trichotomy",
        "mu_p(G) < p^t/2, or G inside a copy of F_0^t or F_1^t, or shifted G inside F_2^t",
        Some(241),
    ),
    claim(
        "stability.theorem_delta",
        "mu_p(G) >= (1/2 + delta) p^t implies G inside a copy of F_0^t or F_1^t",
        Some(241),
    ),
    claim(
        "stability.conjecture",
        "mu_p(G) > max(p^t/2, mu_p(F_1^t), mu_p(F_2^t)) implies G inside a copy of F_0^t",
        None,
    ),
];

pub(crate) fn describe(fam: &ExplicitFamily) -> String {
    let gens: Vec<String> = fam.minimal_members().iter().map(|g| format!("{{{g}}}")).collect();
    format!("n={} generators {}", fam.ground_size(), gens.join(" "))
}

fn policy_name(p: ShiftPolicy) -> String {
    match p {
        ShiftPolicy::Lex => "lex".into(),
        ShiftPolicy::ReverseLex => "reverse-lex".into(),
        ShiftPolicy::Seeded(s) => format!("seed:{s}"),
    }
}

fn count_step(claim: &str, t: u32, triggers: usize, failures: usize, witness: Option<String>) -> AuditStep {
    let verdict = if triggers == 0 {
        Verdict::NotApplicable
    } else if failures == 0 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    AuditStep {
        claim_id: claim.into(),
        t,
        verdict,
        lhs_decimal_50: failures.to_string(),
        rhs_decimal_50: "0".into(),
        witness,
    }
}

/// Checks the recognition statements for `F_i^t(r)` on every
/// `(r,t)`-maximal class on `[n]`: all single shifts `σ_{a,b}` and the
/// fixpoint under each policy.
pub fn verify_recognition(n: u32, r: u32, t: u32, i: u32, policies: &[ShiftPolicy]) -> Result<AuditReport> {
    let classes = enumerate_maximal_capped(n, r, t, ENUMERATION_CAP)?;
    verify_recognition_on(&classes, n, r, t, i, policies)
}

pub fn verify_recognition_on(
    classes: &[IsoClass],
    n: u32,
    r: u32,
    t: u32,
    i: u32,
    policies: &[ShiftPolicy],
) -> Result<AuditReport> {
    let params = FrontierParams::new(r, t, i)?;
    if params.window_size() > n {
        return Err(Error::Precondition(format!("F_{i}^{t}({r}) needs n >= {}, got n = {n}", params.window_size())));
    }
    let target = frontier_lift(params, n)?;
    let target_canon = canonicalize(&target)?.canonical;
    let mut steps = Vec::new();
    for (k, class) in classes.iter().enumerate() {
        let g = &class.canonical;
        let is_copy = class.canonical == target_canon;
        let (mut triggers, mut failures, mut witness) = (0, 0, None);
        for a in 1..=n {
            for b in (1..=n).filter(|&b| b != a) {
                let h = shift_once(g, a, b)?;
                if h.is_subfamily_of(&target) {
                    triggers += 1;
                    let ok = is_copy && embeds_in_frontier_copy(g, params).is_some() && h == target;
                    if !ok {
                        failures += 1;
                        witness.get_or_insert_with(|| format!("class {k}: {} shift ({a},{b})", describe(g)));
                    }
                }
            }
        }
        steps.push(count_step("recognition.single_shift", t, triggers, failures, witness));

        let (mut triggers, mut failures, mut witness) = (0, 0, None);
        for &policy in policies {
            let (h, trace) = shift_fixpoint(g, policy);
            if h.is_subfamily_of(&target) {
                triggers += 1;
                if !is_copy {
                    failures += 1;
                    witness.get_or_insert_with(|| {
                        let moves: Vec<String> = trace.steps.iter().map(|s| format!("({},{})", s.i, s.j)).collect();
                        format!("class {k}: {} policy {} trace {}", describe(g), policy_name(policy), moves.join(" "))
                    });
                }
            }
        }
        steps.push(count_step("recognition.fixpoint", t, triggers, failures, witness));
    }
    Ok(AuditReport::new(
        format!("recognition of F_{i}^{t}({r}) on n={n}: {} maximal classes", classes.len()),
        steps,
        RECOGNITION_CLAIMS,
    ))
}

fn embeds(g: &ExplicitFamily, t: u32, i: u32) -> Result<bool> {
    let params = FrontierParams::new(3, t, i)?;
    Ok(params.window_size() <= g.ground_size() && embeds_in_frontier_copy(g, params).is_some())
}

/// Classifies every `(3,t)`-maximal class on `[n]` at each `p` of the grid.
pub fn verify_stability(n: u32, t: u32, p_grid: &[Rational], delta: &Rational) -> Result<AuditReport> {
    let classes = enumerate_maximal_capped(n, 3, t, ENUMERATION_CAP)?;
    verify_stability_on(&classes, n, t, p_grid, delta)
}

pub fn verify_stability_on(
    classes: &[IsoClass],
    n: u32,
    t: u32,
    p_grid: &[Rational],
    delta: &Rational,
) -> Result<AuditReport> {
    let p0 = Scalar::Quadratic(p0_of_t(t));
    for p in p_grid {
        let ok = p > &Rational::zero()
            && matches!(compare(&Scalar::Rational(p.clone()), &p0, 200), Comparison::Less | Comparison::Equal);
        if !ok {
            return Err(Error::ProbabilityOutOfRange(format!("{} (need 0 < p <= p0({t}))", format_rational(p))));
        }
    }
    if delta <= &Rational::zero() {
        return Err(Error::InvalidParameters("delta must be positive".into()));
    }
    let f1 = frontier_closed_form(FrontierParams::new(3, t, 1)?)?;
    let f2 = frontier_closed_form(FrontierParams::new(3, t, 2)?)?;
    let f2_lift = if t + 6 <= n { Some(frontier_lift(FrontierParams::new(3, t, 2)?, n)?) } else { None };
    let half = rat(1, 2);
    let mut steps = Vec::new();
    for (k, class) in classes.iter().enumerate() {
        let g = &class.canonical;
        let in_f0 = embeds(g, t, 0)?;
        let in_f01 = in_f0 || embeds(g, t, 1)?;
        let shifted = shift_fixpoint(g, ShiftPolicy::Lex).0;
        let in_f2 = f2_lift.as_ref().is_some_and(|f| shifted.is_subfamily_of(f));
        for p in p_grid {
            let m = mu_rational(g, p)?;
            let pt = num_traits::pow(p.clone(), t as usize);
            let half_pt = &half * &pt;
            let small = m < half_pt;
            let mut cases = Vec::new();
            if small {
                cases.push("i");
            }
            if in_f01 {
                cases.push("ii");
            }
            if in_f2 {
                cases.push("iii");
            }
            let who = format!("class {k} p={}: {}", format_rational(p), describe(g));
            let verdict_of = |ok: bool| if ok { Verdict::Holds } else { Verdict::Fails };
            steps.push(AuditStep {
                claim_id: "stability.trichotomy".into(),
                t,
                verdict: verdict_of(!cases.is_empty()),
                lhs_decimal_50: Scalar::Rational(m.clone()).to_decimal(50),
                rhs_decimal_50: Scalar::Rational(half_pt.clone()).to_decimal(50),
                witness: Some(format!("{who}; cases [{}]", cases.join(","))),
            });

            let threshold = (&half + delta) * &pt;
            steps.push(AuditStep {
                claim_id: "stability.theorem_delta".into(),
                t,
                verdict: if m >= threshold { verdict_of(in_f01) } else { Verdict::NotApplicable },
                lhs_decimal_50: Scalar::Rational(m.clone()).to_decimal(50),
                rhs_decimal_50: Scalar::Rational(threshold).to_decimal(50),
                witness: Some(who.clone()),
            });

            let m1 = f1.eval(p);
            let m2 = f2.eval(p);
            let bar = [half_pt, m1, m2].into_iter().max().expect("three values");
            let verdict = if t < 2 || m <= bar { Verdict::NotApplicable } else { verdict_of(in_f0) };
            steps.push(AuditStep {
                claim_id: "stability.conjecture".into(),
                t,
                verdict,
                lhs_decimal_50: Scalar::Rational(m).to_decimal(50),
                rhs_decimal_50: Scalar::Rational(bar).to_decimal(50),
                witness: Some(who),
            });
        }
    }
    Ok(AuditReport::new(
        format!("stability on n={n}, t={t}: {} maximal classes, {} grid points", classes.len(), p_grid.len()),
        steps,
        STABILITY_CLAIMS,
    ))
}
