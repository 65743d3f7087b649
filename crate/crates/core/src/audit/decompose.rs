//! `s`, `h`, the hole families `T_i` and the checks on them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::report::{claim, AuditReport, AuditStep, ClaimSpec, Verdict};
use crate::arith::{binomial, compare, rat, BoundInterval, Comparison, MeasurePolynomial, Rational, Scalar};
use crate::error::{Error, Result};
use crate::family::{is_r_wise_t_intersecting, ExplicitFamily, SubsetMask, WindowFamily};
use crate::measure::MeasureProfile;
use crate::shifting::{is_maximal, is_shifted};

/// `min |G₁ ∩ G₂|` over pairs of members, repetition allowed.
pub fn two_wise_s(fam: &ExplicitFamily) -> Result<u32> {
    min_pair(fam).map(|(s, _, _)| s).ok_or_else(|| Error::Precondition("empty family".into()))
}

/// Minimum pairwise intersection with a pair attaining it.
fn min_pair(fam: &ExplicitFamily) -> Option<(u32, SubsetMask, SubsetMask)> {
    let gens = fam.minimal_members();
    let mut best: Option<(u32, SubsetMask, SubsetMask)> = None;
    for (k, &a) in gens.iter().enumerate() {
        for &b in &gens[k..] {
            let s = a.intersection(b).len();
            if best.is_none_or(|(m, _, _)| s < m) {
                best = Some((s, a, b));
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HParam {
    pub h: u32,
    /// A member with `H₀ ∩ [t+h−1] = [t−1]`; absent when `h = 0`.
    pub witness_h0: Option<SubsetMask>,
}

fn check_shifted_intersecting(fam: &ExplicitFamily, t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    if fam.is_empty() {
        return Err(Error::Precondition("empty family".into()));
    }
    if !is_r_wise_t_intersecting(fam, 3, t) {
        return Err(Error::NotIntersecting { r: 3, t });
    }
    if !is_shifted(fam) {
        return Err(Error::Precondition("family is not shifted".into()));
    }
    Ok(())
}

/// `h = min{i : |H ∩ [t+i]| ≥ t for all members H}` with the normalised
/// witness `H₀`.
pub fn h_param(fam: &ExplicitFamily, t: u32) -> Result<HParam> {
    check_shifted_intersecting(fam, t)?;
    let n = fam.ground_size();
    let gens = fam.minimal_members();
    let h = (0..=n - t)
        .find(|&i| {
            let prefix = SubsetMask::full(t + i);
            gens.iter().all(|g| g.intersection(prefix).len() >= t)
        })
        .expect("members of a t-intersecting family have at least t elements");
    if h == 0 {
        return Ok(HParam { h, witness_h0: None });
    }
    let prefix = SubsetMask::full(t + h - 1);
    let target = SubsetMask::full(t - 1);
    let witness = fam
        .members()
        .find(|m| m.intersection(prefix) == target)
        .ok_or_else(|| Error::Precondition(format!("no member H0 with H0 ∩ [{}] = [{}]", t + h - 1, t - 1)))?;
    Ok(HParam { h, witness_h0: Some(witness) })
}

/// The families `T_i`, stored on `[n−t−h+1]` with element `e` of
/// `[t+h, n]` relabelled to `e−t−h+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleDecomposition {
    pub n: u32,
    pub t: u32,
    pub s: u32,
    pub h: u32,
    pub witness_h0: SubsetMask,
    pub holes: Vec<WindowFamily>,
    /// `T(A) ⊆ T_{|A|}` for every hole pattern `A` that occurs.
    pub traces_nested: bool,
}

impl HoleDecomposition {
    /// Size of the relabelled ground set of the `T_i`.
    pub fn hole_ground(&self) -> u32 {
        self.n - (self.t + self.h - 1)
    }

    /// Maps an element of `[t+h, n]` to the relabelled ground.
    pub fn relabel_element(&self, e: u32) -> u32 {
        e - (self.t + self.h - 1)
    }
}

pub fn hole_families(fam: &ExplicitFamily, t: u32, h: u32) -> Result<HoleDecomposition> {
    let hp = h_param(fam, t)?;
    if h == 0 || hp.h != h {
        return Err(Error::Precondition(format!("h = {} for this family, got {h}", hp.h)));
    }
    let s = two_wise_s(fam)?;
    let n = fam.ground_size();
    let base = t + h - 1;
    let m = n - base;
    let prefix = SubsetMask::full(base);
    let mut traces: BTreeMap<u64, Vec<SubsetMask>> = BTreeMap::new();
    for g in fam.members() {
        let hole = prefix.difference(g);
        traces.entry(hole.bits()).or_default().push(SubsetMask(g.bits() >> base));
    }
    let table = |a: SubsetMask| -> Result<ExplicitFamily> {
        ExplicitFamily::from_members(m, traces.get(&a.bits()).into_iter().flatten().copied())
    };
    let mut holes = Vec::with_capacity(h as usize + 1);
    for i in 0..=h {
        let a = if i == 0 { SubsetMask::EMPTY } else { SubsetMask::range(t + h - i, base) };
        holes.push(table(a)?);
    }
    let mut traces_nested = true;
    for (&a, list) in &traces {
        let i = SubsetMask(a).len() as usize;
        traces_nested &= i <= h as usize && list.iter().all(|&x| holes[i].contains(x));
    }
    Ok(HoleDecomposition {
        n,
        t,
        s,
        h,
        witness_h0: hp.witness_h0.expect("h >= 1"),
        holes: holes.into_iter().map(WindowFamily::new).collect(),
        traces_nested,
    })
}

/// Right-hand side of the hole bound as a polynomial:
/// `Σ_i C(t+h−1, i) p^{t+h−1−i} q^i μ_p(T_i)`.
pub fn measure_bound_polynomial(decomp: &HoleDecomposition) -> MeasurePolynomial {
    let base = decomp.t + decomp.h - 1;
    let mut out = MeasurePolynomial::new();
    for (i, hole) in decomp.holes.iter().enumerate() {
        let i = i as u32;
        let c = Rational::from_integer(binomial(base.into(), i.into()));
        let term = MeasureProfile::of(hole).polynomial().shift(base - i, i).scale(&c);
        out = &out + &term;
    }
    out
}

pub fn measure_bound_rhs(decomp: &HoleDecomposition, p: &Scalar) -> Result<Scalar> {
    measure_bound_polynomial(decomp).eval_scalar(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EkrKind {
    /// `(p/q)^s` for `p ≤ 1/2`.
    Ratio,
    /// `p^s` for `p ≤ 1/(s+1)`.
    Power,
}

/// Upper bound on `μ_p` of a 2-wise `s`-intersecting family.
pub fn ekr_bound(kind: EkrKind, s: u32, p: &Scalar) -> Result<Scalar> {
    let limit = match kind {
        EkrKind::Ratio => rat(1, 2),
        EkrKind::Power => rat(1, i64::from(s) + 1),
    };
    let positive = compare(p, &Scalar::Rational(Rational::zero()), 200) == Comparison::Greater;
    let below = matches!(compare(p, &Scalar::Rational(limit.clone()), 200), Comparison::Less | Comparison::Equal);
    if !positive || !below {
        return Err(Error::Precondition(format!("bound needs 0 < p <= {limit}, got p = {p}")));
    }
    Ok(match (kind, p) {
        (EkrKind::Power, Scalar::Rational(r)) => Scalar::Rational(num_traits::pow(r.clone(), s as usize)),
        (EkrKind::Power, Scalar::Quadratic(x)) => Scalar::Quadratic(x.pow(s)).simplify(),
        (EkrKind::Power, Scalar::Interval(x)) => Scalar::Interval(x.pow(s)),
        (EkrKind::Ratio, Scalar::Rational(r)) => {
            let ratio = r / (Rational::one() - r);
            Scalar::Rational(num_traits::pow(ratio, s as usize))
        }
        (EkrKind::Ratio, Scalar::Quadratic(x)) => {
            let q = &x.embed(&Rational::one()) - x;
            let ratio = x * &q.recip().expect("p < 1");
            Scalar::Quadratic(ratio.pow(s)).simplify()
        }
        (EkrKind::Ratio, Scalar::Interval(x)) => {
            let q = BoundInterval::point(Rational::one()).sub(x);
            Scalar::Interval(x.div(&q).expect("p < 1").pow(s))
        }
    })
}

fn contained_in_frontier(fam: &ExplicitFamily, t: u32, h: u32) -> bool {
    let window = SubsetMask::full(t + 3 * h);
    fam.minimal_members().iter().all(|g| g.intersection(window).len() >= t + 2 * h)
}

fn int_step(
    claim: &str,
    t: u32,
    ok: bool,
    lhs: impl ToString,
    rhs: impl ToString,
    witness: Option<String>,
) -> AuditStep {
    AuditStep {
        claim_id: claim.to_string(),
        t,
        verdict: if ok { Verdict::Holds } else { Verdict::Fails },
        lhs_decimal_50: lhs.to_string(),
        rhs_decimal_50: rhs.to_string(),
        witness: if ok { None } else { witness },
    }
}

pub const MIFR_CLAIMS: &[ClaimSpec] = &[
    claim("mifr.s_ge_t", "s >= t", Some(0)),
    claim("mifr.h_le_s_minus_t", "1 <= h <= s - t", Some(0)),
    claim("mifr.traces_nested", "T(A) is contained in T_|A| (shiftedness)", Some(0)),
    claim("mifr.t_i_two_wise", "T_i is 2-wise (2i+1)-intersecting; lhs = min pairwise intersection", Some(0)),
    claim("mifr.t_h_strengthened", "T_h is 2-wise (2h+2)-intersecting when H is not inside F_h^t", Some(0)),
];

fn hole_step(claim: &str, t: u32, i: u32, hole: &WindowFamily, need: u32, decomp: &HoleDecomposition) -> AuditStep {
    match min_pair(hole.window()) {
        None => int_step(claim, t, true, "empty", need, None),
        Some((s, a, b)) => {
            let shift = decomp.t + decomp.h - 1;
            let lift = |x: SubsetMask| SubsetMask(x.bits() << shift);
            let w = format!("i={i}: traces {{{}}} and {{{}}}", lift(a), lift(b));
            int_step(claim, t, s >= need, s, need, Some(w))
        }
    }
}

/// Checks the structural claims on `s`, `h` and the `T_i` for one family.
pub fn audit_mifr(fam: &ExplicitFamily, t: u32) -> Result<AuditReport> {
    let hp = h_param(fam, t)?;
    if hp.h == 0 {
        return Err(Error::Precondition("family is contained in F_0^t (h = 0)".into()));
    }
    let d = hole_families(fam, t, hp.h)?;
    let (s, h, n) = (d.s, d.h, d.n);
    let mut steps = vec![
        int_step("mifr.s_ge_t", t, s >= t, s, t, None),
        int_step("mifr.h_le_s_minus_t", t, h >= 1 && h + t <= s, h, s.saturating_sub(t), Some(format!("s={s} h={h}"))),
        int_step("mifr.traces_nested", t, d.traces_nested, d.traces_nested, true, None),
    ];
    for (i, hole) in d.holes.iter().enumerate() {
        let i = i as u32;
        steps.push(hole_step("mifr.t_i_two_wise", t, i, hole, 2 * i + 1, &d));
    }
    let applicable = t + 3 * h <= n && !contained_in_frontier(fam, t, h) && is_maximal(fam, 3, t);
    if applicable {
        steps.push(hole_step("mifr.t_h_strengthened", t, h, &d.holes[h as usize], 2 * h + 2, &d));
    } else {
        let reason = if t + 3 * h > n {
            format!("t+3h = {} exceeds n = {n}", t + 3 * h)
        } else if contained_in_frontier(fam, t, h) {
            "family is contained in F_h^t".to_string()
        } else {
            "family is not (3,t)-maximal".to_string()
        };
        steps.push(AuditStep {
            claim_id: "mifr.t_h_strengthened".into(),
            t,
            verdict: Verdict::NotApplicable,
            lhs_decimal_50: "-".into(),
            rhs_decimal_50: (2 * h + 2).to_string(),
            witness: Some(reason),
        });
    }
    Ok(AuditReport::new(format!("hole structure audit (n={n}, t={t}, s={s}, h={h})"), steps, MIFR_CLAIMS))
}
