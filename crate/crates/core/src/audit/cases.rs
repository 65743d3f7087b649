//! Per-link audits of the inequality chains in the case analysis on `h`.
//!
//! Links in `p₀`, `q₀` alone are decided exactly in ℚ(√(4t+9)); links that
//! also involve `√t` or `e` are decided by interval enclosures with doubling
//! precision up to a cap.

use std::cmp::Ordering;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{claim, AuditReport, AuditStep, ClaimSpec, Verdict};
use crate::arith::{
    binomial, decide_sign, digits_to_bits, e_interval, int, p0_of_t, rat, BoundInterval, Quadratic, Rational,
};
use crate::error::{Error, Result};

pub const DEFAULT_CAP_DIGITS: u32 = 200;
/// Largest `t` accepted by [`audit_case_lemmas`].
pub const T_LIMIT: u32 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLemma {
    /// `h ≥ √t/2 − 5/4`.
    Large,
    /// `4 ≤ h ≤ √t/2 − 5/4`.
    Mid,
    H1,
    H2,
    H3,
}

impl std::str::FromStr for CaseLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "large" => Ok(Self::Large),
            "mid" => Ok(Self::Mid),
            "1" | "h1" => Ok(Self::H1),
            "2" | "h2" => Ok(Self::H2),
            "3" | "h3" => Ok(Self::H3),
            _ => Err(Error::InvalidParameters(format!("unknown case {s:?} (expected large, mid, 1, 2 or 3)"))),
        }
    }
}

impl CaseLemma {
    pub fn name(self) -> &'static str {
        match self {
            CaseLemma::Large => "large",
            CaseLemma::Mid => "mid",
            CaseLemma::H1 => "1",
            CaseLemma::H2 => "2",
            CaseLemma::H3 => "3",
        }
    }
}

/// Claim ids, descriptions and asserted ranges for a case, in report order.
pub fn case_claims(case: CaseLemma) -> &'static [ClaimSpec] {
    match case {
        CaseLemma::Large => {
            const C: &[ClaimSpec] = &[
                claim("large.p0_le_half", "p0 <= 1/2 (ratio bound applies)", Some(241)),
                claim("large.bound", "(p0/q0)^k (1/q0)^t < 1/2, k = max(1, ceil(sqrt(t)/2 - 5/4))", Some(241)),
            ];
            C
        }
        CaseLemma::Mid => {
            const C: &[ClaimSpec] = &[
                claim("mid.p0_le_half", "p0 <= 1/2 (pq increasing on (0, p0])", Some(111)),
                claim("mid.p0_le_sqrt_bound", "p0 <= 2/(sqrt(4t) - 1)", Some(111)),
                claim("mid.sqrt_bound_le_ekr", "2/(sqrt(4t) - 1) <= 1/(2(h+1)) at h = h_max", Some(111)),
                claim("mid.ekr_threshold", "p0 <= 1/(2(h+1)) at h = h_max", Some(111)),
                claim("mid.ratio_link", "(h+1)/(t-1) <= p0 q0 / 2 at h = h_max", Some(111)),
                claim("mid.lhs_sqrt", "(h+1)/(t-1) <= (sqrt(t) - 1/2)/(2(t-1)) at h = h_max", Some(111)),
                claim("mid.inv_two_sqrt", "(sqrt(t) - 1/2)/(2(t-1)) <= 1/(2 sqrt(t))", Some(111)),
                claim("mid.f_ge_one", "1 <= f(t) = sqrt(t) p0 q0", None),
                claim("mid.binomial_e", "C(t+h-1, h) < (e(1 + t/h))^h for 4 <= h <= h_max", Some(111)),
                claim("mid.h_monotone", "1 + t/h <= 1 + t/4 at h = h_max", Some(111)),
                claim("mid.point_seven", "e(1 + t/4) p0^2 q0 <= 7/10", Some(20)),
                claim("mid.two_point_seven", "2 (7/10)^4 < 1/2", Some(1)),
                claim("mid.end_to_end", "sum_{i<=h} C(t+h-1, i) p0^(h+i) q0^i < 1/2 for 4 <= h <= h_max", Some(111)),
            ];
            C
        }
        CaseLemma::H1 => {
            const C: &[ClaimSpec] = &[
                claim("h1.ekr_threshold", "p0 <= 1/5", Some(28)),
                claim("h1.monotone", "p0 <= 3/4 (p + t p^3 q increasing on (0, p0])", Some(28)),
                claim("h1.bound", "p0 + t p0^3 q0 < 1/2", Some(15)),
            ];
            C
        }
        CaseLemma::H2 => {
            const C: &[ClaimSpec] = &[
                claim("h2.ekr_threshold", "p0 <= 1/7", Some(54)),
                claim("h2.monotone", "p0 <= 5/7 (every monomial increasing on (0, p0])", Some(54)),
                claim("h2.bound", "p0^2 + (t+1) p0^3 q0 + C(t+1, 2) p0^5 q0^2 < 1/2", Some(10)),
                claim("h2.decreasing", "the h = 2 bound at t+1 is below its value at t", Some(1)),
            ];
            C
        }
        CaseLemma::H3 => {
            const C: &[ClaimSpec] = &[
                claim("h3.ekr_threshold", "p0 <= 1/8", Some(70)),
                claim("h3.monotone", "p0 <= 2/3 (every monomial increasing on (0, p0])", Some(70)),
                claim("h3.bound", "sum_{i<=3} C(t+2, i) p0^(3+i) q0^i < 1/2", Some(4)),
                claim("h3.decreasing", "the h = 3 bound at t+1 is below its value at t", Some(1)),
            ];
            C
        }
    }
}

/// `⌊√t/2 − 5/4⌋`, the largest `h` in the middle case.
pub(crate) fn h_max(t: u32) -> i64 {
    let s = i64::try_from((4 * u64::from(t)).sqrt()).expect("small");
    (s - 5).div_euclid(4)
}

/// `⌈√t/2 − 5/4⌉`.
pub(crate) fn h_min_large(t: u32) -> i64 {
    let four_t = 4 * u64::from(t);
    let mut c = four_t.sqrt();
    if c * c < four_t {
        c += 1;
    }
    let c = i64::try_from(c).expect("small");
    -(5 - c).div_euclid(4)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Lt,
    Le,
}

enum Value {
    Exact(Quadratic),
    Approx(Box<dyn Fn(u32) -> BoundInterval>),
}

impl Value {
    fn enclose(&self, bits: u32) -> BoundInterval {
        match self {
            Value::Exact(q) => q.enclose(bits),
            Value::Approx(f) => f(bits),
        }
    }

    fn decimal(&self) -> String {
        match self {
            Value::Exact(q) => q.to_decimal(50),
            Value::Approx(f) => f(digits_to_bits(60)).to_decimal(50),
        }
    }
}

fn approx(f: impl Fn(u32) -> BoundInterval + 'static) -> Value {
    Value::Approx(Box::new(f))
}

fn verdict_of(sign: Option<Ordering>, rel: Rel) -> Verdict {
    match (sign, rel) {
        (Some(Ordering::Less), _) | (Some(Ordering::Equal), Rel::Le) => Verdict::Holds,
        (Some(_), _) => Verdict::Fails,
        (None, _) => Verdict::Undecided,
    }
}

fn decide(lhs: &Value, rhs: &Value, rel: Rel, cap: u32) -> Verdict {
    let sign = match (lhs, rhs) {
        (Value::Exact(a), Value::Exact(b)) if a.compatible(b) => Some((a - b).signum()),
        _ => decide_sign(|bits| lhs.enclose(bits).sub(&rhs.enclose(bits)), cap),
    };
    verdict_of(sign, rel)
}

struct Ctx {
    t: u32,
    cap: u32,
    steps: Vec<AuditStep>,
}

impl Ctx {
    fn push(&mut self, id: &str, verdict: Verdict, lhs: String, rhs: String, witness: Option<String>) {
        self.steps.push(AuditStep {
            claim_id: id.to_string(),
            t: self.t,
            verdict,
            lhs_decimal_50: lhs,
            rhs_decimal_50: rhs,
            witness,
        });
    }

    fn link(&mut self, id: &str, lhs: Value, rhs: Value, rel: Rel) {
        let v = decide(&lhs, &rhs, rel, self.cap);
        self.push(id, v, lhs.decimal(), rhs.decimal(), None);
    }

    /// A link quantified over `h`; reports the first failing `h`, otherwise
    /// the last one.
    fn link_over_h(&mut self, id: &str, hs: RangeInclusive<u32>, mut at: impl FnMut(u32) -> (Value, Value, Rel)) {
        let mut last = None;
        for h in hs {
            let (lhs, rhs, rel) = at(h);
            let v = decide(&lhs, &rhs, rel, self.cap);
            let done = v != Verdict::Holds;
            last = Some((v, lhs, rhs, h));
            if done {
                break;
            }
        }
        if let Some((v, lhs, rhs, h)) = last {
            self.push(id, v, lhs.decimal(), rhs.decimal(), Some(format!("h={h}")));
        }
    }
}

fn q0(p0: &Quadratic) -> Quadratic {
    &p0.embed(&Rational::one()) - p0
}

fn c(p0: &Quadratic, r: Rational) -> Quadratic {
    p0.embed(&r)
}

fn sqrt_t(t: u32, bits: u32) -> BoundInterval {
    BoundInterval::sqrt_of(&int(t), bits + 8)
}

fn e_encl(bits: u32) -> BoundInterval {
    static E_DEFAULT: OnceLock<BoundInterval> = OnceLock::new();
    let digits = bits * 3 / 10 + 4;
    if digits <= 80 {
        E_DEFAULT.get_or_init(|| e_interval(80)).clone()
    } else {
        e_interval(digits)
    }
}

fn interval_p0(t: u32, bits: u32) -> (BoundInterval, BoundInterval) {
    let p = p0_of_t(t).enclose(bits + 16);
    let q = BoundInterval::point(Rational::one()).sub(&p);
    (p, q)
}

pub(crate) fn h2_bound(t: u32) -> Quadratic {
    let p = p0_of_t(t);
    let q = q0(&p);
    let c1 = c(&p, int(t + 1));
    let c2 = c(&p, Rational::from_integer(binomial(u64::from(t) + 1, 2)));
    &(&p.pow(2) + &(&c1 * &(&p.pow(3) * &q))) + &(&c2 * &(&p.pow(5) * &q.pow(2)))
}

pub(crate) fn h3_bound(t: u32) -> Quadratic {
    let p = p0_of_t(t);
    let q = q0(&p);
    let mut acc = c(&p, int(0));
    for i in 0..=3u32 {
        let k = c(&p, Rational::from_integer(binomial(u64::from(t) + 2, u64::from(i))));
        acc = &acc + &(&k * &(&p.pow(3 + i) * &q.pow(i)));
    }
    acc
}

pub(crate) fn h1_bound(t: u32) -> Quadratic {
    let p = p0_of_t(t);
    let q = q0(&p);
    &p + &(&c(&p, int(t)) * &(&p.pow(3) * &q))
}

/// Exact value at `p₀(t)` of the bound used in the `h = 1, 2, 3` cases.
pub fn small_h_bound(h: u32, t: u32) -> Result<Quadratic> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    match h {
        1 => Ok(h1_bound(t)),
        2 => Ok(h2_bound(t)),
        3 => Ok(h3_bound(t)),
        _ => Err(Error::InvalidParameters(format!("no small-h bound for h = {h}"))),
    }
}

fn exact_threshold(ctx: &mut Ctx, id: &str, limit: Rational) {
    let p = p0_of_t(ctx.t);
    let rhs = c(&p, limit);
    ctx.link(id, Value::Exact(p), Value::Exact(rhs), Rel::Le);
}

fn half(t: u32) -> Value {
    Value::Exact(c(&p0_of_t(t), rat(1, 2)))
}

fn audit_large(ctx: &mut Ctx) {
    let t = ctx.t;
    exact_threshold(ctx, "large.p0_le_half", rat(1, 2));
    let k = h_min_large(t).max(1) as u32;
    let lhs = approx(move |bits| {
        let (p, q) = interval_p0(t, bits);
        let ratio = p.div(&q).expect("q0 > 0").pow_rounded(k, bits);
        let inv = q.recip().expect("q0 > 0").pow_rounded(t, bits);
        ratio.mul(&inv).round_outward(bits)
    });
    let v = decide(&lhs, &half(t), Rel::Lt, ctx.cap);
    ctx.push("large.bound", v, lhs.decimal(), half(t).decimal(), Some(format!("k={k}")));
}

fn audit_mid(ctx: &mut Ctx) {
    let t = ctx.t;
    let p = p0_of_t(t);
    let q = q0(&p);
    let hm = h_max(t);

    ctx.link("mid.p0_le_half", Value::Exact(p.clone()), half(t), Rel::Le);
    if hm >= 4 {
        let h = hm as u32;
        let sqrt_bound = move |bits: u32| {
            let den = sqrt_t(t, bits).scale(&int(2)).sub(&BoundInterval::point(int(1)));
            den.recip().expect("t >= 1").scale(&int(2)).round_outward(bits)
        };
        ctx.link("mid.p0_le_sqrt_bound", Value::Exact(p.clone()), approx(sqrt_bound), Rel::Le);
        let ekr = c(&p, rat(1, 2 * (i64::from(h) + 1)));
        ctx.link("mid.sqrt_bound_le_ekr", approx(sqrt_bound), Value::Exact(ekr.clone()), Rel::Le);
        ctx.link("mid.ekr_threshold", Value::Exact(p.clone()), Value::Exact(ekr), Rel::Le);
        let ratio = c(&p, rat(i64::from(h) + 1, i64::from(t) - 1));
        let half_pq = &c(&p, rat(1, 2)) * &(&p * &q);
        ctx.link("mid.ratio_link", Value::Exact(ratio.clone()), Value::Exact(half_pq), Rel::Le);
        ctx.link("mid.lhs_sqrt", Value::Exact(ratio), approx(move |bits| sqrt_over(t, bits)), Rel::Le);
    }
    if t >= 2 {
        let inv_two_sqrt = move |bits: u32| sqrt_t(t, bits).scale(&int(2)).recip().expect("t >= 1").round_outward(bits);
        ctx.link("mid.inv_two_sqrt", approx(move |bits| sqrt_over(t, bits)), approx(inv_two_sqrt), Rel::Le);
    }
    let pq = &p * &q;
    let f = approx(move |bits| sqrt_t(t, bits).mul(&pq.enclose(bits + 8)).round_outward(bits));
    ctx.link("mid.f_ge_one", Value::Exact(c(&p, int(1))), f, Rel::Le);
    if hm >= 4 {
        let h = hm as u32;
        ctx.link_over_h("mid.binomial_e", 4..=h, |h| {
            let lhs = Value::Exact(c(&p, Rational::from_integer(binomial(u64::from(t + h - 1), u64::from(h)))));
            let base = rat(i64::from(t) + i64::from(h), i64::from(h));
            let rhs = approx(move |bits| e_encl(bits).scale(&base).pow_rounded(h, bits));
            (lhs, rhs, Rel::Lt)
        });
        ctx.link(
            "mid.h_monotone",
            Value::Exact(c(&p, rat(i64::from(t) + i64::from(h), i64::from(h)))),
            Value::Exact(c(&p, rat(i64::from(t) + 4, 4))),
            Rel::Le,
        );
    }
    let p2q = p.pow(2) * &q;
    let seven = approx(move |bits| {
        e_encl(bits).scale(&rat(i64::from(t) + 4, 4)).mul(&p2q.enclose(bits + 8)).round_outward(bits)
    });
    ctx.link("mid.point_seven", seven, Value::Exact(c(&p, rat(7, 10))), Rel::Le);
    let two_seven = num_traits::pow(rat(7, 10), 4) * int(2);
    ctx.link("mid.two_point_seven", Value::Exact(c(&p, two_seven)), half(t), Rel::Lt);
    if hm >= 4 {
        ctx.link_over_h("mid.end_to_end", 4..=hm as u32, |h| {
            let lhs = approx(move |bits| end_to_end_sum(t, h, bits));
            (lhs, half(t), Rel::Lt)
        });
    }
}

/// `(√t − 1/2) / (2(t−1))`.
fn sqrt_over(t: u32, bits: u32) -> BoundInterval {
    sqrt_t(t, bits).sub(&BoundInterval::point(rat(1, 2))).scale(&rat(1, 2 * (i64::from(t) - 1))).round_outward(bits)
}

/// Nonnegative interval in fixed point: `[lo, hi] · 2^−bits`.
struct Fixed {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl Fixed {
    fn from_interval(x: &BoundInterval, bits: u32) -> Self {
        let scale = Rational::from_integer(BigInt::one() << bits);
        Self { lo: (x.lo() * &scale).floor().to_integer(), hi: (x.hi() * &scale).ceil().to_integer(), bits }
    }

    fn mul(&self, other: &Self) -> Self {
        let lo = (&self.lo * &other.lo) >> self.bits;
        let hi = ceil_shift(&self.hi * &other.hi, self.bits);
        Self { lo, hi, bits: self.bits }
    }

    fn scale(&self, num: u64, den: u64) -> Self {
        let lo = (&self.lo * num) / den;
        let hi = (&self.hi * num + (den - 1)) / den;
        Self { lo, hi, bits: self.bits }
    }

    fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    fn to_interval(&self) -> BoundInterval {
        let den = BigInt::one() << self.bits;
        BoundInterval::new(Rational::new(self.lo.clone(), den.clone()), Rational::new(self.hi.clone(), den))
    }
}

fn ceil_shift(x: BigInt, bits: u32) -> BigInt {
    -((-x) >> bits)
}

/// `Σ_{i=0}^{h} C(t+h−1, i) p₀^{h+i} q₀^i` by the term ratio
/// `(t+h−1−i)/(i+1) · p₀q₀`.
fn end_to_end_sum(t: u32, h: u32, bits: u32) -> BoundInterval {
    let work = bits + 16;
    let (p, q) = interval_p0(t, work);
    let p = Fixed::from_interval(&p, work);
    let pq = p.mul(&Fixed::from_interval(&q, work));
    let mut term = Fixed::from_interval(&BoundInterval::point(Rational::one()), work);
    for _ in 0..h {
        term = term.mul(&p);
    }
    let mut sum = Fixed { lo: term.lo.clone(), hi: term.hi.clone(), bits: work };
    for i in 0..h {
        term = term.mul(&pq).scale(u64::from(t + h - 1 - i), u64::from(i) + 1);
        sum = sum.add(&term);
    }
    sum.to_interval()
}

fn audit_small(ctx: &mut Ctx, case: CaseLemma) {
    let t = ctx.t;
    let (prefix, threshold, monotone, bound): (&str, Rational, Rational, fn(u32) -> Quadratic) = match case {
        CaseLemma::H1 => ("h1", rat(1, 5), rat(3, 4), h1_bound),
        CaseLemma::H2 => ("h2", rat(1, 7), rat(5, 7), h2_bound),
        CaseLemma::H3 => ("h3", rat(1, 8), rat(2, 3), h3_bound),
        _ => unreachable!(),
    };
    exact_threshold(ctx, &format!("{prefix}.ekr_threshold"), threshold);
    exact_threshold(ctx, &format!("{prefix}.monotone"), monotone);
    ctx.link(&format!("{prefix}.bound"), Value::Exact(bound(t)), half(t), Rel::Lt);
    if case != CaseLemma::H1 {
        ctx.link(&format!("{prefix}.decreasing"), Value::Exact(bound(t + 1)), Value::Exact(bound(t)), Rel::Lt);
    }
}

fn audit_one(case: CaseLemma, t: u32, cap: u32) -> Vec<AuditStep> {
    let mut ctx = Ctx { t, cap, steps: Vec::new() };
    match case {
        CaseLemma::Large => audit_large(&mut ctx),
        CaseLemma::Mid => audit_mid(&mut ctx),
        _ => audit_small(&mut ctx, case),
    }
    ctx.steps
}

/// Audits every link of the chosen case for each `t` in `range`. Results are
/// ordered by `t`, then by link, independent of the thread count.
pub fn audit_case_lemmas(case: CaseLemma, range: RangeInclusive<u32>, cap_digits: u32) -> Result<AuditReport> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 || lo > hi || hi > T_LIMIT {
        return Err(Error::InvalidParameters(format!(
            "t range must satisfy 1 <= t_min <= t_max <= {T_LIMIT}, got {lo}..={hi}"
        )));
    }
    if cap_digits == 0 {
        return Err(Error::InvalidParameters("precision cap must be positive".into()));
    }
    let steps: Vec<AuditStep> = (lo..=hi)
        .into_par_iter()
        .map(|t| audit_one(case, t, cap_digits))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(AuditReport::new(format!("case h={} audit, t in {lo}..={hi}", case.name()), steps, case_claims(case)))
}
