//! Exact `p`-biased measures.
//!
//! Every measure goes through a size histogram, so a window family's measure
//! is computed on its window and never depends on the ambient ground set.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    binomial, compare, int, p0_of_t, rat, BoundInterval, Comparison, MeasurePolynomial, Quadratic, Rational, Scalar,
};
use crate::error::{Error, Result};
use crate::family::{FrontierParams, SetFamily, EXPLICIT_CAP};

/// Size histogram of a family on `[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureProfile {
    m: u32,
    counts: Vec<u64>,
}

impl MeasureProfile {
    pub fn of<F: SetFamily + ?Sized>(fam: &F) -> Self {
        let table = fam.table();
        Self { m: table.ground_size(), counts: table.size_counts() }
    }

    pub fn window_size(&self) -> u32 {
        self.m
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `Σ_k counts[k] · p^k · q^{m−k}`.
    pub fn polynomial(&self) -> MeasurePolynomial {
        let mut f = MeasurePolynomial::new();
        for (k, &c) in self.counts.iter().enumerate() {
            f.add_term(k as u32, self.m - k as u32, int(c));
        }
        f
    }
}

/// `μ_p` of an explicit or window family.
pub fn mu<F: SetFamily + ?Sized>(fam: &F, p: &Scalar) -> Result<Scalar> {
    MeasureProfile::of(fam).polynomial().eval_scalar(p)
}

/// Rational shorthand for [`mu`].
pub fn mu_rational<F: SetFamily + ?Sized>(fam: &F, p: &Rational) -> Result<Rational> {
    match mu(fam, &Scalar::Rational(p.clone()))? {
        Scalar::Rational(r) => Ok(r),
        other => unreachable!("rational input produced {other:?}"),
    }
}

/// `Σ_{j=0}^{i} C(t+ri, j) · p^{t+ri−j} · q^j`: at most `i` window elements
/// missing.
pub fn frontier_closed_form(params: FrontierParams) -> Result<MeasurePolynomial> {
    let m = params.window_size();
    if m > EXPLICIT_CAP {
        return Err(Error::GroundTooLarge { n: m, cap: EXPLICIT_CAP });
    }
    let mut f = MeasurePolynomial::new();
    for j in 0..=params.i {
        f.add_term(m - j, j, Rational::from_integer(binomial(m.into(), j.into())));
    }
    Ok(f)
}

/// `μ_p(F₂ᵗ)/μ_p(F₀ᵗ) = C(t+6,2)p⁴q² + (t+6)p⁵q + p⁶` for 3-wise families.
pub fn ratio_polynomial(t: u32) -> MeasurePolynomial {
    let m = u64::from(t) + 6;
    let mut f = MeasurePolynomial::new();
    f.add_term(4, 2, Rational::from_integer(binomial(m, 2)));
    f.add_term(5, 1, int(m));
    f.add_term(6, 0, Rational::one());
    f
}

/// The ratio at `p`, for `0 < p ≤ p₀(t)`.
pub fn ratio_f2_f0(t: u32, p: &Scalar) -> Result<Scalar> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let p0 = Scalar::Quadratic(p0_of_t(t));
    match compare(p, &p0, 200) {
        Comparison::Less | Comparison::Equal => {}
        _ => return Err(Error::ProbabilityOutOfRange(format!("{p} (need 0 < p <= p0({t}))"))),
    }
    ratio_polynomial(t).eval_scalar(p)
}

/// How the claim "the ratio is maximised at `p₀`" was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximizerCertificate {
    pub t: u32,
    /// Every monomial `p^a q^b` is nondecreasing on `(0, p₀]`, i.e.
    /// `p₀ ≤ a/(a+b)`.
    pub monomials_increasing: bool,
    /// The derivative has no root in `(0, p₀]` and is positive there
    /// (Sturm count in ℚ(√(4t+9))).
    pub derivative_positive: bool,
    /// Strict increase along a rational grid in `(0, p₀]`, ending at `p₀`.
    pub grid_increasing: bool,
}

impl MaximizerCertificate {
    pub fn certified(&self) -> bool {
        self.derivative_positive && self.grid_increasing
    }
}

pub fn certify_ratio_maximizer(t: u32, grid_points: u32) -> MaximizerCertificate {
    let f = ratio_polynomial(t);
    let p0 = p0_of_t(t);
    let monomials_increasing = f.terms().all(|(a, b, _)| {
        let bound = rat(i64::from(a), i64::from(a + b));
        (&p0.embed(&bound) - &p0).signum() != Ordering::Less
    });

    let (_, g) = f.to_power_basis().derivative().strip_zero_roots();
    let zero = p0.embed(&Rational::zero());
    let derivative_positive =
        g.count_roots_between(&zero, &p0) == Some(0) && g.eval_quadratic(&p0).signum() == Ordering::Greater;

    // grid k/(G+1) · lo(p0), then p0 itself
    let p0_lo = p0.enclose(64).lo().clone();
    let mut prev = Rational::zero();
    let mut grid_increasing = true;
    for k in 1..=grid_points {
        let p = &p0_lo * rat(i64::from(k), i64::from(grid_points) + 1);
        let v = f.eval(&p);
        grid_increasing &= v > prev;
        prev = v;
    }
    let at_p0 = f.eval(&p0);
    grid_increasing &= (&at_p0 - &at_p0.embed(&prev)).signum() == Ordering::Greater;

    MaximizerCertificate { t, monomials_increasing, derivative_positive, grid_increasing }
}

/// `max_{0<p≤p₀} μ_p(F₂ᵗ)/μ_p(F₀ᵗ)`, attained at `p₀` once the maximiser
/// certificate holds.
pub fn ratio_max_at_p0(t: u32) -> Result<Quadratic> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let cert = certify_ratio_maximizer(t, 16);
    if !cert.certified() {
        return Err(Error::Precondition(format!("maximiser at p0 not certified for t={t}")));
    }
    Ok(ratio_polynomial(t).eval(&p0_of_t(t)))
}

/// The closed fraction
/// `16(2t³ − 3t²s + 31t² − 31ts + 153t − 78s + 238)/(s − 1)⁶`, `s = √(4t+9)`.
pub fn ratio_closed_fraction(t: u32) -> Quadratic {
    let d = BigInt::from(4 * u64::from(t) + 9);
    let tt = int(t);
    let s = Quadratic::new(Rational::zero(), Rational::one(), d.clone());
    let c = |r: Rational| Quadratic::from_rational(r, d.clone());
    let t2 = &tt * &tt;
    let t3 = &t2 * &tt;
    let rational = int(2) * &t3 + int(31) * &t2 + int(153) * &tt + int(238);
    let surd = -(int(3) * &t2 + int(31) * &tt + int(78));
    let numerator = &c(rational) + &(&c(surd) * &s);
    let numerator = &c(int(16)) * &numerator;
    let denom = (&s - &c(Rational::one())).pow(6);
    &numerator / &denom
}

/// Interval evaluation of the ratio at `p₀` with `bits` of working precision.
pub fn ratio_enclosure(t: u32, bits: u32) -> BoundInterval {
    let p = p0_of_t(t).enclose(bits);
    let f = ratio_polynomial(t);
    let one = BoundInterval::point(Rational::one());
    let q = one.sub(&p);
    let mut acc = BoundInterval::point(Rational::zero());
    for (a, b, c) in f.terms() {
        let term = p.pow_rounded(a, bits).mul(&q.pow_rounded(b, bits)).scale(c).round_outward(bits);
        acc = acc.add(&term);
    }
    acc
}

/// One row of the ratio-versus-`t` curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub t: u32,
    pub p0_decimal_50: String,
    pub ratio_at_p0_decimal_50: String,
    pub ratio_minus_half_decimal_50: String,
}

pub fn ratio_curve(t_min: u32, t_max: u32) -> Vec<RatioRow> {
    (t_min.max(1)..=t_max)
        .map(|t| {
            let r = ratio_polynomial(t).eval(&p0_of_t(t));
            let half = r.embed(&rat(1, 2));
            RatioRow {
                t,
                p0_decimal_50: p0_of_t(t).to_decimal(50),
                ratio_at_p0_decimal_50: r.to_decimal(50),
                ratio_minus_half_decimal_50: (&r - &half).to_decimal(50),
            }
        })
        .collect()
}

pub fn ratio_curve_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from("t,p0_decimal_50,ratio_at_p0_decimal_50,ratio_minus_half_decimal_50\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.t, r.p0_decimal_50, r.ratio_at_p0_decimal_50, r.ratio_minus_half_decimal_50
        ));
    }
    out
}
