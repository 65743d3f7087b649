use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::quadratic::Quadratic;
use super::rational::{binomial, Rational};
use super::scalar::{ExactRing, Scalar};
use crate::error::{Error, Result};

/// `Σ c · p^i · q^j` with `q = 1 − p`, keyed by the exponent pair `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MeasurePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl MeasurePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(p_exp: u32, q_exp: u32, coeff: Rational) -> Self {
        let mut f = Self::new();
        f.add_term(p_exp, q_exp, coeff);
        f
    }

    /// Adds `coeff · p^p_exp · q^q_exp`, merging equal exponent pairs.
    pub fn add_term(&mut self, p_exp: u32, q_exp: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((p_exp, q_exp)).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(p_exp, q_exp));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        for (i, j, v) in self.terms() {
            out.add_term(i, j, v * c);
        }
        out
    }

    /// Multiplies by `p^p_exp · q^q_exp`.
    pub fn shift(&self, p_exp: u32, q_exp: u32) -> Self {
        let mut out = Self::new();
        for (i, j, v) in self.terms() {
            out.add_term(i + p_exp, j + q_exp, v.clone());
        }
        out
    }

    /// Exact value at `p` in whatever tower `p` belongs to.
    pub fn eval<R: ExactRing>(&self, p: &R) -> R {
        let one = p.embed(&Rational::one());
        let q = one.ring_sub(p);
        let mut acc = p.embed(&Rational::zero());
        let mut p_pows: BTreeMap<u32, R> = BTreeMap::new();
        let mut q_pows: BTreeMap<u32, R> = BTreeMap::new();
        for (i, j, c) in self.terms() {
            let pi = p_pows.entry(i).or_insert_with(|| p.ring_pow(i)).clone();
            let qj = q_pows.entry(j).or_insert_with(|| q.ring_pow(j)).clone();
            acc = acc.ring_add(&p.embed(c).ring_mul(&pi).ring_mul(&qj));
        }
        acc
    }

    /// Evaluation with the range check `0 < p < 1` for exact inputs.
    pub fn eval_scalar(&self, p: &Scalar) -> Result<Scalar> {
        match p {
            Scalar::Interval(_) => {}
            _ => {
                if p.in_open_unit_interval() != Some(true) {
                    return Err(Error::ProbabilityOutOfRange(p.to_string()));
                }
            }
        }
        Ok(self.eval(p).simplify())
    }

    /// Expansion in the monomial basis `1, p, p², …`.
    pub fn to_power_basis(&self) -> UniPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (i, j, c) in self.terms() {
            // p^i (1-p)^j = Σ_k C(j,k) (-1)^k p^{i+k}
            for k in 0..=j {
                let idx = (i + k) as usize;
                if coeffs.len() <= idx {
                    coeffs.resize(idx + 1, Rational::zero());
                }
                let b = Rational::from_integer(binomial(u64::from(j), u64::from(k)));
                let term = c * b;
                if k % 2 == 0 {
                    coeffs[idx] += term;
                } else {
                    coeffs[idx] -= term;
                }
            }
        }
        UniPoly::new(coeffs)
    }

    /// Whether both polynomials define the same function of `p`.
    pub fn same_function(&self, other: &Self) -> bool {
        self.to_power_basis() == other.to_power_basis()
    }
}

impl Add for &MeasurePolynomial {
    type Output = MeasurePolynomial;
    fn add(self, rhs: &MeasurePolynomial) -> MeasurePolynomial {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

/// Dense univariate polynomial with rational coefficients (lowest degree
/// first), used for exact root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        let c =
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect();
        Self::new(c)
    }

    /// Splits off the largest power of `p` dividing the polynomial.
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    pub fn eval_quadratic(&self, x: &Quadratic) -> Quadratic {
        let mut acc = x.embed(&Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &x.embed(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of Euclidean division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] / &lead;
            if !f.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + k;
                    r[idx] = &r[idx] - &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().rem(&next).neg();
            chain.push(next);
            next = r;
        }
        chain
    }

    fn sign_changes(chain: &[Self], x: &Quadratic) -> usize {
        let signs: Vec<Ordering> =
            chain.iter().map(|f| f.eval_quadratic(x).signum()).filter(|s| *s != Ordering::Equal).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    /// Returns `None` when an endpoint is itself a root.
    pub fn count_roots_between(&self, lo: &Quadratic, hi: &Quadratic) -> Option<usize> {
        if self.is_zero() || self.eval_quadratic(lo).is_zero() || self.eval_quadratic(hi).is_zero() {
            return None;
        }
        let chain = self.sturm_chain();
        let a = Self::sign_changes(&chain, lo);
        let b = Self::sign_changes(&chain, hi);
        Some(a.saturating_sub(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{p0_of_t, rat, BoundInterval};

    #[test]
    fn eval_examples() {
        let f = MeasurePolynomial::monomial(3, 0, rat(1, 1));
        assert_eq!(f.eval(&rat(1, 2)), rat(1, 8));
        // p^{t+3} + (t+3) p^{t+2} q at t = 4, p = 1/2
        let mut g = MeasurePolynomial::monomial(7, 0, rat(1, 1));
        g.add_term(6, 1, rat(7, 1));
        assert_eq!(g.eval(&rat(1, 2)), rat(1, 16));
        let h = MeasurePolynomial::monomial(2, 1, rat(1, 1));
        let v = h.eval_scalar(&Scalar::from(p0_of_t(10))).unwrap();
        assert_eq!(v, Scalar::from(rat(2, 27)));
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let f = MeasurePolynomial::monomial(1, 0, rat(1, 1));
        assert!(f.eval_scalar(&Scalar::from(rat(3, 2))).is_err());
        assert!(f.eval_scalar(&Scalar::from(rat(0, 1))).is_err());
        assert!(f.eval_scalar(&Scalar::from(BoundInterval::new(rat(1, 4), rat(1, 3)))).is_ok());
    }

    #[test]
    fn merging_and_power_basis() {
        let mut f = MeasurePolynomial::new();
        f.add_term(1, 1, rat(1, 1));
        f.add_term(1, 1, rat(-1, 1));
        assert!(f.is_zero());
        // p·q + p² = p
        let mut g = MeasurePolynomial::monomial(1, 1, rat(1, 1));
        g.add_term(2, 0, rat(1, 1));
        assert!(g.same_function(&MeasurePolynomial::monomial(1, 0, rat(1, 1))));
    }

    #[test]
    fn sturm_counts() {
        // (x - 1/3)(x - 1/2) = x² - 5/6 x + 1/6
        let f = UniPoly::new(vec![rat(1, 6), rat(-5, 6), rat(1, 1)]);
        let d = BigInt::from(2);
        let q = |r| Quadratic::from_rational(r, d.clone());
        assert_eq!(f.count_roots_between(&q(rat(0, 1)), &q(rat(1, 1))), Some(2));
        assert_eq!(f.count_roots_between(&q(rat(0, 1)), &q(rat(2, 5))), Some(1));
        assert_eq!(f.count_roots_between(&q(rat(0, 1)), &q(rat(1, 2))), None);
        // x² - 2 has one root in (1, 3/2)
        let g = UniPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(g.count_roots_between(&q(rat(1, 1)), &q(rat(3, 2))), Some(1));
    }
}
