use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{decimal_string, Rational};

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// Arithmetic is exact on the endpoints; [`BoundInterval::round_outward`]
/// trades width for size by snapping each endpoint outward to a dyadic with
/// a fixed number of significant bits. No hardware float is involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInterval {
    lo: Rational,
    hi: Rational,
}

impl BoundInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Sign of every point in the interval, if it is the same for all of them.
    pub fn sign(&self) -> Option<Ordering> {
        let zero = Rational::zero();
        if self.lo > zero {
            Some(Ordering::Greater)
        } else if self.hi < zero {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let zero = Rational::zero();
        // Fast path for the common all-nonnegative case.
        if self.lo >= zero && rhs.lo >= zero {
            return Self { lo: &self.lo * &rhs.lo, hi: &self.hi * &rhs.hi };
        }
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    /// `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        match self.sign() {
            Some(Ordering::Greater) | Some(Ordering::Less) => Some(Self { lo: self.hi.recip(), hi: self.lo.recip() }),
            _ => None,
        }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self.mul(&r))
    }

    /// Power by repeated squaring, rounding to `bits` after every product.
    pub fn pow_rounded(&self, mut e: u32, bits: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::point(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).round_outward(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_outward(bits);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::point(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Snaps `lo` down and `hi` up to dyadic rationals with about `bits`
    /// significant bits. The result always contains `self`.
    pub fn round_outward(&self, bits: u32) -> Self {
        Self { lo: round_dyadic(&self.lo, bits, false), hi: round_dyadic(&self.hi, bits, true) }
    }

    /// Enclosure of `√x` for `x ≥ 0` with relative width about `2^-bits`.
    /// Exact when `x` is the square of a rational.
    pub fn sqrt_of(x: &Rational, bits: u32) -> Self {
        assert!(!x.is_negative(), "square root of a negative number");
        if x.is_zero() {
            return Self::point(Rational::zero());
        }
        let (n, d) = (x.numer(), x.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &rn * &rn == *n && &rd * &rd == *d {
            return Self::point(Rational::new(rn, rd));
        }
        // √(n/d) = √(n·d·4^k) / (d·2^k)
        let k = bits as usize + 2;
        let scaled = (n * d) << (2 * k);
        let s = scaled.sqrt();
        let den = d << k;
        let lo = Rational::new(s.clone(), den.clone());
        let hi = if &s * &s == scaled { lo.clone() } else { Rational::new(s + 1, den) };
        Self { lo, hi }
    }

    /// Decimal rendering of the lower endpoint (display only).
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal_string(&self.lo, digits)
    }
}

fn bit_len(x: &BigInt) -> i64 {
    x.bits() as i64
}

fn round_dyadic(x: &Rational, bits: u32, up: bool) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    let (n, d) = (x.numer(), x.denom());
    let bits = i64::from(bits);
    // Already small: nothing to gain.
    if bit_len(d) <= bits + 2 && bit_len(n) <= 2 * bits + 2 {
        return x.clone();
    }
    let exp = bit_len(n) - bit_len(d);
    let k = bits - exp;
    let (num, den) = if k >= 0 { (n << (k as usize), d.clone()) } else { (n.clone(), d << ((-k) as usize)) };
    let (q, r) = num.div_mod_floor(&den);
    let m = if up && !r.is_zero() { q + 1 } else { q };
    if k >= 0 {
        Rational::new(m, BigInt::one() << (k as usize))
    } else {
        Rational::from_integer(m << ((-k) as usize))
    }
}

/// Bits needed for `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((f64::from(digits)) * std::f64::consts::LOG2_10).ceil() as u32
}

/// Rational enclosure of Euler's number with width `< 10^-digits`, from the
/// partial sums `Σ_{k≤N} 1/k!` and the tail bound `Σ_{k>N} 1/k! < 2/(N+1)!`.
///
/// The enclosures are nested: more digits never leave the previous interval.
pub fn e_interval(digits: u32) -> BoundInterval {
    assert!(digits >= 1, "digits must be positive");
    let target = BigInt::from(2) * BigInt::from(10u32).pow(digits);
    let mut fact = BigInt::one();
    let mut n = 0u64;
    // smallest N >= 4 with (N+1)! > 2·10^digits
    loop {
        let next = &fact * (n + 1);
        if n >= 4 && next > target {
            break;
        }
        fact = next;
        n += 1;
    }
    let mut sum = Rational::zero();
    let mut f = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            f *= k;
        }
        sum += Rational::new(BigInt::one(), f.clone());
    }
    let tail = Rational::new(BigInt::from(2), f * (n + 1));
    BoundInterval::new(sum.clone(), sum + tail)
}

/// Decides the sign of a quantity given by a family of enclosures
/// `enclose(bits)`, doubling the precision from 64 bits until the sign is
/// determined or the cap (in decimal digits) is exceeded.
pub fn decide_sign<F>(enclose: F, cap_digits: u32) -> Option<Ordering>
where
    F: Fn(u32) -> BoundInterval,
{
    let cap = digits_to_bits(cap_digits).max(64);
    let mut bits = 64;
    loop {
        if let Some(s) = enclose(bits).sign() {
            return Some(s);
        }
        if bits >= cap {
            return None;
        }
        bits = (bits * 2).min(cap);
    }
}
