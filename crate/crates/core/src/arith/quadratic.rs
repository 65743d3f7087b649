use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::BoundInterval;
use super::rational::{format_rational, Rational};

/// An element `a + b·√d` of ℚ(√d).
///
/// A perfect-square radicand is folded into `a` at construction, so values
/// such as `p₀(28) = 1/5` compare exactly with plain rationals. A value
/// with `b = 0` is compatible with every radicand; two irrational values can
/// only be combined when their radicands agree (mixing them panics).
#[derive(Clone, Debug)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        let root = d.sqrt();
        if &root * &root == d {
            let a = a + b * Rational::from_integer(root);
            return Self { a, b: Rational::zero(), d };
        }
        Self { a, b, d }
    }

    pub fn from_rational(a: Rational, d: BigInt) -> Self {
        Self::new(a, Rational::zero(), d)
    }

    /// The rational `r` in the same field as `self`.
    pub fn embed(&self, r: &Rational) -> Self {
        Self { a: r.clone(), b: Rational::zero(), d: self.d.clone() }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√d`, decided by comparing `a²` with `b²d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `−1`, `0` or `+1`.
    pub fn sign(&self) -> i8 {
        match self.signum() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self { a: c.a / &n, b: c.b / &n, d: c.d })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.embed(&Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact comparison; `None` when both values are irrational over
    /// different radicands.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.compatible(other) {
            Some((self - other).signum())
        } else {
            None
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.b.is_zero() || other.b.is_zero() || self.d == other.d
    }

    fn joint_radicand(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!("mixed radicands {} and {}", self.d, other.d)
        }
    }

    /// Rigorous enclosure with roughly `bits` significant bits.
    pub fn enclose(&self, bits: u32) -> BoundInterval {
        if self.b.is_zero() {
            return BoundInterval::point(self.a.clone());
        }
        let root = BoundInterval::sqrt_of(&Rational::from_integer(self.d.clone()), bits + 8);
        let v = BoundInterval::point(self.a.clone()).add(&root.scale(&self.b));
        v.round_outward(bits)
    }

    /// Decimal rendering with `digits` fractional digits (display only).
    pub fn to_decimal(&self, digits: usize) -> String {
        match self.as_rational() {
            Some(r) => super::rational::decimal_string(r, digits),
            None => self.enclose(((digits as f64) * 3.33) as u32 + 64).to_decimal(digits),
        }
    }
}

impl PartialEq for Quadratic {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for Quadratic {}

impl fmt::Display for Quadratic {
    /// `a+b*sqrt(d)`, or the bare rational when `b = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let sep = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}*sqrt({})", format_rational(&self.a), sep, format_rational(&self.b.abs()), self.d)
    }
}

impl<'a> Add<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: &'a Quadratic) -> Quadratic {
        let d = self.joint_radicand(rhs);
        Quadratic { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d }
    }
}

impl<'a> Sub<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: &'a Quadratic) -> Quadratic {
        let d = self.joint_radicand(rhs);
        Quadratic { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d }
    }
}

impl<'a> Mul<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: &'a Quadratic) -> Quadratic {
        let d = self.joint_radicand(rhs);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quadratic { a, b, d }
    }
}

impl<'a> Div<&'a Quadratic> for &'a Quadratic {
    type Output = Quadratic;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Quadratic) -> Quadratic {
        self * &rhs.recip().expect("division by zero in ℚ(√d)")
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Quadratic> for Quadratic {
            type Output = Quadratic;
            fn $m(self, rhs: Quadratic) -> Quadratic { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Quadratic> for Quadratic {
            type Output = Quadratic;
            fn $m(self, rhs: &'a Quadratic) -> Quadratic { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);
