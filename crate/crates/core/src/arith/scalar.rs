use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::interval::{decide_sign, BoundInterval};
use super::quadratic::Quadratic;
use super::rational::{decimal_string, format_rational, Rational};

/// Ring operations shared by every level of the scalar tower, so that
/// polynomial evaluation is written once.
pub trait ExactRing: Clone {
    /// The rational `r` in the same tower (and context) as `self`.
    fn embed(&self, r: &Rational) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;

    fn ring_pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.embed(&Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.ring_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.ring_mul(&base);
            }
        }
        acc
    }
}

impl ExactRing for Rational {
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl ExactRing for Quadratic {
    fn embed(&self, r: &Rational) -> Self {
        Quadratic::embed(self, r)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_pow(&self, e: u32) -> Self {
        self.pow(e)
    }
}

impl ExactRing for BoundInterval {
    fn embed(&self, r: &Rational) -> Self {
        BoundInterval::point(r.clone())
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

/// Bits used when a quadratic value is promoted into the interval tower.
const PROMOTION_BITS: u32 = 256;

/// A value in one of the three exact towers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Quadratic(Quadratic),
    Interval(BoundInterval),
}

impl Scalar {
    pub fn enclose(&self, bits: u32) -> BoundInterval {
        match self {
            Scalar::Rational(r) => BoundInterval::point(r.clone()),
            Scalar::Quadratic(q) => q.enclose(bits),
            Scalar::Interval(i) => i.clone(),
        }
    }

    /// Folds a rational-valued quadratic back to `Rational`.
    pub fn simplify(self) -> Self {
        match self {
            Scalar::Quadratic(q) if q.is_rational() => Scalar::Rational(q.rational_part().clone()),
            other => other,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quadratic(q) => q.as_rational(),
            Scalar::Interval(_) => None,
        }
    }

    /// Whether the value lies in the open unit interval; `None` when an
    /// interval straddles a boundary.
    pub fn in_open_unit_interval(&self) -> Option<bool> {
        let zero = Rational::zero();
        let one = Rational::one();
        match self {
            Scalar::Rational(r) => Some(r > &zero && r < &one),
            Scalar::Quadratic(q) => {
                let below_one = (&q.embed(&one) - q).signum() == Ordering::Greater;
                Some(q.signum() == Ordering::Greater && below_one)
            }
            Scalar::Interval(i) => {
                if i.lo() > &zero && i.hi() < &one {
                    Some(true)
                } else if i.hi() <= &zero || i.lo() >= &one {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Scalar::Rational(r) => decimal_string(r, digits),
            Scalar::Quadratic(q) => q.to_decimal(digits),
            Scalar::Interval(i) => i.to_decimal(digits),
        }
    }

    fn promote_pair(&self, rhs: &Self) -> (Scalar, Scalar) {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Quadratic(b)) => (Quadratic(b.embed(a)), rhs.clone()),
            (Quadratic(a), Rational(b)) => (self.clone(), Quadratic(a.embed(b))),
            (Interval(_), other) => (self.clone(), Interval(other.enclose(PROMOTION_BITS))),
            (other, Interval(_)) => (Interval(other.enclose(PROMOTION_BITS)), rhs.clone()),
            _ => (self.clone(), rhs.clone()),
        }
    }

    fn binary(&self, rhs: &Self, op: Op) -> Self {
        use Scalar::*;
        let (a, b) = self.promote_pair(rhs);
        match (a, b) {
            (Rational(a), Rational(b)) => Rational(op.apply(&a, &b)),
            (Quadratic(a), Quadratic(b)) => Quadratic(op.apply(&a, &b)),
            (Interval(a), Interval(b)) => Interval(op.apply(&a, &b)),
            _ => unreachable!("promotion yields a common tower"),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Op {
    fn apply<R: ExactRing>(self, a: &R, b: &R) -> R {
        match self {
            Op::Add => a.ring_add(b),
            Op::Sub => a.ring_sub(b),
            Op::Mul => a.ring_mul(b),
        }
    }
}

impl ExactRing for Scalar {
    fn embed(&self, r: &Rational) -> Self {
        match self {
            Scalar::Rational(_) => Scalar::Rational(r.clone()),
            Scalar::Quadratic(q) => Scalar::Quadratic(q.embed(r)),
            Scalar::Interval(_) => Scalar::Interval(BoundInterval::point(r.clone())),
        }
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.binary(rhs, Op::Add)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.binary(rhs, Op::Sub)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.binary(rhs, Op::Mul)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<Quadratic> for Scalar {
    fn from(q: Quadratic) -> Self {
        Scalar::Quadratic(q)
    }
}

impl From<BoundInterval> for Scalar {
    fn from(i: BoundInterval) -> Self {
        Scalar::Interval(i)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", format_rational(r)),
            Scalar::Quadratic(q) => write!(f, "{q}"),
            Scalar::Interval(i) => {
                write!(f, "[{}, {}]", format_rational(i.lo()), format_rational(i.hi()))
            }
        }
    }
}

/// Outcome of a cross-tower comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// Compares two scalars, exactly when they share a tower and otherwise by
/// interval enclosures with precision doubling up to `cap_digits`.
pub fn compare(a: &Scalar, b: &Scalar, cap_digits: u32) -> Comparison {
    use Scalar::*;
    match (a, b) {
        (Rational(x), Rational(y)) => x.cmp(y).into(),
        (Rational(x), Quadratic(y)) => y.embed(x).try_cmp(y).map_or(Comparison::Undecided, Into::into),
        (Quadratic(x), Rational(y)) => x.try_cmp(&x.embed(y)).map_or(Comparison::Undecided, Into::into),
        (Quadratic(x), Quadratic(y)) if x.compatible(y) => x.try_cmp(y).map_or(Comparison::Undecided, Into::into),
        _ => decide_sign(|bits| a.enclose(bits).sub(&b.enclose(bits)), cap_digits)
            .map_or(Comparison::Undecided, Into::into),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{p0_of_t, rat};
    use num_bigint::BigInt;

    #[test]
    fn promotion_rational_into_quadratic() {
        let p = Scalar::from(p0_of_t(15));
        let s = p.ring_add(&Scalar::from(rat(1, 2)));
        assert!(matches!(s, Scalar::Quadratic(_)));
    }

    #[test]
    fn cross_radicand_compare_uses_intervals() {
        let a = Scalar::from(Quadratic::new(rat(0, 1), rat(1, 1), BigInt::from(2)));
        let b = Scalar::from(Quadratic::new(rat(0, 1), rat(1, 1), BigInt::from(3)));
        assert_eq!(compare(&a, &b, 50), Comparison::Less);
        assert_eq!(compare(&b, &Scalar::from(rat(17, 10)), 50), Comparison::Greater);
        let wide = Scalar::from(BoundInterval::new(rat(0, 1), rat(1, 1)));
        assert_eq!(compare(&wide, &Scalar::from(rat(1, 2)), 50), Comparison::Undecided);
    }

    #[test]
    fn unit_interval_membership() {
        assert_eq!(Scalar::from(p0_of_t(1)).in_open_unit_interval(), Some(true));
        assert_eq!(Scalar::from(rat(1, 1)).in_open_unit_interval(), Some(false));
        let i = Scalar::from(BoundInterval::new(rat(1, 2), rat(3, 2)));
        assert_eq!(i.in_open_unit_interval(), None);
    }
}
