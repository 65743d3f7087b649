//! Exact scalar tower: big rationals, the quadratic field ℚ(√d), and
//! rational intervals for quantities that involve `e` or a second radicand.
//!
//! Values only ever leave the tower as decimal strings for display; every
//! comparison used by a verdict is decided exactly or by a rigorous
//! enclosure.

mod interval;
mod poly;
mod quadratic;
mod rational;
mod scalar;

pub use interval::{decide_sign, digits_to_bits, e_interval, BoundInterval};
pub use poly::{MeasurePolynomial, UniPoly};
pub use quadratic::Quadratic;
pub use rational::{binomial, decimal_string, format_rational, int, parse_rational, rat, Rational};
pub use scalar::{compare, Comparison, ExactRing, Scalar};

use num_bigint::BigInt;

/// `p₀(t) = 2 / (√(4t+9) − 1)`, the probability at which the measures of the
/// `t`-star and the first frontier family coincide.
///
/// The result lives in ℚ(√(4t+9)); when `4t+9` is a perfect square (for
/// example `t = 28, 54, 70`) it is a plain rational.
pub fn p0_of_t(t: u32) -> Quadratic {
    assert!(t >= 1, "p0 is defined for t >= 1");
    let d = BigInt::from(4 * u64::from(t) + 9);
    // 2/(√d − 1) = 2(√d + 1)/(d − 1)
    let denom = Rational::from_integer(&d - 1);
    let c = rat(2, 1) / denom;
    Quadratic::new(c.clone(), c, d)
}

/// `q₀(t) = 1 − p₀(t)`.
pub fn q0_of_t(t: u32) -> Quadratic {
    let p0 = p0_of_t(t);
    &p0.embed(&rat(1, 1)) - &p0
}
