use std::cmp::Ordering;

use frontier_core::arith::{
    compare, decide_sign, e_interval, format_rational, p0_of_t, parse_rational, q0_of_t, rat, Comparison,
    MeasurePolynomial, Quadratic, Rational, Scalar,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const RADICANDS: [i64; 3] = [69, 89, 409];

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=25).prop_map(|(n, d)| rat(n, d))
}

fn element() -> impl Strategy<Value = Quadratic> {
    (small_rational(), small_rational(), prop::sample::select(RADICANDS.to_vec()))
        .prop_map(|(a, b, d)| Quadratic::new(a, b, BigInt::from(d)))
}

fn triple() -> impl Strategy<Value = (Quadratic, Quadratic, Quadratic)> {
    (
        prop::sample::select(RADICANDS.to_vec()),
        [small_rational(), small_rational(), small_rational(), small_rational(), small_rational(), small_rational()],
    )
        .prop_map(|(d, r)| {
            let d = BigInt::from(d);
            (
                Quadratic::new(r[0].clone(), r[1].clone(), d.clone()),
                Quadratic::new(r[2].clone(), r[3].clone(), d.clone()),
                Quadratic::new(r[4].clone(), r[5].clone(), d),
            )
        })
}

/// Sign of `a + b√d` from `⌊√(b² d 10^120)⌋`, a 60-digit evaluation that
/// never squares both sides.
fn sign_by_digits(q: &Quadratic) -> Option<Ordering> {
    let scale = BigInt::from(10u32).pow(60);
    let a = q.rational_part();
    let b = q.surd_part();
    let num = b.numer() * b.numer() * q.radicand() * &scale * &scale;
    let den = b.denom() * b.denom();
    let root_floor = (num / den).sqrt();
    let surd = Rational::new(root_floor.clone(), scale.clone());
    let surd_hi = Rational::new(root_floor + 1, scale);
    let (lo, hi) = if b.is_negative() { (-surd_hi, -surd) } else { (surd, surd_hi) };
    let (lo, hi) = (a + lo, a + hi);
    if lo > Rational::zero() {
        Some(Ordering::Greater)
    } else if hi < Rational::zero() {
        Some(Ordering::Less)
    } else if b.is_zero() {
        Some(a.cmp(&Rational::zero()))
    } else {
        None
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!(&x + &(-&x), x.embed(&rat(0, 1)));
        if !x.is_zero() {
            let inv = x.recip().unwrap();
            prop_assert_eq!(&x * &inv, x.embed(&rat(1, 1)));
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        } else {
            prop_assert!(x.recip().is_none());
        }
    }

    #[test]
    fn norm_is_product_with_conjugate(x in element()) {
        let prod = &x * &x.conjugate();
        prop_assert!(prod.is_rational());
        prop_assert_eq!(prod.rational_part(), &x.norm());
    }

    #[test]
    fn sign_matches_sixty_digit_evaluation(x in element()) {
        if let Some(expected) = sign_by_digits(&x) {
            prop_assert_eq!(x.signum(), expected);
        }
        let decided = decide_sign(|bits| x.enclose(bits), 60);
        prop_assert_eq!(decided, Some(x.signum()));
    }

    #[test]
    fn compare_agrees_with_difference_sign((x, y, _) in triple()) {
        let expected: Comparison = (&x - &y).signum().into();
        prop_assert_eq!(compare(&Scalar::from(x.clone()), &Scalar::from(y.clone()), 100), expected);
    }

    #[test]
    fn eval_is_additive(
        a in prop::collection::vec((0u32..8, 0u32..8, -9i64..=9), 0..6),
        b in prop::collection::vec((0u32..8, 0u32..8, -9i64..=9), 0..6),
        t in 1u32..300,
    ) {
        let build = |terms: &[(u32, u32, i64)]| {
            let mut poly = MeasurePolynomial::new();
            for &(i, j, c) in terms {
                poly.add_term(i, j, rat(c, 1));
            }
            poly
        };
        let (pa, pb) = (build(&a), build(&b));
        let x = p0_of_t(t);
        prop_assert_eq!((&pa + &pb).eval(&x), &pa.eval(&x) + &pb.eval(&x));
        let r = rat(1, i64::from(t) + 1);
        prop_assert_eq!((&pa + &pb).eval(&r), pa.eval(&r) + pb.eval(&r));
    }

    #[test]
    fn rational_strings_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

#[test]
fn e_enclosures_are_nested_and_narrow() {
    let mut prev = e_interval(1);
    for digits in 2..=80 {
        let cur = e_interval(digits);
        assert!(cur.is_subset_of(&prev), "digits {digits}");
        let bound = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
        assert!(cur.width() < bound);
        prev = cur;
    }
    // 2.71828182845904523536028747135266249775724709369995 (50 digits)
    let e50 = e_interval(60);
    assert!(e50.to_decimal(50).starts_with("2.71828182845904523536028747135266249775724709369995"));
}

#[test]
fn p0_solves_its_quadratic() {
    for t in 1..=200u32 {
        let p = p0_of_t(t);
        let q = q0_of_t(t);
        assert_eq!(&p + &q, p.embed(&rat(1, 1)));
        // (t+2) p² − p − 1 = 0
        let lhs = &(&(&p.embed(&rat(i64::from(t) + 2, 1)) * &(&p * &p)) - &p) - &p.embed(&rat(1, 1));
        assert!(lhs.is_zero(), "t = {t}");
        assert_eq!(Scalar::from(p).in_open_unit_interval(), Some(true));
    }
}

#[test]
fn malformed_rationals_are_rejected() {
    for s in ["", "1/", "/2", "a/b", "1/0", "1//2", "1.5"] {
        assert!(parse_rational(s).is_err(), "{s:?}");
    }
    assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
    assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
}
