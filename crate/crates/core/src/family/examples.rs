use std::str::FromStr;

use super::explicit::ExplicitFamily;
use super::mask::SubsetMask;
use crate::error::{Error, Result};

/// Hand-built families used to show that measure alone does not force a
/// family into a star or a frontier family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedExample {
    /// The `t`-star with `[t]` swapped for `[n] ∖ {1}`: 2-wise
    /// `t`-intersecting, close to the star in measure, not inside it.
    GPrime,
    /// `{[t+1] ∪ A : ∅ ≠ A ⊆ [t+2, n]} ∪ {[n] ∖ {i} : i ∈ [n]}`: 3-wise
    /// `t`-intersecting with measure near `p^{t+1}`.
    SecondLayer,
}

impl FromStr for NamedExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gprime" => Ok(NamedExample::GPrime),
            "second-layer" => Ok(NamedExample::SecondLayer),
            other => Err(Error::UnknownExample(other.to_string())),
        }
    }
}

pub fn make_named_example(name: NamedExample, t: u32, n: u32) -> Result<ExplicitFamily> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let full = SubsetMask::full(n.min(62));
    match name {
        NamedExample::GPrime => {
            if n < t + 2 {
                return Err(Error::InvalidParameters(format!("gprime needs n >= t+2 (t={t}, n={n})")));
            }
            let core = SubsetMask::full(t);
            ExplicitFamily::from_predicate(n, |g| (core.is_subset_of(g) && g != core) || g == full.without(1))
        }
        NamedExample::SecondLayer => {
            if n < t + 4 {
                return Err(Error::InvalidParameters(format!("second-layer needs n >= t+4 (t={t}, n={n})")));
            }
            let core = SubsetMask::full(t + 1);
            ExplicitFamily::from_predicate(n, |g| (core.is_subset_of(g) && g != core) || g.len() == n - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::is_r_wise_t_intersecting;

    #[test]
    fn gprime_size_and_intersection() {
        let g = make_named_example(NamedExample::GPrime, 2, 5).unwrap();
        assert_eq!(g.len(), 1 << 3);
        assert!(!g.contains(SubsetMask::full(2)));
        assert!(g.contains(SubsetMask::from_elements([2, 3, 4, 5])));
        assert!(is_r_wise_t_intersecting(&g, 2, 2));
    }

    #[test]
    fn second_layer_is_three_wise() {
        let g = make_named_example(NamedExample::SecondLayer, 2, 6).unwrap();
        assert!(is_r_wise_t_intersecting(&g, 3, 2));
        assert!(!g.contains(SubsetMask::full(3)));
        assert!(g.contains(SubsetMask::from_elements([1, 2, 3, 4])));
        assert!(g.contains(SubsetMask::full(6).without(1)));
    }

    #[test]
    fn bounds_and_names() {
        assert!(make_named_example(NamedExample::GPrime, 3, 4).is_err());
        assert!(make_named_example(NamedExample::SecondLayer, 2, 5).is_err());
        assert!("nope".parse::<NamedExample>().is_err());
        assert_eq!("second-layer".parse::<NamedExample>().unwrap(), NamedExample::SecondLayer);
    }
}
