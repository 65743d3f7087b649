use super::explicit::{ExplicitFamily, EXPLICIT_CAP};
use super::mask::SubsetMask;
use crate::error::{Error, Result};

/// A family on any ground set `[n]`, `n ≥ m`, determined by the trace on the
/// window `[m]`: `G` is a member iff `G ∩ [m]` is a window member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowFamily {
    window: ExplicitFamily,
    monotone: bool,
}

impl WindowFamily {
    pub fn new(window: ExplicitFamily) -> Self {
        let monotone = window.is_upward_closed();
        Self { window, monotone }
    }

    pub fn from_members<I: IntoIterator<Item = SubsetMask>>(m: u32, members: I) -> Result<Self> {
        Ok(Self::new(ExplicitFamily::from_members(m, members)?))
    }

    pub fn window_size(&self) -> u32 {
        self.window.ground_size()
    }

    /// Window members as a family on `[m]`.
    pub fn window(&self) -> &ExplicitFamily {
        &self.window
    }

    /// Whether the window members are upward-closed in `2^[m]`.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// Membership of an arbitrary `G ⊆ [n]`.
    pub fn contains(&self, g: SubsetMask) -> bool {
        self.window.contains(g.intersection(SubsetMask::full(self.window_size())))
    }

    /// `{G ⊆ [n] : G ∩ [m] ∈ window}` as an explicit family.
    pub fn lift(&self, n: u32) -> Result<ExplicitFamily> {
        let m = self.window_size();
        if n < m {
            return Err(Error::InvalidParameters(format!(
                "cannot lift a window of size {m} to a ground set of size {n}"
            )));
        }
        if n > EXPLICIT_CAP {
            return Err(Error::GroundTooLarge { n, cap: EXPLICIT_CAP });
        }
        ExplicitFamily::from_predicate(n, |g| self.contains(g))
    }

    /// Inverse of [`WindowFamily::lift`]; fails unless `fam` is determined
    /// by its trace on `[m]`.
    pub fn restrict(fam: &ExplicitFamily, m: u32) -> Result<Self> {
        let n = fam.ground_size();
        if m > n {
            return Err(Error::InvalidParameters(format!("window {m} exceeds ground set {n}")));
        }
        let window_mask = SubsetMask::full(m);
        for x in 0..(1u64 << n) {
            let g = SubsetMask(x);
            if fam.contains(g) != fam.contains(g.intersection(window_mask)) {
                return Err(Error::Precondition(format!(
                    "family is not determined by its trace on [{m}] (witness {{{g}}})"
                )));
            }
        }
        Self::from_members(m, fam.members().filter(|g| g.is_subset_of(window_mask)))
    }
}

/// Parameters of the frontier family `{F : |F ∩ [t+ri]| ≥ t+(r−1)i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrontierParams {
    pub r: u32,
    pub t: u32,
    pub i: u32,
}

impl FrontierParams {
    pub fn new(r: u32, t: u32, i: u32) -> Result<Self> {
        if r < 2 || t < 1 {
            return Err(Error::InvalidParameters(format!(
                "frontier families need r >= 2 and t >= 1 (got r={r}, t={t})"
            )));
        }
        Ok(Self { r, t, i })
    }

    /// `t + r·i`.
    pub fn window_size(&self) -> u32 {
        self.t + self.r * self.i
    }

    /// `t + (r−1)·i`.
    pub fn threshold(&self) -> u32 {
        self.t + (self.r - 1) * self.i
    }
}

/// The frontier family as a window family on `[t+ri]`.
pub fn make_frontier(params: FrontierParams) -> Result<WindowFamily> {
    let m = params.window_size();
    if m > EXPLICIT_CAP {
        return Err(Error::GroundTooLarge { n: m, cap: EXPLICIT_CAP });
    }
    let k = params.threshold();
    let window = ExplicitFamily::from_predicate(m, |s| s.len() >= k)?;
    Ok(WindowFamily { window, monotone: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frontier_small_cases() {
        let f = make_frontier(FrontierParams::new(3, 1, 1).unwrap()).unwrap();
        assert_eq!(f.window_size(), 4);
        assert_eq!(f.window().len(), 5);
        assert!(f.is_monotone());
        let star = make_frontier(FrontierParams::new(3, 2, 0).unwrap()).unwrap();
        assert_eq!(star.window().members().collect::<Vec<_>>(), vec![SubsetMask::full(2)]);
    }

    #[test]
    fn lift_and_restrict_round_trip() {
        let w = WindowFamily::from_members(2, [SubsetMask::full(2)]).unwrap();
        let lifted = w.lift(4).unwrap();
        let got: Vec<String> = lifted.members().map(|m| m.to_string()).collect();
        assert_eq!(got, ["1 2", "1 2 3", "1 2 4", "1 2 3 4"]);
        assert_eq!(WindowFamily::restrict(&lifted, 2).unwrap(), w);
        assert!(w.lift(1).is_err());
        assert!(w.lift(23).is_err());
    }

    #[test]
    fn restrict_rejects_non_window_family() {
        let f = ExplicitFamily::from_members(3, [SubsetMask::from_elements([1, 3])]).unwrap();
        assert!(WindowFamily::restrict(&f, 2).is_err());
    }

    #[test]
    fn monotone_flag_detects_non_upsets() {
        let w = WindowFamily::from_members(2, [SubsetMask::from_elements([1])]).unwrap();
        assert!(!w.is_monotone());
    }

    #[test]
    fn window_cap() {
        assert!(make_frontier(FrontierParams::new(3, 5, 6).unwrap()).is_err());
        assert!(FrontierParams::new(1, 2, 0).is_err());
    }
}
