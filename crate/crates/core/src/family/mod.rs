//! Set families on a ground set `[n]`: explicit membership tables, window
//! families determined by a prefix `[m]`, and the basic intersection
//! predicates.

mod examples;
mod explicit;
mod intersecting;
mod mask;
mod text;
mod window;

pub use examples::{make_named_example, NamedExample};
pub use explicit::{ExplicitFamily, EXPLICIT_CAP};
pub(crate) use intersecting::candidate_compatible;
pub use intersecting::{embeds_in_frontier_copy, is_r_wise_t_intersecting, SetFamily};
pub use mask::SubsetMask;
pub use text::{from_text, to_text};
pub use window::{make_frontier, FrontierParams, WindowFamily};

/// Minimal members of any family, ascending by mask.
pub fn minimal_members<F: SetFamily + ?Sized>(fam: &F) -> Vec<SubsetMask> {
    fam.table().minimal_members()
}

/// Shorthand for lifting `make_frontier(params)` to `[n]`.
pub fn frontier_lift(params: FrontierParams, n: u32) -> crate::Result<ExplicitFamily> {
    make_frontier(params)?.lift(n)
}
