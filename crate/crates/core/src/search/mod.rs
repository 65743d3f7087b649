//! Exhaustive search over maximal families on small ground sets.

mod cache;
mod canon;
mod enumerate;
mod verify;

pub use cache::{cache_entry_dir, enumerate_maximal_cached, CacheIndex, CACHE_FORMAT_VERSION};
pub use canon::{canonicalize, isomorphic, IsoClass, CANON_CAP};
pub use enumerate::{enumerate_maximal, enumerate_maximal_capped, ENUMERATION_CAP};
pub use verify::{
    verify_recognition, verify_recognition_on, verify_stability, verify_stability_on, RECOGNITION_CLAIMS,
    STABILITY_CLAIMS,
};
