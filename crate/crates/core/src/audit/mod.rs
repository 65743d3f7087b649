//! Hole decomposition of shifted 3-wise `t`-intersecting families and exact
//! audits of the case inequalities.

mod cases;
mod corpus;
mod decompose;
mod report;

pub use cases::{audit_case_lemmas, case_claims, small_h_bound, CaseLemma, DEFAULT_CAP_DIGITS, T_LIMIT};
pub use corpus::{corpus_from_json_lines, corpus_to_json_lines, random_corpus, CorpusEntry};
pub use decompose::{
    audit_mifr, ekr_bound, h_param, hole_families, measure_bound_polynomial, measure_bound_rhs, two_wise_s, EkrKind,
    HParam, HoleDecomposition, MIFR_CLAIMS,
};
pub use report::{claim, AuditReport, AuditStep, ClaimSpec, ClaimSummary, Outcome, Verdict};
