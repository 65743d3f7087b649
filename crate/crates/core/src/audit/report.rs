use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The interval precision cap was reached before the sign was decided.
    Undecided,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked claim at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditStep {
    pub claim_id: String,
    pub t: u32,
    pub verdict: Verdict,
    pub lhs_decimal_50: String,
    pub rhs_decimal_50: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Per-claim aggregate over the audited range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim_id: String,
    pub description: String,
    pub checked: usize,
    pub holds: usize,
    pub fails: usize,
    pub undecided: usize,
    /// Smallest audited `t` at which the claim holds.
    pub first_holds: Option<u32>,
    /// Smallest `t₀` such that the claim holds at every audited `t ≥ t₀`.
    pub holds_from: Option<u32>,
    /// The claim is asserted for `t ≥ asserted_from`; `None` when no
    /// verdict is prescribed.
    pub asserted_from: Option<u32>,
    /// Fails or undecided steps inside the asserted range.
    pub violations: usize,
}

/// A claim id with its description and the range where it is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub asserted_from: Option<u32>,
}

pub const fn claim(id: &'static str, description: &'static str, asserted_from: Option<u32>) -> ClaimSpec {
    ClaimSpec { id, description, asserted_from }
}

/// Overall result of a report, mapped to exit codes by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub title: String,
    pub steps: Vec<AuditStep>,
    pub summary: Vec<ClaimSummary>,
}

impl AuditReport {
    /// Builds the per-claim summary; `descriptions` fixes the claim order.
    pub fn new(title: impl Into<String>, steps: Vec<AuditStep>, claims: &[ClaimSpec]) -> Self {
        let mut by_claim: BTreeMap<&str, Vec<&AuditStep>> = BTreeMap::new();
        for s in &steps {
            by_claim.entry(s.claim_id.as_str()).or_default().push(s);
        }
        let mut summary = Vec::new();
        let mut seen = Vec::new();
        let order = claims
            .iter()
            .map(|c| (c.id.to_string(), c.description.to_string(), c.asserted_from))
            .chain(by_claim.keys().map(|k| (k.to_string(), String::new(), Some(0))));
        for (id, description, asserted_from) in order {
            if seen.contains(&id) {
                continue;
            }
            let Some(list) = by_claim.get(id.as_str()) else { continue };
            seen.push(id.clone());
            let count = |v: Verdict| list.iter().filter(|s| s.verdict == v).count();
            let first_holds = list.iter().filter(|s| s.verdict == Verdict::Holds).map(|s| s.t).min();
            let last_bad =
                list.iter().filter(|s| matches!(s.verdict, Verdict::Fails | Verdict::Undecided)).map(|s| s.t).max();
            let holds_from = match last_bad {
                None => first_holds,
                Some(b) => list.iter().filter(|s| s.verdict == Verdict::Holds && s.t > b).map(|s| s.t).min(),
            };
            let violations = asserted_from.map_or(0, |from| {
                list.iter().filter(|s| s.t >= from && matches!(s.verdict, Verdict::Fails | Verdict::Undecided)).count()
            });
            summary.push(ClaimSummary {
                claim_id: id,
                description,
                checked: list.len(),
                holds: count(Verdict::Holds),
                fails: count(Verdict::Fails),
                undecided: count(Verdict::Undecided),
                first_holds,
                holds_from,
                asserted_from,
                violations,
            });
        }
        Self { title: title.into(), steps, summary }
    }

    pub fn step(&self, claim_id: &str, t: u32) -> Option<&AuditStep> {
        self.steps.iter().find(|s| s.claim_id == claim_id && s.t == t)
    }

    pub fn verdict(&self, claim_id: &str, t: u32) -> Option<Verdict> {
        self.step(claim_id, t).map(|s| s.verdict)
    }

    pub fn claim(&self, claim_id: &str) -> Option<&ClaimSummary> {
        self.summary.iter().find(|c| c.claim_id == claim_id)
    }

    pub fn undecided(&self) -> usize {
        self.steps.iter().filter(|s| s.verdict == Verdict::Undecided).count()
    }

    /// `Fail` when an asserted claim fails inside its range, otherwise
    /// `Undecided` when one is undecided there.
    pub fn outcome(&self) -> Outcome {
        let in_range = |s: &AuditStep, v: Verdict| {
            s.verdict == v && self.claim(&s.claim_id).and_then(|c| c.asserted_from).is_some_and(|from| s.t >= from)
        };
        if self.steps.iter().any(|s| in_range(s, Verdict::Fails)) {
            Outcome::Fail
        } else if self.steps.iter().any(|s| in_range(s, Verdict::Undecided)) {
            Outcome::Undecided
        } else {
            Outcome::Pass
        }
    }

    /// No step fails or is undecided.
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| matches!(s.verdict, Verdict::Holds | Verdict::NotApplicable))
    }

    /// The steps as a JSON array.
    pub fn steps_json(&self) -> String {
        serde_json::to_string(&self.steps).expect("steps serialize")
    }

    /// Title, steps and summary as one JSON object.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary table followed by the non-holding steps.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(
            out,
            "{:<26} {:>7} {:>7} {:>7} {:>9} {:>11} {:>10} {:>8} {:>10}  description",
            "claim", "checked", "holds", "fails", "undecided", "first_holds", "holds_from", "asserted", "violations"
        );
        let opt = |v: Option<u32>| v.map_or("-".to_string(), |x| x.to_string());
        for c in &self.summary {
            let _ = writeln!(
                out,
                "{:<26} {:>7} {:>7} {:>7} {:>9} {:>11} {:>10} {:>8} {:>10}  {}",
                c.claim_id,
                c.checked,
                c.holds,
                c.fails,
                c.undecided,
                opt(c.first_holds),
                opt(c.holds_from),
                c.asserted_from.map_or("open".to_string(), |a| format!(">={a}")),
                c.violations,
                c.description
            );
        }
        let bad: Vec<_> =
            self.steps.iter().filter(|s| matches!(s.verdict, Verdict::Fails | Verdict::Undecided)).collect();
        if !bad.is_empty() {
            let _ = writeln!(out, "\nnon-holding steps ({}):", bad.len());
            for s in bad.iter().take(50) {
                let _ = writeln!(
                    out,
                    "  {} t={} {}: lhs={} rhs={}{}",
                    s.claim_id,
                    s.t,
                    s.verdict,
                    short(&s.lhs_decimal_50),
                    short(&s.rhs_decimal_50),
                    s.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
                );
            }
            if bad.len() > 50 {
                let _ = writeln!(out, "  ... {} more", bad.len() - 50);
            }
        }
        out
    }
}

fn short(s: &str) -> &str {
    match s.find('.') {
        Some(dot) if s.len() > dot + 13 => &s[..dot + 13],
        _ => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(id: &str, t: u32, v: Verdict) -> AuditStep {
        AuditStep {
            claim_id: id.into(),
            t,
            verdict: v,
            lhs_decimal_50: "0".into(),
            rhs_decimal_50: "1".into(),
            witness: None,
        }
    }

    #[test]
    fn holds_from_skips_late_failures() {
        let steps = vec![
            step("a", 1, Verdict::Holds),
            step("a", 2, Verdict::Fails),
            step("a", 3, Verdict::Holds),
            step("a", 4, Verdict::Holds),
        ];
        let r = AuditReport::new("x", steps, &[claim("a", "claim a", Some(3))]);
        let c = r.claim("a").unwrap();
        assert_eq!((c.first_holds, c.holds_from), (Some(1), Some(3)));
        assert!(!r.all_hold());
        assert_eq!(r.outcome(), Outcome::Pass);
        assert_eq!(c.violations, 0);
        let json = r.to_json();
        assert!(json.contains("\"verdict\": \"fails\""));
        assert!(r.to_table().contains("non-holding steps (1)"));
    }
}
