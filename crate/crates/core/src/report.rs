use std::fmt;

use serde::Serialize;

use crate::linalg::{format_rational, Rational};

/// One failed identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Equation id with sub-position, e.g. `"3.4.2-2"`; `"assoc"` at level 1.
    pub identity_id: String,
    /// Basis indices the identity was evaluated at.
    pub witness: Vec<usize>,
    /// lhs − rhs, as a coefficient vector (flattened for matrix identities).
    pub discrepancy: Vec<Rational>,
    /// First nonzero (row, col) for matrix-valued identities.
    pub entry: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// True when no violation carries `id` exactly or `id-…` as a prefix.
    pub fn holds(&self, id: &str) -> bool {
        !self.violations.iter().any(|v| {
            v.identity_id == id
                || v.identity_id.strip_prefix(id).is_some_and(|rest| rest.starts_with('-'))
        })
    }

    /// Distinct identity ids that failed, in first-seen order.
    pub fn failed_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !ids.contains(&v.identity_id.as_str()) {
                ids.push(&v.identity_id);
            }
        }
        ids
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct V<'a> {
            identity_id: &'a str,
            witness: &'a [usize],
            #[serde(skip_serializing_if = "Option::is_none")]
            entry: Option<[usize; 2]>,
            discrepancy: Vec<String>,
        }
        let vs: Vec<V> = self
            .violations
            .iter()
            .map(|v| V {
                identity_id: &v.identity_id,
                witness: &v.witness,
                entry: v.entry.map(|(a, b)| [a, b]),
                discrepancy: v.discrepancy.iter().map(format_rational).collect(),
            })
            .collect();
        serde_json::json!({ "ok": self.is_ok(), "violations": vs })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "  violated {} at {:?}", v.identity_id, v.witness)?;
            if let Some((r, c)) = v.entry {
                write!(f, " entry ({r},{c})")?;
            }
            let d: Vec<String> = v.discrepancy.iter().map(format_rational).collect();
            writeln!(f, ": lhs-rhs = [{}]", d.join(", "))?;
        }
        Ok(())
    }
}
