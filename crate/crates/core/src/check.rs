//! Verdicts shared by the verifiers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates, then pass; all-skipped stays skipped.
    pub fn combine(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Skipped;
        for v in items {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Pass => out = Verdict::Pass,
                Verdict::Skipped => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Coefficientwise agreement, lowest degree first.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub per_degree: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn from_degrees(name: impl Into<String>, per_degree: Vec<bool>) -> CheckReport {
        let verdict = Verdict::from_bool(per_degree.iter().all(|&b| b));
        CheckReport { name: name.into(), verdict, per_degree, detail: None }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> CheckReport {
        CheckReport { name: name.into(), verdict: Verdict::Skipped, per_degree: Vec::new(), detail: Some(reason.into()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> CheckReport {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
