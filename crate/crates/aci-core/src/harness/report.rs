use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::checks::{CheckId, ClaimKind};
use super::config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The computation could not reach the window the claim needs.
    WindowLimited,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    /// The statement checked.
    pub claim: String,
    pub kind: ClaimKind,
    pub status: CheckStatus,
    pub computed: Value,
    pub predicted: Value,
    pub detail: String,
    /// Wall time; left out of JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: ExperimentConfig,
    /// Draws needed before a random family passed the genericity checks.
    pub attempts: usize,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub construction_time: Duration,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn get(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "n = {}, prime = {}, variant = {}{}, draws = {}, construction {:.2?}\n",
            c.n,
            c.prime,
            c.variant.label(),
            c.variant.seed().map(|s| format!(" (seed {s})")).unwrap_or_default(),
            self.attempts,
            self.construction_time
        );
        for r in &self.checks {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::WindowLimited => "window-limited",
            };
            out.push_str(&format!("{status:>14}  {:<22} {:>9.2?}  {}\n", r.id.name(), r.elapsed, r.claim));
            if !r.detail.is_empty() {
                for line in r.detail.lines() {
                    out.push_str(&format!("{:16}{line}\n", ""));
                }
            }
            if r.status == CheckStatus::Fail {
                out.push_str(&format!("{:16}computed:  {}\n{:16}predicted: {}\n", "", r.computed, "", r.predicted));
            }
        }
        out
    }
}
