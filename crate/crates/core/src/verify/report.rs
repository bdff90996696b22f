use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A precondition did not hold; the check said nothing.
    Skipped,
}

/// An input point together with the value observed there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub input: Vec<f64>,
    pub value: f64,
}

impl Witness {
    pub fn new(label: impl Into<String>, input: Vec<f64>, value: f64) -> Self {
        Witness {
            label: label.into(),
            input,
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: BTreeMap<String, f64>,
    pub status: Status,
    pub passed: bool,
    /// Smallest observed distance to failure; negative when the check failed.
    pub worst_margin: f64,
    pub witnesses: Vec<Witness>,
    pub tolerance_used: f64,
    pub details: BTreeMap<String, Value>,
}

impl CheckResult {
    pub fn new(check_id: &str, params: &[(&str, f64)], tolerance: f64) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            status: Status::Pass,
            passed: true,
            worst_margin: f64::INFINITY,
            witnesses: Vec::new(),
            tolerance_used: tolerance,
            details: BTreeMap::new(),
        }
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.passed = true;
        self.worst_margin = 0.0;
        self.details.insert("skip_reason".into(), Value::String(reason.into()));
        self
    }

    /// Marks failure and records why.
    pub fn fail(&mut self, witness: Witness) {
        self.status = Status::Fail;
        self.passed = false;
        self.witnesses.push(witness);
    }

    /// Folds a margin into `worst_margin`; fails with the witness when it is
    /// not positive.
    pub fn margin(&mut self, margin: f64, witness: impl FnOnce() -> Witness) {
        if margin.is_nan() {
            self.worst_margin = f64::NAN;
            self.fail(witness());
            return;
        }
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if margin <= 0.0 {
            self.fail(witness());
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn is_skipped(&self) -> bool {
        self.status == Status::Skipped
    }

    /// Non-finite margins become 0 so the report stays valid JSON.
    pub(crate) fn finish(mut self) -> Self {
        if !self.worst_margin.is_finite() {
            if self.worst_margin.is_nan() {
                self.worst_margin = -1.0;
            } else {
                self.worst_margin = 0.0;
            }
        }
        if !self.passed && self.witnesses.is_empty() {
            self.witnesses.push(Witness::new("unspecified", vec![], f64::NAN));
        }
        self
    }
}

/// Numerical thresholds shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed increase between consecutive G values.
    pub monotone_slack: f64,
    /// Minimum margin for strict inequalities and witnesses.
    pub strict_margin: f64,
    /// Agreement of the extrapolated endpoint values with C₁ and C₂.
    pub endpoint: f64,
    /// Lower bound accepted for g on D.
    pub lemma_floor: f64,
    /// Relative tolerance for algebraic identities.
    pub identity: f64,
    /// Allowed negative excursion of second differences of f.
    pub fpp_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            monotone_slack: 1e-9,
            strict_margin: 1e-12,
            endpoint: 1e-5,
            lemma_floor: -1e-12,
            identity: 1e-10,
            fpp_slack: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub threshold_form: String,
    pub series_rel_tol: f64,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    /// Sampled (a, b, c, d) tuples.
    pub tuples: Vec<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl Report {
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for c in &self.checks {
            match c.status {
                Status::Pass => out.0 += 1,
                Status::Fail => out.1 += 1,
                Status::Skipped => out.2 += 1,
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_and_failure() {
        let mut r = CheckResult::new("x", &[("a", 0.5)], 1e-12);
        r.margin(0.3, || Witness::new("w", vec![0.1], 0.3));
        r.margin(0.1, || Witness::new("w", vec![0.2], 0.1));
        assert!(r.passed && r.worst_margin == 0.1);
        r.margin(-0.2, || Witness::new("bad", vec![0.3], -0.2));
        assert!(!r.passed);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.worst_margin, -0.2);
    }

    #[test]
    fn skipped_serializes() {
        let r = CheckResult::new("x", &[], 0.0).skipped("gate").finish();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"skipped\""));
        let back: CheckResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failed_checks_carry_witnesses() {
        let mut r = CheckResult::new("x", &[], 0.0);
        r.passed = false;
        let r = r.finish();
        assert!(!r.witnesses.is_empty());
    }
}
