//! Machine-readable run reports: one JSON object per instance, rendered as
//! JSON lines. Reports contain no timing or host information, so the same
//! seed and binary produce byte-identical report files.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use polycal::oracles::OracleReport;
use polycal::QCReport;

use crate::instance::{Instance, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeReport {
    pub probe: Value,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witnesses: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub kind: Kind,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qc: Option<QCReport>,
    pub probes: Vec<ProbeReport>,
    pub oracle: OracleReport,
    /// A failing probe repackaged as a standalone instance; re-running it
    /// reproduces the failure in isolation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Instance>,
}

impl Report {
    /// Folds probe verdicts into the instance verdict: any failure fails
    /// the instance; an instance whose probes all skipped is a skip.
    pub fn conclude(
        instance: &Instance,
        qc: Option<QCReport>,
        probes: Vec<ProbeReport>,
        oracle: OracleReport,
    ) -> Report {
        let any_fail = probes.iter().any(|p| p.verdict == Verdict::Fail) || !oracle.passed();
        let all_skip = !probes.is_empty() && probes.iter().all(|p| p.verdict == Verdict::Skip);
        let (verdict, reason) = if any_fail {
            (Verdict::Fail, None)
        } else if all_skip {
            (
                Verdict::Skip,
                probes.iter().find_map(|p| p.reason.clone()),
            )
        } else {
            (Verdict::Pass, None)
        };
        let counterexample = if any_fail {
            probes
                .iter()
                .find(|p| p.verdict == Verdict::Fail)
                .map(|p| Instance {
                    id: Some(format!("{}__counterexample", instance.display_id())),
                    kind: instance.kind,
                    payload: instance.payload.clone(),
                    probe_points: if p.probe.is_null() {
                        None
                    } else {
                        Some(Value::Array(vec![p.probe.clone()]))
                    },
                })
        } else {
            None
        };
        Report {
            id: instance.display_id(),
            kind: instance.kind,
            verdict,
            reason,
            qc,
            probes,
            oracle,
            counterexample,
        }
    }

    pub fn summary_line(&self) -> String {
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "skip",
        };
        let extra = match &self.reason {
            Some(r) => format!(" ({r})"),
            None => String::new(),
        };
        format!(
            "{} {} [{} probes, {} oracle checks]{}",
            v,
            self.id,
            self.probes.len(),
            self.oracle.checked,
            extra
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Aggregate over a fuzz run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn absorb(&mut self, report: &Report) {
        self.total += 1;
        match report.verdict {
            Verdict::Pass => self.passed += 1,
            Verdict::Fail => self.failed += 1,
            Verdict::Skip => self.skipped += 1,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} total: {} pass, {} fail, {} skip",
            self.total, self.passed, self.failed, self.skipped
        )
    }
}
