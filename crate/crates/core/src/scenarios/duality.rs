use std::fmt;

use crate::logic::Formula;
use crate::timeline::{Timeline, TimelineError};

use super::{EventKind, Scenario};

/// Slack allowed above 1 in `D^2 + V^2 <= 1`.
pub const DUALITY_TOLERANCE: f64 = 1e-12;

/// Distinguishability and visibility at one labeled time.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityRecord {
    pub label: String,
    pub time: f64,
    pub d: f64,
    pub v: f64,
}

impl DualityRecord {
    pub fn new(label: &str, time: f64, d: f64, v: f64) -> DualityRecord {
        DualityRecord {
            label: label.to_string(),
            time,
            d,
            v,
        }
    }
}

/// Endpoint assignment: an open path atom means no which-way information and
/// full fringe visibility, `(D, V) = (0, 1)`; once the path is decided,
/// `(1, 0)`.
///
/// Records are produced for the scenario's audit times, or for every labeled
/// time when it has none.
pub fn assign_duality(s: &Scenario, tl: &Timeline) -> Result<Vec<DualityRecord>, TimelineError> {
    let audited: Vec<&str> = s
        .events
        .iter()
        .filter(|e| e.kind == EventKind::Audit)
        .map(|e| e.time.as_str())
        .collect();
    let path = Formula::Atom(s.tracked.clone());
    let mut records = Vec::new();
    for t in &s.times {
        if !audited.is_empty() && !audited.contains(&t.label.as_str()) {
            continue;
        }
        let decided = tl.interpretation_at(t.value)?.classify(&path)?.is_decided();
        let (d, v) = if decided { (1.0, 0.0) } else { (0.0, 1.0) };
        records.push(DualityRecord::new(&t.label, t.value, d, v));
    }
    Ok(records)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityCheck {
    pub record: DualityRecord,
    /// `D^2 + V^2`.
    pub value: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityAudit {
    pub checks: Vec<DualityCheck>,
}

impl DualityAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn duality_check(records: &[DualityRecord]) -> DualityAudit {
    DualityAudit {
        checks: records
            .iter()
            .map(|r| {
                let value = r.d * r.d + r.v * r.v;
                DualityCheck {
                    record: r.clone(),
                    value,
                    passed: value <= 1.0 + DUALITY_TOLERANCE,
                }
            })
            .collect(),
    }
}

impl fmt::Display for DualityAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  {:<6} t={:<6} D={} V={}  D^2+V^2={}  {}",
                c.record.label,
                c.record.time,
                c.record.d,
                c.record.v,
                c.value,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "  summary: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
