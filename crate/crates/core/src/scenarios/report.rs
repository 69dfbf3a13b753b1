use std::fmt;

use crate::kernel::KernelError;
use crate::logic::{Formula, TruthValue};
use crate::timeline::{BcpReport, ModelKind, Timeline, TimelineError};

use super::duality::{assign_duality, duality_check, DualityAudit, DualityRecord};
use super::{list, Event, EventKind, Scenario, ScenarioError};

#[derive(Clone, Debug, PartialEq)]
pub struct EpochRow {
    pub start: f64,
    pub end: Option<f64>,
    pub interpretation: String,
    pub delta: Vec<Formula>,
    /// Model kind for the tracked atom.
    pub kind: ModelKind,
}

/// One row of the truth table: a formula's value at each labeled time.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthRow {
    pub label: String,
    pub formula: Formula,
    pub values: Vec<TruthValue>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RetroRow {
    pub asserted_at: String,
    pub interval: (String, String),
    pub formula: Formula,
    pub support: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rejection {
    pub time: String,
    pub formulas: Vec<Formula>,
    /// "illegal axiom", "inconsistent extension" or the raw error.
    pub diagnosis: String,
    pub reason: String,
}

/// Everything a scenario run produces.
#[derive(Clone, Debug, PartialEq)]
pub struct TimelineReport {
    pub scenario: String,
    pub theory: String,
    pub glosses: Vec<(String, String)>,
    pub bridges: Vec<Formula>,
    /// Time labels, the truth-table columns.
    pub columns: Vec<String>,
    pub epochs: Vec<EpochRow>,
    pub truth: Vec<TruthRow>,
    pub retro: Vec<RetroRow>,
    pub rejections: Vec<Rejection>,
    pub bcp: BcpReport,
    pub duality_records: Vec<DualityRecord>,
    pub duality: DualityAudit,
    /// Expected rejections that were accepted instead.
    pub mismatches: Vec<String>,
    pub timeline: Timeline,
}

impl TimelineReport {
    pub fn expectations_met(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.bcp.passed() && self.duality.passed() && self.expectations_met()
    }

    /// The truth row labeled `label`.
    pub fn row(&self, label: &str) -> Option<&TruthRow> {
        self.truth.iter().find(|r| r.label == label)
    }
}

fn diagnose(e: &TimelineError) -> String {
    match e {
        TimelineError::Kernel(KernelError::IllegalAxiom { .. }) => "illegal axiom".into(),
        TimelineError::Kernel(KernelError::Inconsistent { .. }) => "inconsistent extension".into(),
        other => other.to_string(),
    }
}

fn tag(ev: &Event) -> impl Fn(TimelineError) -> ScenarioError + '_ {
    move |source| ScenarioError::Event {
        line: ev.line,
        event: ev.describe(),
        source,
    }
}

/// Replays `s` on a fresh timeline.
///
/// Expected rejections that do get rejected are logged; any other rejection
/// aborts the run with the originating event attached.
pub fn run_scenario(s: &Scenario) -> Result<TimelineReport, ScenarioError> {
    let value = |label: &str| s.time(label).expect("validated time label").value;
    let mut tl =
        Timeline::new(s.base().clone(), s.start()).map_err(|source| ScenarioError::Event {
            line: 0,
            event: "start".into(),
            source,
        })?;
    let mut rejections = Vec::new();
    let mut mismatches = Vec::new();

    for t in &s.times {
        let here: Vec<&Event> = s.events.iter().filter(|e| e.time == t.label).collect();
        let declares: Vec<&Event> = here
            .iter()
            .copied()
            .filter(|e| matches!(e.kind, EventKind::Declare(_)))
            .collect();
        if let Some(first) = declares.first() {
            let delta: Vec<Formula> = declares
                .iter()
                .flat_map(|e| match &e.kind {
                    EventKind::Declare(fs) => fs.clone(),
                    _ => Vec::new(),
                })
                .collect();
            tl = tl.declare(t.value, &delta).map_err(tag(first))?;
        }
        for ev in here {
            match &ev.kind {
                EventKind::Declare(_) | EventKind::Audit => {}
                EventKind::Retro {
                    start,
                    end,
                    formula,
                } => {
                    tl = tl
                        .retro_assert(t.value, (value(start), value(end)), formula)
                        .map_err(tag(ev))?;
                }
                EventKind::ExpectReject(fs) => match tl.check_declaration(t.value, fs) {
                    Err(e) => rejections.push(Rejection {
                        time: t.label.clone(),
                        formulas: fs.clone(),
                        diagnosis: diagnose(&e),
                        reason: e.to_string(),
                    }),
                    Ok(_) => mismatches.push(format!(
                        "line {}: expected rejection of '{}' at {} but it was accepted",
                        ev.line,
                        list(fs),
                        t.label
                    )),
                },
            }
        }
    }

    let no_event = |source| ScenarioError::Event {
        line: 0,
        event: "report".into(),
        source,
    };
    let kinds = tl.model_kinds(&s.tracked).map_err(no_event)?;
    let epochs = tl
        .epochs()
        .iter()
        .zip(&kinds)
        .map(|(e, k)| EpochRow {
            start: e.start,
            end: k.end,
            interpretation: e.theory.name().to_string(),
            delta: e.delta.clone(),
            kind: k.kind,
        })
        .collect();

    let mut rows: Vec<(String, Formula)> = s
        .atoms
        .iter()
        .map(|a| (a.atom.to_string(), Formula::Atom(a.atom.clone())))
        .collect();
    let mut retro = Vec::new();
    for r in tl.retro_assertions() {
        let label_of = |v: f64| s.label_of(v).unwrap_or("?").to_string();
        let (a, b) = (label_of(r.interval.0), label_of(r.interval.1));
        rows.push((format!("retro {} [{a},{b})", r.formula), r.formula.clone()));
        retro.push(RetroRow {
            asserted_at: label_of(r.asserted_at),
            interval: (a, b),
            formula: r.formula.clone(),
            support: r.support.clone(),
        });
    }
    let truth = rows
        .into_iter()
        .map(|(label, formula)| {
            let values = s
                .times
                .iter()
                .map(|t| tl.truth_at(t.value, &formula))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TruthRow {
                label,
                formula,
                values,
            })
        })
        .collect::<Result<Vec<_>, TimelineError>>()
        .map_err(no_event)?;

    let bcp = tl.bcp_check(&s.tracked);
    let duality_records = assign_duality(s, &tl).map_err(no_event)?;
    let duality = duality_check(&duality_records);

    Ok(TimelineReport {
        scenario: s.name.clone(),
        theory: s.base().name().to_string(),
        glosses: s
            .atoms
            .iter()
            .map(|a| (a.atom.to_string(), a.gloss.clone()))
            .collect(),
        bridges: s.bridges.clone(),
        columns: s.times.iter().map(|t| t.label.clone()).collect(),
        epochs,
        truth,
        retro,
        rejections,
        bcp,
        duality_records,
        duality,
        mismatches,
        timeline: tl,
    })
}

fn end_str(end: Option<f64>) -> String {
    end.map_or_else(|| "inf".to_string(), |e| e.to_string())
}

impl fmt::Display for TimelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.scenario)?;
        writeln!(f, "theory {}", self.theory)?;
        for b in &self.bridges {
            writeln!(f, "  bridge {b}")?;
        }
        writeln!(f, "\natoms")?;
        for (a, g) in &self.glosses {
            writeln!(f, "  {a}: {g}")?;
        }

        writeln!(f, "\nepochs (model kind for {})", self.bcp.tracked)?;
        for e in &self.epochs {
            let delta = if e.delta.is_empty() {
                String::new()
            } else {
                format!("  declared {}", list(&e.delta))
            };
            writeln!(
                f,
                "  [{}, {})  {}  {}{}",
                e.start,
                end_str(e.end),
                e.interpretation,
                e.kind,
                delta
            )?;
        }

        writeln!(f, "\ntruth table")?;
        let width = self
            .truth
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(0)
            .max(7);
        let mut header = format!("  {:<width$}", "");
        for c in &self.columns {
            header.push_str(&format!("  {c:<7}"));
        }
        writeln!(f, "{}", header.trim_end())?;
        for r in &self.truth {
            let mut line = format!("  {:<width$}", r.label);
            for v in &r.values {
                line.push_str(&format!("  {:<7}", v.to_string()));
            }
            writeln!(f, "{}", line.trim_end())?;
        }

        writeln!(f, "\nretro assertions")?;
        if self.retro.is_empty() {
            writeln!(f, "  none")?;
        }
        for r in &self.retro {
            writeln!(
                f,
                "  at {}: {} on [{},{})  from {}",
                r.asserted_at,
                r.formula,
                r.interval.0,
                r.interval.1,
                list(&r.support)
            )?;
        }

        writeln!(f, "\nrejections")?;
        if self.rejections.is_empty() {
            writeln!(f, "  none")?;
        }
        for r in &self.rejections {
            writeln!(
                f,
                "  at {}: declare {}  [{}] {} (expected)",
                r.time,
                list(&r.formulas),
                r.diagnosis,
                r.reason
            )?;
        }

        writeln!(f, "\nbcp")?;
        for v in &self.bcp.violations {
            writeln!(f, "  violation: {v}")?;
        }
        writeln!(f, "  {}", self.bcp.verdict())?;

        writeln!(f, "\nduality")?;
        writeln!(f, "{}", self.duality)?;

        if !self.mismatches.is_empty() {
            writeln!(f, "\nmismatches")?;
            for m in &self.mismatches {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}
