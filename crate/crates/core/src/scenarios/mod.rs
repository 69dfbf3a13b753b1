//! Line-oriented scenario language and the built-in experiment library.
//!
//! ```text
//! scenario <name>
//! theory <name>                          # optional, default QM
//! atom <name> "<gloss>"
//! location <label> "<gloss>"
//! time <label> <real> [<location>]
//! bridge <formula>
//! track <atom>
//! at <time> declare <formula>, <formula>, ...
//! at <time> retro [<start>,<end>) <formula>
//! at <time> expect-reject declare <formula>, ...
//! at <time> audit
//! ```
//!
//! At each time, declarations take effect first; retro assertions,
//! expected rejections and audits are then processed in file order.

mod duality;
mod report;

use std::collections::BTreeSet;
use std::path::Path;

use thiserror::Error;

use crate::kernel::{KernelError, Theory};
use crate::logic::{parse_formula, Atom, Formula};
use crate::timeline::TimelineError;

pub use duality::{assign_duality, duality_check, DualityAudit, DualityCheck, DualityRecord};
pub use report::{run_scenario, EpochRow, Rejection, RetroRow, TimelineReport, TruthRow};

pub const BUILTIN_NAMES: [&str; 6] = [
    "afshar",
    "afshar_nogrid",
    "delayed_choice",
    "schrodinger_cat",
    "coin_toss",
    "young_two_slit",
];

fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "afshar" => include_str!("builtin/afshar.scn"),
        "afshar_nogrid" => include_str!("builtin/afshar_nogrid.scn"),
        "delayed_choice" => include_str!("builtin/delayed_choice.scn"),
        "schrodinger_cat" => include_str!("builtin/schrodinger_cat.scn"),
        "coin_toss" => include_str!("builtin/coin_toss.scn"),
        "young_two_slit" => include_str!("builtin/young_two_slit.scn"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("no built-in scenario named '{0}'")]
    UnknownBuiltin(String),
    #[error("line {line} ({event}): {source}")]
    Event {
        line: usize,
        event: String,
        source: TimelineError,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtomDecl {
    pub atom: Atom,
    pub gloss: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocationDecl {
    pub label: String,
    pub gloss: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeLabel {
    pub label: String,
    pub value: f64,
    pub location: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EventKind {
    Declare(Vec<Formula>),
    Retro {
        start: String,
        end: String,
        formula: Formula,
    },
    ExpectReject(Vec<Formula>),
    Audit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    /// Source line, for diagnostics.
    pub line: usize,
    pub time: String,
    pub kind: EventKind,
}

impl Event {
    pub fn describe(&self) -> String {
        match &self.kind {
            EventKind::Declare(fs) => format!("at {} declare {}", self.time, list(fs)),
            EventKind::Retro {
                start,
                end,
                formula,
            } => format!("at {} retro [{start},{end}) {formula}", self.time),
            EventKind::ExpectReject(fs) => {
                format!("at {} expect-reject declare {}", self.time, list(fs))
            }
            EventKind::Audit => format!("at {} audit", self.time),
        }
    }
}

pub(crate) fn list(fs: &[Formula]) -> String {
    fs.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub atoms: Vec<AtomDecl>,
    pub locations: Vec<LocationDecl>,
    pub times: Vec<TimeLabel>,
    pub bridges: Vec<Formula>,
    pub events: Vec<Event>,
    pub tracked: Atom,
    base: Theory,
}

impl Scenario {
    /// The base theory: the vocabulary with the bridge axioms.
    pub fn base(&self) -> &Theory {
        &self.base
    }

    pub fn time(&self, label: &str) -> Option<&TimeLabel> {
        self.times.iter().find(|t| t.label == label)
    }

    pub fn label_of(&self, value: f64) -> Option<&str> {
        self.times
            .iter()
            .find(|t| t.value == value)
            .map(|t| t.label.as_str())
    }

    pub fn start(&self) -> f64 {
        self.times[0].value
    }
}

/// Loads a built-in scenario by name.
pub fn builtin(name: &str) -> Result<Scenario, ScenarioError> {
    let src = builtin_source(name).ok_or_else(|| ScenarioError::UnknownBuiltin(name.into()))?;
    parse_scenario(src)
}

/// Source text of a built-in scenario.
pub fn builtin_text(name: &str) -> Option<&'static str> {
    builtin_source(name)
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

/// A built-in name, or otherwise a file path.
pub fn resolve(name_or_path: &str) -> Result<Scenario, ScenarioError> {
    if builtin_source(name_or_path).is_some() {
        builtin(name_or_path)
    } else {
        load_scenario(Path::new(name_or_path))
    }
}

/// Splits off a double-quoted gloss; returns (gloss, remainder).
fn quoted(rest: &str) -> Option<(String, &str)> {
    let rest = rest.trim_start();
    let body = rest.strip_prefix('"')?;
    let end = body.find('"')?;
    Some((body[..end].to_string(), body[end + 1..].trim()))
}

fn word(rest: &str) -> (&str, &str) {
    let rest = rest.trim_start();
    match rest.split_once(char::is_whitespace) {
        Some((w, r)) => (w, r.trim_start()),
        None => (rest, ""),
    }
}

fn strip_comment(line: &str) -> &str {
    // '#' inside a quoted gloss is kept.
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn formula_list(text: &str, line: usize) -> Result<Vec<Formula>, ScenarioError> {
    let fs = text
        .split(',')
        .map(|part| {
            parse_formula(part.trim()).map_err(|e| ScenarioError::Parse {
                line,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(fs)
}

struct Draft {
    name: Option<String>,
    theory: Option<String>,
    atoms: Vec<(usize, AtomDecl)>,
    locations: Vec<(usize, LocationDecl)>,
    times: Vec<(usize, TimeLabel)>,
    bridges: Vec<(usize, Formula)>,
    events: Vec<Event>,
    tracked: Option<(usize, Atom)>,
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut d = Draft {
        name: None,
        theory: None,
        atoms: Vec::new(),
        locations: Vec::new(),
        times: Vec::new(),
        bridges: Vec::new(),
        events: Vec::new(),
        tracked: None,
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let perr = |message: &str| ScenarioError::Parse {
            line,
            message: message.to_string(),
        };
        let (keyword, rest) = word(content);
        match keyword {
            "scenario" | "theory" => {
                let (name, extra) = word(rest);
                if name.is_empty() || !extra.is_empty() {
                    return Err(perr(&format!("expected '{keyword} <name>'")));
                }
                let slot = if keyword == "scenario" {
                    &mut d.name
                } else {
                    &mut d.theory
                };
                if slot.replace(name.to_string()).is_some() {
                    return Err(perr(&format!("duplicate '{keyword}' line")));
                }
            }
            "atom" => {
                let (name, rest) = word(rest);
                let atom =
                    Atom::new(name).ok_or_else(|| perr(&format!("invalid atom name '{name}'")))?;
                let (gloss, extra) = quoted(rest).ok_or_else(|| perr("expected a quoted gloss"))?;
                if !extra.is_empty() {
                    return Err(perr("unexpected text after gloss"));
                }
                d.atoms.push((line, AtomDecl { atom, gloss }));
            }
            "location" => {
                let (label, rest) = word(rest);
                if label.is_empty() {
                    return Err(perr("expected 'location <label> \"<gloss>\"'"));
                }
                let (gloss, extra) = quoted(rest).ok_or_else(|| perr("expected a quoted gloss"))?;
                if !extra.is_empty() {
                    return Err(perr("unexpected text after gloss"));
                }
                d.locations.push((
                    line,
                    LocationDecl {
                        label: label.to_string(),
                        gloss,
                    },
                ));
            }
            "time" => {
                let (label, rest) = word(rest);
                let (value, rest) = word(rest);
                let (location, extra) = word(rest);
                if label.is_empty() || !extra.is_empty() {
                    return Err(perr("expected 'time <label> <real> [<location>]'"));
                }
                let value: f64 = value
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite())
                    .ok_or_else(|| perr(&format!("invalid time value '{value}'")))?;
                d.times.push((
                    line,
                    TimeLabel {
                        label: label.to_string(),
                        value,
                        location: (!location.is_empty()).then(|| location.to_string()),
                    },
                ));
            }
            "bridge" => {
                let f = formula_list(rest, line)?;
                if f.len() != 1 {
                    return Err(perr("one formula per bridge line"));
                }
                d.bridges
                    .push((line, f.into_iter().next().expect("one formula")));
            }
            "track" => {
                let (name, extra) = word(rest);
                let atom = Atom::new(name)
                    .filter(|_| extra.is_empty())
                    .ok_or_else(|| perr("expected 'track <atom>'"))?;
                if d.tracked.replace((line, atom)).is_some() {
                    return Err(perr("duplicate 'track' line"));
                }
            }
            "at" => {
                let (time, rest) = word(rest);
                let (verb, rest) = word(rest);
                let kind = match verb {
                    "declare" => EventKind::Declare(formula_list(rest, line)?),
                    "expect-reject" => {
                        let (verb2, rest) = word(rest);
                        if verb2 != "declare" {
                            return Err(perr("expected 'expect-reject declare <formulas>'"));
                        }
                        EventKind::ExpectReject(formula_list(rest, line)?)
                    }
                    "retro" => {
                        let inner = rest
                            .strip_prefix('[')
                            .and_then(|r| r.split_once(')'))
                            .ok_or_else(|| perr("expected 'retro [<start>,<end>) <formula>'"))?;
                        let (bounds, formula) = inner;
                        let (start, end) = bounds
                            .split_once(',')
                            .ok_or_else(|| perr("expected '[<start>,<end>)'"))?;
                        let mut f = formula_list(formula, line)?;
                        if f.len() != 1 {
                            return Err(perr("one formula per retro line"));
                        }
                        EventKind::Retro {
                            start: start.trim().to_string(),
                            end: end.trim().to_string(),
                            formula: f.remove(0),
                        }
                    }
                    "audit" if rest.is_empty() => EventKind::Audit,
                    other => return Err(perr(&format!("unknown event '{other}'"))),
                };
                d.events.push(Event {
                    line,
                    time: time.to_string(),
                    kind,
                });
            }
            other => return Err(perr(&format!("unknown directive '{other}'"))),
        }
    }
    validate(d)
}

fn validate(d: Draft) -> Result<Scenario, ScenarioError> {
    let verr = |line: usize, message: String| ScenarioError::Validation { line, message };
    let name = d
        .name
        .ok_or_else(|| verr(0, "missing 'scenario <name>' line".into()))?;

    let mut seen = BTreeSet::new();
    for (line, a) in &d.atoms {
        if !seen.insert(a.atom.clone()) {
            return Err(verr(*line, format!("atom '{}' declared twice", a.atom)));
        }
    }
    let location_labels: BTreeSet<&str> =
        d.locations.iter().map(|(_, l)| l.label.as_str()).collect();

    if d.times.is_empty() {
        return Err(verr(0, "at least one 'time' line is required".into()));
    }
    for pair in d.times.windows(2) {
        let ((_, a), (line, b)) = (&pair[0], &pair[1]);
        if b.value <= a.value {
            return Err(verr(
                *line,
                format!(
                    "time {}={} is not after {}={}",
                    b.label, b.value, a.label, a.value
                ),
            ));
        }
    }
    let mut labels = BTreeSet::new();
    for (line, t) in &d.times {
        if !labels.insert(t.label.as_str()) {
            return Err(verr(
                *line,
                format!("time label '{}' declared twice", t.label),
            ));
        }
        if let Some(loc) = &t.location {
            if !location_labels.contains(loc.as_str()) {
                return Err(verr(*line, format!("unknown location '{loc}'")));
            }
        }
    }

    let check_atoms =
        |line: usize, f: &Formula| match f.atoms().into_iter().find(|a| !seen.contains(a)) {
            Some(a) => Err(verr(line, format!("unknown atom '{a}' in '{f}'"))),
            None => Ok(()),
        };

    let (track_line, tracked) = d
        .tracked
        .ok_or_else(|| verr(0, "missing 'track <atom>' line".into()))?;
    if !seen.contains(&tracked) {
        return Err(verr(track_line, format!("unknown atom '{tracked}'")));
    }

    // Bridges are added one at a time so a failure names its line.
    let theory_name = d.theory.unwrap_or_else(|| "QM".to_string());
    let mut base =
        Theory::empty(&theory_name, seen.iter().cloned()).map_err(|e| verr(0, e.to_string()))?;
    for (line, b) in &d.bridges {
        check_atoms(*line, b)?;
        base = base.extend(std::slice::from_ref(b)).map_err(|e| match e {
            KernelError::IllegalAxiom { .. } => verr(
                *line,
                format!("bridge '{b}' is not in the theory syntax: {e}"),
            ),
            other => verr(*line, other.to_string()),
        })?;
    }
    let base = base.renamed(&theory_name);

    for ev in &d.events {
        let time_ok = |label: &str| {
            if labels.contains(label) {
                Ok(())
            } else {
                Err(verr(ev.line, format!("unknown time '{label}'")))
            }
        };
        time_ok(&ev.time)?;
        match &ev.kind {
            EventKind::Declare(fs) | EventKind::ExpectReject(fs) => {
                for f in fs {
                    check_atoms(ev.line, f)?;
                }
            }
            EventKind::Retro {
                start,
                end,
                formula,
            } => {
                time_ok(start)?;
                time_ok(end)?;
                check_atoms(ev.line, formula)?;
            }
            EventKind::Audit => {}
        }
    }

    let times: Vec<TimeLabel> = d.times.into_iter().map(|(_, t)| t).collect();
    Ok(Scenario {
        name,
        atoms: d.atoms.into_iter().map(|(_, a)| a).collect(),
        locations: d.locations.into_iter().map(|(_, l)| l).collect(),
        times,
        bridges: d.bridges.into_iter().map(|(_, b)| b).collect(),
        events: d.events,
        tracked,
        base,
    })
}
