//! The observer's interpretation as a function of time.
//!
//! A [`Timeline`] starts with the base theory in force and accumulates
//! declarations: each epoch `[start, next start)` has its own interpretation,
//! the base theory plus every declaration so far. Truth at a time is
//! provability in the interpretation then in force.

use std::fmt;

use thiserror::Error;

use crate::kernel::{KernelError, PropStatus, Theory};
use crate::logic::{Atom, Formula, TruthValue};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TimelineError {
    #[error("declaration at t={at} is not after the last epoch start t={last}")]
    OutOfOrder { at: f64, last: f64 },
    #[error("time {0} is not a finite number")]
    InvalidTime(f64),
    #[error("query time t={at} precedes the start of the experiment at t={start}")]
    BeforeExperiment { at: f64, start: f64 },
    #[error("'{formula}' is not in the theory syntax of {theory} at t={at}")]
    IllegalProposition {
        formula: Formula,
        theory: String,
        at: f64,
    },
    #[error("{theory} does not prove '{formula}' at t={at}")]
    UnprovableRetro {
        formula: Formula,
        theory: String,
        at: f64,
    },
    #[error("retro interval [{start}, {end}) must be non-empty and end no later than t={at}")]
    BadInterval { start: f64, end: f64, at: f64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// One interval of constant interpretation.
#[derive(Clone, Debug, PartialEq)]
pub struct Epoch {
    pub start: f64,
    /// Axioms declared at `start`.
    pub delta: Vec<Formula>,
    /// Interpretation in force from `start`.
    pub theory: Theory,
}

/// A statement about a past interval, proved at `asserted_at` and only
/// visible from then on.
#[derive(Clone, Debug, PartialEq)]
pub struct RetroAssertion {
    pub asserted_at: f64,
    pub interval: (f64, f64),
    pub formula: Formula,
    /// A minimal subset of the interpretation's axioms that proves `formula`.
    pub support: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Timeline {
    base: Theory,
    epochs: Vec<Epoch>,
    retro: Vec<RetroAssertion>,
}

fn finite(t: f64) -> Result<f64, TimelineError> {
    if t.is_finite() {
        Ok(t)
    } else {
        Err(TimelineError::InvalidTime(t))
    }
}

impl Timeline {
    /// A timeline whose first epoch, starting at `start`, interprets the base
    /// theory as itself.
    pub fn new(base: Theory, start: f64) -> Result<Timeline, TimelineError> {
        let start = finite(start)?;
        let theory = base.renamed(&star_name(&base, &[]));
        Ok(Timeline {
            epochs: vec![Epoch {
                start,
                delta: Vec::new(),
                theory,
            }],
            base,
            retro: Vec::new(),
        })
    }

    pub fn base(&self) -> &Theory {
        &self.base
    }

    pub fn epochs(&self) -> &[Epoch] {
        &self.epochs
    }

    pub fn retro_assertions(&self) -> &[RetroAssertion] {
        &self.retro
    }

    pub fn start(&self) -> f64 {
        self.epochs[0].start
    }

    /// End of epoch `i`, `None` for the last (open-ended) one.
    pub fn epoch_end(&self, i: usize) -> Option<f64> {
        self.epochs.get(i + 1).map(|e| e.start)
    }

    fn epoch_index_at(&self, t: f64) -> Result<usize, TimelineError> {
        let t = finite(t)?;
        if t < self.start() {
            return Err(TimelineError::BeforeExperiment {
                at: t,
                start: self.start(),
            });
        }
        Ok(self.epochs.partition_point(|e| e.start <= t) - 1)
    }

    /// The interpretation in force at `t`.
    pub fn interpretation_at(&self, t: f64) -> Result<&Theory, TimelineError> {
        Ok(&self.epochs[self.epoch_index_at(t)?].theory)
    }

    /// Appends an epoch at `at` with the interpretation extended by `delta`.
    pub fn declare(&self, at: f64, delta: &[Formula]) -> Result<Timeline, TimelineError> {
        let at = finite(at)?;
        let last = self.epochs.last().expect("timeline has an epoch");
        if at <= last.start {
            return Err(TimelineError::OutOfOrder {
                at,
                last: last.start,
            });
        }
        let extended = last.theory.extend(delta)?;
        let mut next = self.clone();
        next.epochs.push(Epoch {
            start: at,
            delta: delta.to_vec(),
            theory: extended.renamed(&star_name(&self.base, &next.all_declared(delta))),
        });
        Ok(next)
    }

    fn all_declared(&self, extra: &[Formula]) -> Vec<Formula> {
        self.epochs
            .iter()
            .flat_map(|e| e.delta.iter().cloned())
            .chain(extra.iter().cloned())
            .collect()
    }

    /// Checks whether `delta` could be declared at `at` against the
    /// interpretation in force then, without recording anything.
    pub fn check_declaration(&self, at: f64, delta: &[Formula]) -> Result<Theory, TimelineError> {
        Ok(self.interpretation_at(at)?.extend(delta)?)
    }

    /// Truth of `phi` at `t`: provable, refutable, or neither in the
    /// interpretation in force. A tracked retro formula stays `Neither`
    /// before its assertion time.
    pub fn truth_at(&self, t: f64, phi: &Formula) -> Result<TruthValue, TimelineError> {
        let theory = self.interpretation_at(t)?;
        let tracked: Vec<&RetroAssertion> =
            self.retro.iter().filter(|r| &r.formula == phi).collect();
        if !tracked.is_empty() {
            if tracked.iter().all(|r| t < r.asserted_at) {
                return Ok(TruthValue::Neither);
            }
        } else if !theory.is_legal(phi)? {
            return Err(TimelineError::IllegalProposition {
                formula: phi.clone(),
                theory: theory.name().to_string(),
                at: t,
            });
        }
        Ok(match theory.classify(phi)? {
            PropStatus::Provable => TruthValue::True,
            PropStatus::Refutable => TruthValue::False,
            PropStatus::Undecidable => TruthValue::Neither,
        })
    }

    /// Records that `phi`, about `[interval.0, interval.1)`, is proved at `at`.
    pub fn retro_assert(
        &self,
        at: f64,
        interval: (f64, f64),
        phi: &Formula,
    ) -> Result<Timeline, TimelineError> {
        let at = finite(at)?;
        let (start, end) = (finite(interval.0)?, finite(interval.1)?);
        if !(start < end && end <= at) {
            return Err(TimelineError::BadInterval { start, end, at });
        }
        let theory = self.interpretation_at(at)?;
        if !theory.proves(phi)? {
            return Err(TimelineError::UnprovableRetro {
                formula: phi.clone(),
                theory: theory.name().to_string(),
                at,
            });
        }
        let support = minimal_support(theory, phi)?;
        let mut next = self.clone();
        next.retro.push(RetroAssertion {
            asserted_at: at,
            interval: (start, end),
            formula: phi.clone(),
            support,
        });
        Ok(next)
    }

    /// Model kind per epoch with respect to `tracked`.
    pub fn model_kinds(&self, tracked: &Atom) -> Result<Vec<KindSegment>, TimelineError> {
        let phi = Formula::Atom(tracked.clone());
        self.epochs
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let kind = if e.theory.classify(&phi)?.is_decided() {
                    ModelKind::Classical
                } else {
                    ModelKind::Nonclassical
                };
                Ok(KindSegment {
                    start: e.start,
                    end: self.epoch_end(i),
                    kind,
                })
            })
            .collect()
    }

    /// Complementarity check: at every instant the observer's interpretation
    /// yields exactly one kind of model for `tracked`.
    pub fn bcp_check(&self, tracked: &Atom) -> BcpReport {
        match self.model_kinds(tracked) {
            Ok(segments) => verify_segments(tracked, segments),
            Err(e) => BcpReport {
                tracked: tracked.clone(),
                segments: Vec::new(),
                violations: vec![e.to_string()],
            },
        }
    }
}

fn star_name(base: &Theory, declared: &[Formula]) -> String {
    let mut name = format!("{}*={}", base.name(), base.name());
    for f in declared {
        match f {
            Formula::Atom(_) | Formula::Not(_) => name.push_str(&format!("+{f}")),
            _ => name.push_str(&format!("+({f})")),
        }
    }
    name
}

/// Drops axioms one at a time while the rest still prove `phi`.
fn minimal_support(theory: &Theory, phi: &Formula) -> Result<Vec<Formula>, TimelineError> {
    let mut support = theory.axioms().to_vec();
    let mut i = 0;
    while i < support.len() {
        let mut without = support.clone();
        without.remove(i);
        if crate::logic::entails(&without, phi).map_err(KernelError::from)? {
            support = without;
        } else {
            i += 1;
        }
    }
    Ok(support)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// The tracked atom is decided: `P | ~P` and one of `P`, `~P` hold.
    Classical,
    /// The tracked atom is open: `P & ~P` holds nonclassically.
    Nonclassical,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Classical => "classical",
            ModelKind::Nonclassical => "nonclassical",
        })
    }
}

/// `[start, end)` with a single model kind; `end = None` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KindSegment {
    pub start: f64,
    pub end: Option<f64>,
    pub kind: ModelKind,
}

impl KindSegment {
    fn overlaps(&self, other: &KindSegment) -> bool {
        let before = |a: &KindSegment, b: &KindSegment| a.end.is_some_and(|e| e <= b.start);
        !before(self, other) && !before(other, self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BcpReport {
    pub tracked: Atom,
    pub segments: Vec<KindSegment>,
    pub violations: Vec<String>,
}

impl BcpReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One-line verdict phrased in terms of which model the observer can
    /// generate at a time.
    pub fn verdict(&self) -> String {
        if self.passed() {
            format!(
                "PASS: at every time the interpretation generates either a classical or a \
                 nonclassical model for {} (never both)",
                self.tracked
            )
        } else {
            format!(
                "FAIL: classical and nonclassical models for {} coexist or are missing at some time",
                self.tracked
            )
        }
    }
}

/// Checks that `segments` assign exactly one model kind to every instant
/// from the earliest start onward. Works on any segment list, including
/// ones not produced by a [`Timeline`].
pub fn verify_segments(tracked: &Atom, mut segments: Vec<KindSegment>) -> BcpReport {
    segments.sort_by(|a, b| a.start.total_cmp(&b.start));
    let mut violations = Vec::new();
    if segments.is_empty() {
        violations.push("no model kind assigned at any time".to_string());
    }
    for (i, a) in segments.iter().enumerate() {
        if a.end.is_some_and(|e| e <= a.start) {
            violations.push(format!("empty segment starting at t={}", a.start));
        }
        for b in &segments[i + 1..] {
            if a.overlaps(b) && a.kind != b.kind {
                let from = b.start.max(a.start);
                violations.push(format!("both {} and {} models at t={from}", a.kind, b.kind));
            }
        }
    }
    // Every instant from the first start onward needs a kind.
    // `reach`: None before the first segment, Some(None) once unbounded.
    let mut reach: Option<Option<f64>> = None;
    for s in &segments {
        if let Some(Some(c)) = reach {
            if s.start > c {
                violations.push(format!("no model kind on [{c}, {})", s.start));
            }
        }
        reach = Some(match (reach, s.end) {
            (Some(None), _) | (_, None) => None,
            (Some(Some(c)), Some(e)) => Some(c.max(e)),
            (None, Some(e)) => Some(e),
        });
    }
    if let Some(Some(c)) = reach {
        violations.push(format!("no model kind from t={c} onward"));
    }
    BcpReport {
        tracked: tracked.clone(),
        segments,
        violations,
    }
}
