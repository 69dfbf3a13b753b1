use std::fmt::Write as _;

use nafl_core::kernel::KernelError;
use nafl_core::models::{classical_models, ModelError};
use nafl_core::scenarios::{duality_check, DualityRecord, Scenario};
use nafl_core::timeline::TimelineError;
use nafl_core::{parse_formula, Formula, NonclassicalModel, Timeline, TruthValue};

/// Answer to one REPL line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reply {
    pub text: String,
    pub quit: bool,
}

impl Reply {
    fn say(text: impl Into<String>) -> Reply {
        Reply {
            text: text.into(),
            quit: false,
        }
    }
}

const HELP: &str = "commands:
  advance <time>        move the clock to a time label or number
  declare <f>, <f> ...  add axioms to the interpretation at the current time
  truth <formula>       truth value at the current time
  model                 model generated by the current interpretation
  duality               D, V and D^2+V^2 at the current time
  help                  this text
  quit                  leave";

/// The observer's live timeline over a scenario's base theory.
pub struct Session {
    scenario: Scenario,
    timeline: Timeline,
    now: f64,
    /// Declarations grouped by time, replayed when a time gets a second
    /// declaration.
    groups: Vec<(f64, Vec<Formula>)>,
}

impl Session {
    pub fn new(scenario: Scenario) -> Session {
        let start = scenario.start();
        let timeline = Timeline::new(scenario.base().clone(), start)
            .expect("validated scenario times are finite");
        Session {
            scenario,
            timeline,
            now: start,
            groups: Vec::new(),
        }
    }

    pub fn now(&self) -> f64 {
        self.now
    }

    pub fn timeline(&self) -> &Timeline {
        &self.timeline
    }

    pub fn banner(&self) -> String {
        let labels: Vec<String> = self
            .scenario
            .times
            .iter()
            .map(|t| format!("{}={}", t.label, t.value))
            .collect();
        format!(
            "scenario {} over {} (times {}); clock at t={}. Type 'help' for commands.",
            self.scenario.name,
            self.scenario.base().name(),
            labels.join(" "),
            self.now
        )
    }

    /// Handles one input line. Errors are reported in the reply and leave the
    /// session unchanged.
    pub fn handle(&mut self, line: &str) -> Reply {
        let line = line.trim();
        let (cmd, rest) = line
            .split_once(char::is_whitespace)
            .map(|(c, r)| (c, r.trim()))
            .unwrap_or((line, ""));
        match cmd {
            "" => Reply::say(""),
            "quit" | "exit" => Reply {
                text: "bye".into(),
                quit: true,
            },
            "help" => Reply::say(HELP),
            "advance" => Reply::say(self.advance(rest)),
            "declare" => Reply::say(self.declare(rest)),
            "truth" => Reply::say(self.truth(rest)),
            "model" => Reply::say(self.model()),
            "duality" => Reply::say(self.duality()),
            other => Reply::say(format!("error: unknown command '{other}' (try 'help')")),
        }
    }

    fn advance(&mut self, arg: &str) -> String {
        let target = match self.scenario.time(arg) {
            Some(t) => t.value,
            None => match arg.parse::<f64>() {
                Ok(v) if v.is_finite() => v,
                _ => return format!("error: '{arg}' is neither a time label nor a number"),
            },
        };
        if target < self.now {
            return format!("error: cannot move back from t={} to t={target}", self.now);
        }
        self.now = target;
        let theory = self
            .timeline
            .interpretation_at(target)
            .map(|t| t.name().to_string())
            .unwrap_or_default();
        format!("t={target}; interpretation {theory}")
    }

    fn declare(&mut self, arg: &str) -> String {
        let delta = match arg
            .split(',')
            .map(|s| parse_formula(s.trim()))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(d) => d,
            Err(e) => return format!("error: {e}"),
        };
        let listed = delta
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        match self.timeline.check_declaration(self.now, &delta) {
            Ok(_) => {}
            Err(TimelineError::Kernel(KernelError::IllegalAxiom { formula, theory })) => {
                return format!("rejected: illegal in theory syntax ('{formula}' in {theory})")
            }
            Err(TimelineError::Kernel(KernelError::Inconsistent { theory, .. })) => {
                return format!("rejected: inconsistent with {theory}")
            }
            Err(e) => return format!("error: {e}"),
        }
        if self.now == self.timeline.start() {
            return format!(
                "error: t={} is the start of the experiment; advance before declaring",
                self.now
            );
        }
        let mut groups = self.groups.clone();
        match groups.last_mut() {
            Some((t, fs)) if *t == self.now => fs.extend(delta),
            _ => groups.push((self.now, delta)),
        }
        let rebuilt = groups.iter().fold(
            Timeline::new(self.scenario.base().clone(), self.timeline.start()),
            |tl, (t, fs)| tl.and_then(|tl| tl.declare(*t, fs)),
        );
        match rebuilt {
            Ok(tl) => {
                self.timeline = tl;
                self.groups = groups;
                let name = self
                    .timeline
                    .interpretation_at(self.now)
                    .map(|t| t.name().to_string())
                    .unwrap_or_default();
                format!("declared {listed} at t={}; interpretation {name}", self.now)
            }
            Err(e) => format!("error: {e}"),
        }
    }

    fn truth(&self, arg: &str) -> String {
        let phi = match parse_formula(arg) {
            Ok(f) => f,
            Err(e) => return format!("error: {e}"),
        };
        let value = match self.timeline.truth_at(self.now, &phi) {
            Ok(v) => v,
            Err(TimelineError::IllegalProposition {
                formula, theory, ..
            }) => return format!("illegal in theory syntax ('{formula}' in {theory})"),
            Err(e) => return format!("error: {e}"),
        };
        let theory = self
            .timeline
            .interpretation_at(self.now)
            .expect("now is in range");
        let all_decided = phi.atoms().iter().all(|a| {
            theory
                .classify(&Formula::Atom(a.clone()))
                .is_ok_and(|s| s.is_decided())
        });
        match value {
            TruthValue::Neither => "neither (superposed)".into(),
            v if all_decided => format!("{v} (classical model)"),
            v => format!("{v} (decided by the axioms)"),
        }
    }

    fn model(&self) -> String {
        let theory = self
            .timeline
            .interpretation_at(self.now)
            .expect("now is in range");
        let mut out = format!("interpretation {}\n", theory.name());
        match NonclassicalModel::build(theory) {
            Ok(m) => {
                let _ = writeln!(
                    out,
                    "nonclassical model: superposition of {} classical models",
                    m.components().len()
                );
                for a in m.superposed() {
                    let _ = writeln!(out, "  {a}: superposed ({a}, ~{a} and {a} & ~{a} all hold)");
                }
                for (a, v) in m.decided() {
                    let _ = writeln!(out, "  {a}: {v}");
                }
            }
            Err(ModelError::NoSuperposition { .. }) => match classical_models(theory) {
                Ok(models) => {
                    let _ = writeln!(out, "classical model");
                    for (a, v) in &models[0].valuation {
                        let _ = writeln!(out, "  {a}: {v}");
                    }
                }
                Err(e) => return format!("error: {e}"),
            },
            Err(e) => return format!("error: {e}"),
        }
        let tracked = Formula::Atom(self.scenario.tracked.clone());
        let kind = if theory.classify(&tracked).is_ok_and(|s| s.is_decided()) {
            "classical"
        } else {
            "nonclassical"
        };
        let _ = write!(out, "tracked {}: {kind}", self.scenario.tracked);
        out
    }

    fn duality(&self) -> String {
        let theory = self
            .timeline
            .interpretation_at(self.now)
            .expect("now is in range");
        let path = Formula::Atom(self.scenario.tracked.clone());
        let decided = theory.classify(&path).is_ok_and(|s| s.is_decided());
        let (d, v) = if decided { (1.0, 0.0) } else { (0.0, 1.0) };
        let label = self.scenario.label_of(self.now).unwrap_or("now");
        let audit = duality_check(&[DualityRecord::new(label, self.now, d, v)]);
        let c = &audit.checks[0];
        format!(
            "t={}: D={d} V={v} D^2+V^2={} {}",
            self.now,
            c.value,
            if c.passed { "PASS" } else { "FAIL" }
        )
    }
}
