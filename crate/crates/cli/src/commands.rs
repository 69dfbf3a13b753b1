use std::fmt::Write as _;

use nafl_core::kernel::{parse_theory_file, KernelError, TheoryFileError};
use nafl_core::scenarios::{resolve, run_scenario, ScenarioError};
use photon_sim::{analytic_blocked_fraction, simulate_chunked, Mode, SimConfig, Summary};

use crate::{EXIT_AUDIT, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};

/// What a command printed and the process exit code it maps to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn fail(stderr: String, code: i32) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Consistency, atom statuses and query legality for a theory file.
pub fn check(text: &str) -> Outcome {
    let file = match parse_theory_file(text) {
        Ok(f) => f,
        Err(TheoryFileError::Theory(e @ KernelError::Inconsistent { .. })) => {
            return Outcome::ok(format!("inconsistent: {e}\n"), EXIT_INCONSISTENT)
        }
        Err(e) => return Outcome::fail(format!("error: {e}\n"), EXIT_INPUT),
    };
    let t = &file.theory;
    let mut out = String::new();
    let _ = writeln!(out, "theory {}", t.name());
    let _ = writeln!(out, "consistent");
    let statuses = match t.atom_statuses() {
        Ok(s) => s,
        Err(e) => return Outcome::fail(format!("error: {e}\n"), EXIT_INPUT),
    };
    let _ = writeln!(out, "atoms");
    for (a, s) in statuses {
        let _ = writeln!(out, "  {a}  {s}");
    }
    if !file.queries.is_empty() {
        let _ = writeln!(out, "queries");
    }
    for q in &file.queries {
        let verdict = match (t.is_legal(q), t.classify(q)) {
            (Ok(false), _) => "illegal".to_string(),
            (Ok(true), Ok(s)) => format!("legal, {s}"),
            (Err(e), _) | (_, Err(e)) => {
                return Outcome::fail(format!("error: query '{q}': {e}\n"), EXIT_INPUT)
            }
        };
        let _ = writeln!(out, "  {q}  {verdict}");
    }
    Outcome::ok(out, EXIT_OK)
}

fn scenario_error(e: ScenarioError) -> Outcome {
    let code = match e {
        ScenarioError::Event { .. } => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    };
    Outcome::fail(format!("error: {e}\n"), code)
}

/// Replays a scenario and prints the full report.
pub fn run(scenario: &str) -> Outcome {
    let report = match resolve(scenario).and_then(|s| run_scenario(&s)) {
        Ok(r) => r,
        Err(e) => return scenario_error(e),
    };
    let code = if !report.bcp.passed() || !report.duality.passed() {
        EXIT_AUDIT
    } else if !report.expectations_met() {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Outcome::ok(report.to_string(), code)
}

/// Prints only the duality audit of a scenario.
pub fn duality(scenario: &str) -> Outcome {
    let report = match resolve(scenario).and_then(|s| run_scenario(&s)) {
        Ok(r) => r,
        Err(e) => return scenario_error(e),
    };
    let mut out = format!(
        "scenario {}\nduality (tracking {})\n",
        report.scenario, report.bcp.tracked
    );
    let _ = writeln!(out, "{}", report.duality);
    let code = if report.duality.passed() {
        EXIT_OK
    } else {
        EXIT_AUDIT
    };
    Outcome::ok(out, code)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimOptions {
    pub config: SimConfig,
    pub chunks: usize,
    /// Also report the flat-envelope calibration figures.
    pub calibrated: bool,
}

/// Runs the simulator; returns the summary and the histogram CSV.
pub fn sim(opts: &SimOptions) -> (Outcome, Option<String>) {
    let cfg = &opts.config;
    let res = match simulate_chunked(cfg, opts.chunks) {
        Ok(r) => r,
        Err(e) => return (Outcome::fail(format!("error: {e}\n"), EXIT_INPUT), None),
    };
    let mut out = Summary::new(&res, cfg).to_string();
    out.push('\n');
    if opts.calibrated {
        let classical = analytic_blocked_fraction(Mode::Classical, cfg);
        let quantum = analytic_blocked_fraction(Mode::Quantum, cfg);
        let _ = writeln!(
            out,
            "calibration wire_width/period {:.4}: classical oracle {:.4e}, quantum oracle {:.4e} ({} 1e-3)",
            cfg.wire_width / cfg.period,
            classical,
            quantum,
            if quantum < 1e-3 { "below" } else { "not below" }
        );
    }
    (Outcome::ok(out, EXIT_OK), Some(res.histogram.to_csv()))
}
