use std::fmt;

use crate::analysis::{analytic_blocked_fraction, reconstruct, Reconstruction};
use crate::config::{Mode, SimConfig};
use crate::sim::SimResult;
use crate::SimError;

/// The plain-text run summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub mode: Mode,
    pub photons: u64,
    pub seed: u64,
    pub grid: bool,
    pub blocked_fraction: f64,
    pub oracle_fraction: f64,
    /// `None` when the fit could not be computed (too few samples).
    pub fit: Option<(f64, f64)>,
    pub fit_error: Option<String>,
}

impl Summary {
    pub fn new(res: &SimResult, cfg: &SimConfig) -> Summary {
        let oracle_fraction = if cfg.grid {
            analytic_blocked_fraction(cfg.mode, cfg)
        } else {
            0.0
        };
        let fit: Result<Reconstruction, SimError> = reconstruct(res, cfg, cfg.bins);
        let (fit, fit_error) = match fit {
            Ok(r) => (Some((r.fit.statistic, r.fit.p_value)), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Summary {
            mode: res.mode,
            photons: res.photons(),
            seed: res.seed,
            grid: cfg.grid,
            blocked_fraction: res.blocked_fraction(),
            oracle_fraction,
            fit,
            fit_error,
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {}", self.mode)?;
        writeln!(f, "N {}", self.photons)?;
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "grid {}", self.grid)?;
        writeln!(f, "blocked_fraction {:.6e}", self.blocked_fraction)?;
        writeln!(f, "oracle_fraction {:.6e}", self.oracle_fraction)?;
        match (self.fit, &self.fit_error) {
            (Some((chi2, p)), _) => {
                writeln!(f, "chi2 {chi2:.4}")?;
                write!(f, "p_value {p:.6}")
            }
            (None, err) => {
                writeln!(f, "chi2 n/a")?;
                write!(
                    f,
                    "p_value n/a ({})",
                    err.as_deref().unwrap_or("not computed")
                )
            }
        }
    }
}
