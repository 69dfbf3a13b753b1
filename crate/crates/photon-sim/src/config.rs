use std::fmt;
use std::str::FromStr;

use crate::SimError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    Flat,
    /// `exp(-x^2 / (2 sigma^2))`.
    Gaussian {
        sigma: f64,
    },
}

impl Envelope {
    pub fn at(self, x: f64) -> f64 {
        match self {
            Envelope::Flat => 1.0,
            Envelope::Gaussian { sigma } => (-(x * x) / (2.0 * sigma * sigma)).exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Both slits open, interference pattern.
    Quantum,
    /// Both slits open, incoherent sum: the fringe-averaged envelope.
    Classical,
    /// One slit closed; every photon goes through U.
    SingleSlit,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
            Mode::SingleSlit => "single-slit",
        })
    }
}

impl FromStr for Mode {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Mode, SimError> {
        match s {
            "quantum" => Ok(Mode::Quantum),
            "classical" => Ok(Mode::Classical),
            "single-slit" | "single_slit" => Ok(Mode::SingleSlit),
            other => Err(SimError::InvalidConfig(format!(
                "unknown mode '{other}' (expected quantum, classical or single-slit)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    /// Fringe period.
    pub period: f64,
    /// Pattern extent in periods on each side of the center.
    pub half_extent: u32,
    pub wire_width: f64,
    pub envelope: Envelope,
    pub photons: u64,
    pub seed: u64,
    pub mode: Mode,
    /// Whether the wire grid is in place.
    pub grid: bool,
    /// Histogram bins over the extent.
    pub bins: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            period: 1.0,
            half_extent: 10,
            wire_width: 0.05,
            envelope: Envelope::Flat,
            photons: 1_000_000,
            seed: 1,
            mode: Mode::Quantum,
            grid: true,
            bins: 100,
        }
    }
}

impl SimConfig {
    /// Wire width chosen so that a flat classical pattern loses 6.6% of its
    /// photons to the grid.
    pub const CALIBRATED_WIRE_RATIO: f64 = 0.066;

    pub fn calibrated() -> SimConfig {
        SimConfig {
            wire_width: Self::CALIBRATED_WIRE_RATIO,
            ..SimConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidConfig(m));
        if !(self.period.is_finite() && self.period > 0.0) {
            return bad(format!("period must be positive, got {}", self.period));
        }
        if self.half_extent < 1 {
            return bad("half_extent must be at least 1".into());
        }
        if !(self.wire_width.is_finite() && self.wire_width > 0.0) {
            return bad(format!(
                "wire_width must be positive, got {}",
                self.wire_width
            ));
        }
        if self.wire_width >= self.period / 2.0 {
            return bad(format!(
                "wire_width {} must be below half the period ({})",
                self.wire_width,
                self.period / 2.0
            ));
        }
        if let Envelope::Gaussian { sigma } = self.envelope {
            if !(sigma.is_finite() && sigma > 0.0) {
                return bad(format!("envelope width must be positive, got {sigma}"));
            }
        }
        if self.photons < 1 {
            return bad("photons must be at least 1".into());
        }
        if self.bins < 1 {
            return bad("bins must be at least 1".into());
        }
        Ok(())
    }

    /// `[-half_extent * period, half_extent * period]`.
    pub fn extent(&self) -> (f64, f64) {
        let h = self.half_extent as f64 * self.period;
        (-h, h)
    }

    /// Reads `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<SimConfig, SimError> {
        let mut cfg = SimConfig::default();
        let mut envelope_kind = "flat".to_string();
        let mut envelope_width = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| SimError::ConfigParse { line, message };
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected key = value, got '{content}'")))?;
            fn num<T: FromStr>(v: &str) -> Result<T, String> {
                v.parse().map_err(|_| format!("invalid number '{v}'"))
            }
            let result: Result<(), String> = (|| {
                match key {
                    "period" => cfg.period = num(value)?,
                    "half_extent" => cfg.half_extent = num(value)?,
                    "wire_width" => cfg.wire_width = num(value)?,
                    "photons" => cfg.photons = num(value)?,
                    "seed" => cfg.seed = num(value)?,
                    "bins" => cfg.bins = num(value)?,
                    "envelope" => envelope_kind = value.to_string(),
                    "envelope_width" => envelope_width = Some(num(value)?),
                    "mode" => cfg.mode = value.parse().map_err(|e: SimError| e.to_string())?,
                    "grid" => {
                        cfg.grid = value
                            .parse()
                            .map_err(|_| format!("grid must be true or false, got '{value}'"))?
                    }
                    other => return Err(format!("unknown key '{other}'")),
                }
                Ok(())
            })();
            result.map_err(err)?;
        }
        cfg.envelope = match (envelope_kind.as_str(), envelope_width) {
            ("flat", None) => Envelope::Flat,
            ("gaussian", Some(sigma)) => Envelope::Gaussian { sigma },
            ("gaussian", None) => {
                return Err(SimError::InvalidConfig(
                    "gaussian envelope needs envelope_width".into(),
                ))
            }
            ("flat", Some(_)) => {
                return Err(SimError::InvalidConfig(
                    "envelope_width only applies to the gaussian envelope".into(),
                ))
            }
            (other, _) => {
                return Err(SimError::InvalidConfig(format!(
                    "unknown envelope '{other}' (expected flat or gaussian)"
                )))
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
