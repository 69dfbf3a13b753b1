//! Arrival densities on the screen and the wire grid.

use std::f64::consts::PI;

use crate::config::{Mode, SimConfig};
use crate::quadrature::integrate;

const QUAD_TOL: f64 = 1e-13;

/// A wire `[center - w/2, center + w/2]` at a fringe minimum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wire {
    pub center: f64,
    pub half_width: f64,
}

impl Wire {
    pub fn left(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn right(&self) -> f64 {
        self.center + self.half_width
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.center).abs() <= self.half_width
    }
}

/// One wire per minimum `(k + 1/2) * period` inside the extent.
pub fn make_grid(cfg: &SimConfig) -> Vec<Wire> {
    let h = cfg.half_extent as i64;
    (-h..h)
        .map(|k| Wire {
            center: (k as f64 + 0.5) * cfg.period,
            half_width: cfg.wire_width / 2.0,
        })
        .collect()
}

/// Whether `x` falls on a wire, without scanning the grid.
pub(crate) fn wire_at(cfg: &SimConfig, x: f64) -> bool {
    let k = (x / cfg.period).floor();
    let center = (k + 0.5) * cfg.period;
    let (lo, hi) = cfg.extent();
    center > lo && center < hi && (x - center).abs() <= cfg.wire_width / 2.0
}

/// Normalized densities for one configuration.
#[derive(Clone, Debug)]
pub struct Pattern {
    cfg: SimConfig,
    quantum_norm: f64,
    envelope_norm: f64,
}

impl Pattern {
    pub fn new(cfg: &SimConfig) -> Pattern {
        let (lo, hi) = cfg.extent();
        let periods = 2 * cfg.half_extent as usize;
        // One quadrature per period keeps each piece smooth and short.
        let per_period = |g: &dyn Fn(f64) -> f64| {
            (0..periods)
                .map(|i| {
                    let a = lo + i as f64 * cfg.period;
                    let b = if i + 1 == periods { hi } else { a + cfg.period };
                    integrate(g, a, b, QUAD_TOL)
                })
                .sum::<f64>()
        };
        let quantum_norm = per_period(&|x| quantum_raw(cfg, x));
        let envelope_norm = per_period(&|x| cfg.envelope.at(x));
        Pattern {
            cfg: cfg.clone(),
            quantum_norm,
            envelope_norm,
        }
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    fn inside(&self, x: f64) -> bool {
        let (lo, hi) = self.cfg.extent();
        (lo..=hi).contains(&x)
    }

    pub fn quantum_pdf(&self, x: f64) -> f64 {
        if self.inside(x) {
            quantum_raw(&self.cfg, x) / self.quantum_norm
        } else {
            0.0
        }
    }

    pub fn classical_pdf(&self, x: f64) -> f64 {
        if self.inside(x) {
            self.cfg.envelope.at(x) / self.envelope_norm
        } else {
            0.0
        }
    }

    /// Density of arrivals for `mode`. With one slit closed there are no
    /// fringes, so the single-slit density is the envelope.
    pub fn pdf(&self, mode: Mode, x: f64) -> f64 {
        match mode {
            Mode::Quantum => self.quantum_pdf(x),
            Mode::Classical | Mode::SingleSlit => self.classical_pdf(x),
        }
    }

    /// Probability mass of `mode` on `[a, b]` (clipped to the extent).
    pub fn mass(&self, mode: Mode, a: f64, b: f64) -> f64 {
        let (lo, hi) = self.cfg.extent();
        let (a, b) = (a.max(lo), b.min(hi));
        if a >= b {
            return 0.0;
        }
        integrate(|x| self.pdf(mode, x), a, b, QUAD_TOL)
    }
}

fn quantum_raw(cfg: &SimConfig, x: f64) -> f64 {
    cfg.envelope.at(x) * (PI * x / cfg.period).cos().powi(2)
}

/// Normalized interference density at `x`; zero outside the extent.
pub fn quantum_pdf(x: f64, cfg: &SimConfig) -> f64 {
    Pattern::new(cfg).quantum_pdf(x)
}

/// Normalized fringe-free density at `x`; zero outside the extent.
pub fn classical_pdf(x: f64, cfg: &SimConfig) -> f64 {
    Pattern::new(cfg).classical_pdf(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Envelope;

    #[test]
    fn grid_centers() {
        let cfg = SimConfig {
            half_extent: 2,
            ..SimConfig::default()
        };
        let centers: Vec<f64> = make_grid(&cfg).iter().map(|w| w.center).collect();
        assert_eq!(centers, [-1.5, -0.5, 0.5, 1.5]);
        for w in make_grid(&cfg).windows(2) {
            assert!(w[0].right() < w[1].left());
        }
    }

    #[test]
    fn wire_lookup_matches_grid() {
        let cfg = SimConfig::default();
        let grid = make_grid(&cfg);
        for i in 0..20_000 {
            let x = -10.0 + i as f64 * 0.001;
            assert_eq!(wire_at(&cfg, x), grid.iter().any(|w| w.contains(x)), "{x}");
        }
    }

    #[test]
    fn flat_densities() {
        let p = Pattern::new(&SimConfig::default());
        assert!(p.quantum_pdf(0.5).abs() < 1e-15);
        assert!((p.quantum_pdf(0.0) - 0.1).abs() < 1e-12);
        assert!((p.classical_pdf(3.3) - 0.05).abs() < 1e-12);
        assert_eq!(p.quantum_pdf(10.5), 0.0);
        assert_eq!(p.classical_pdf(-11.0), 0.0);
        assert!((p.mass(Mode::Quantum, -20.0, 20.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_normalizes() {
        let cfg = SimConfig {
            envelope: Envelope::Gaussian { sigma: 3.0 },
            ..SimConfig::default()
        };
        let p = Pattern::new(&cfg);
        assert!((p.mass(Mode::Quantum, -10.0, 10.0) - 1.0).abs() < 1e-10);
        assert!((p.mass(Mode::Classical, -10.0, 10.0) - 1.0).abs() < 1e-10);
        assert!(p.classical_pdf(0.0) > p.classical_pdf(5.0));
    }
}
