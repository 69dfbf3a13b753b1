//! Oracles and goodness-of-fit checks for simulated runs.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config::{Mode, SimConfig};
use crate::pattern::{make_grid, Pattern, Wire};
use crate::sim::{SimResult, Slit};
use crate::SimError;

/// Smallest expected count per cell for a chi-square test.
pub const MIN_EXPECTED: f64 = 5.0;

/// Equal-width bins over the pattern extent.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn of<I: IntoIterator<Item = f64>>(cfg: &SimConfig, bins: usize, xs: I) -> Histogram {
        let (lo, hi) = cfg.extent();
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins)
            .map(|i| if i == bins { hi } else { lo + i as f64 * width })
            .collect();
        let mut counts = vec![0u64; bins];
        for x in xs {
            counts[bin_index(lo, width, bins, x)] += 1;
        }
        Histogram { edges, counts }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    pub fn width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    /// `bin_left,bin_right,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.edges[i], self.edges[i + 1], c));
        }
        out
    }
}

fn bin_index(lo: f64, width: f64, bins: usize, x: f64) -> usize {
    (((x - lo) / width).floor().max(0.0) as usize).min(bins - 1)
}

/// Probability that a photon of `mode` lands on a wire, by quadrature.
pub fn analytic_blocked_fraction(mode: Mode, cfg: &SimConfig) -> f64 {
    let p = Pattern::new(cfg);
    make_grid(cfg)
        .iter()
        .map(|w| p.mass(mode, w.left(), w.right()))
        .sum()
}

/// Mass of `[a, b]` outside every wire.
fn unblocked_mass(p: &Pattern, mode: Mode, grid: &[Wire], a: f64, b: f64) -> f64 {
    let mut mass = p.mass(mode, a, b);
    for w in grid {
        let (l, r) = (w.left().max(a), w.right().min(b));
        if l < r {
            mass -= p.mass(mode, l, r);
        }
    }
    mass.max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn chi_square(observed: &[u64], expected: &[f64], dof: usize) -> Result<ChiSquare, SimError> {
    if let Some((cell, &e)) = expected.iter().enumerate().find(|(_, &e)| e < MIN_EXPECTED) {
        return Err(SimError::TooFewSamples { cell, expected: e });
    }
    let statistic = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let dist = ChiSquared::new(dof.max(1) as f64).expect("positive degrees of freedom");
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}

/// Reconstructed pattern from detected arrivals.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub histogram: Histogram,
    pub expected: Vec<f64>,
    pub fit: ChiSquare,
    /// For each wire center, the histogram minimum found within its period.
    pub minima: Vec<(f64, f64)>,
    pub minima_aligned: bool,
}

impl Reconstruction {
    /// The pattern is recovered when the fit is not rejected at `alpha` and
    /// every fringe minimum sits on a wire center.
    pub fn passes(&self, alpha: f64) -> bool {
        self.fit.p_value > alpha && self.minima_aligned
    }
}

/// Histograms the detected arrivals of `res` and tests them against the
/// interference density. When `cfg.grid` is set the expected masses exclude
/// the wires.
pub fn reconstruct(
    res: &SimResult,
    cfg: &SimConfig,
    bins: usize,
) -> Result<Reconstruction, SimError> {
    if bins < 2 {
        return Err(SimError::InvalidConfig(
            "reconstruction needs at least 2 bins".into(),
        ));
    }
    let histogram = Histogram::of(cfg, bins, res.detected().map(|r| r.x));
    let detected = histogram.total() as f64;
    let p = Pattern::new(cfg);
    let grid = if cfg.grid { make_grid(cfg) } else { Vec::new() };
    let masses: Vec<f64> = (0..bins)
        .map(|i| {
            unblocked_mass(
                &p,
                Mode::Quantum,
                &grid,
                histogram.edges[i],
                histogram.edges[i + 1],
            )
        })
        .collect();
    let total: f64 = masses.iter().sum();
    let expected: Vec<f64> = masses.iter().map(|m| detected * m / total).collect();
    let fit = chi_square(&histogram.counts, &expected, bins - 1)?;

    let half_bin = histogram.width() / 2.0;
    let minima: Vec<(f64, f64)> = make_grid(cfg)
        .iter()
        .filter_map(|w| {
            let (a, b) = (w.center - cfg.period / 2.0, w.center + cfg.period / 2.0);
            (0..bins)
                .filter(|&i| (a..b).contains(&histogram.center(i)))
                .min_by_key(|&i| histogram.counts[i])
                .map(|i| (w.center, histogram.center(i)))
        })
        .collect();
    let minima_aligned = !minima.is_empty()
        && minima
            .iter()
            .all(|(c, m)| (c - m).abs() <= half_bin + 1e-12);
    Ok(Reconstruction {
        histogram,
        expected,
        fit,
        minima,
        minima_aligned,
    })
}

/// Chi-square test of independence between slit label and arrival bin over
/// detected photons.
pub fn slit_independence(
    res: &SimResult,
    cfg: &SimConfig,
    bins: usize,
) -> Result<ChiSquare, SimError> {
    if bins < 2 {
        return Err(SimError::InvalidConfig(
            "independence test needs at least 2 bins".into(),
        ));
    }
    let split = |slit: Slit| {
        Histogram::of(
            cfg,
            bins,
            res.detected().filter(|r| r.slit == slit).map(|r| r.x),
        )
        .counts
    };
    let (u, l) = (split(Slit::U), split(Slit::L));
    let n = (u.iter().sum::<u64>() + l.iter().sum::<u64>()) as f64;
    let row = [u.iter().sum::<u64>() as f64, l.iter().sum::<u64>() as f64];
    let mut observed = Vec::with_capacity(2 * bins);
    let mut expected = Vec::with_capacity(2 * bins);
    for (r, counts) in [&u, &l].into_iter().enumerate() {
        for i in 0..bins {
            let col = (u[i] + l[i]) as f64;
            observed.push(counts[i]);
            expected.push(row[r] * col / n);
        }
    }
    chi_square(&observed, &expected, bins - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_flat_fraction_is_coverage() {
        let cfg = SimConfig::default();
        assert!((analytic_blocked_fraction(Mode::Classical, &cfg) - 0.05).abs() < 1e-12);
        assert!((analytic_blocked_fraction(Mode::SingleSlit, &cfg) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn thin_wires_block_nothing() {
        let cfg = SimConfig {
            wire_width: 1e-9,
            ..SimConfig::default()
        };
        assert!(analytic_blocked_fraction(Mode::Quantum, &cfg) < 1e-20);
        assert!(analytic_blocked_fraction(Mode::Classical, &cfg) < 1e-8);
    }

    #[test]
    fn histogram_edges_and_csv() {
        let cfg = SimConfig {
            half_extent: 1,
            ..SimConfig::default()
        };
        let h = Histogram::of(&cfg, 4, [-1.0, -0.2, 0.0, 0.99, 1.0]);
        assert_eq!(h.edges, [-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(h.counts, [1, 1, 1, 2]);
        assert_eq!(h.to_csv().lines().next(), Some("bin_left,bin_right,count"));
        assert_eq!(h.to_csv().lines().count(), 5);
    }

    #[test]
    fn chi_square_thresholds() {
        assert!(matches!(
            chi_square(&[1, 2], &[4.9, 10.0], 1),
            Err(SimError::TooFewSamples { cell: 0, .. })
        ));
        let perfect = chi_square(&[10, 10], &[10.0, 10.0], 1).unwrap();
        assert_eq!(perfect.statistic, 0.0);
        assert!((perfect.p_value - 1.0).abs() < 1e-12);
        // 8 at one degree of freedom: p = erfc(2).
        let c = chi_square(&[120, 80], &[100.0, 100.0], 1).unwrap();
        assert_eq!(c.statistic, 8.0);
        assert!((c.p_value - 0.004_677_734_981_047_266).abs() < 1e-12);
    }
}
