//! Inverse-transform sampling from a tabulated cumulative distribution.

use crate::config::Mode;
use crate::pattern::Pattern;

/// Knot count of the cumulative table.
pub const TABLE_KNOTS: usize = 1 << 16;

/// Piecewise-linear inverse of a cumulative distribution on `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct CdfTable {
    lo: f64,
    step: f64,
    /// `cdf[i]` at `lo + i * step`; starts at 0 and ends at 1.
    cdf: Vec<f64>,
}

impl CdfTable {
    pub fn new(pattern: &Pattern, mode: Mode) -> CdfTable {
        Self::with_knots(pattern, mode, TABLE_KNOTS)
    }

    pub fn with_knots(pattern: &Pattern, mode: Mode, knots: usize) -> CdfTable {
        assert!(knots >= 2);
        let (lo, hi) = pattern.config().extent();
        let cells = knots - 1;
        let step = (hi - lo) / cells as f64;
        let mut cdf = Vec::with_capacity(knots);
        cdf.push(0.0);
        let mut acc = 0.0;
        let mut left = pattern.pdf(mode, lo);
        for i in 0..cells {
            let a = lo + i as f64 * step;
            let b = if i + 1 == cells { hi } else { a + step };
            let right = pattern.pdf(mode, b);
            // Simpson on a cell this narrow is exact to rounding for these
            // smooth densities.
            acc += (b - a) / 6.0 * (left + 4.0 * pattern.pdf(mode, 0.5 * (a + b)) + right);
            cdf.push(acc);
            left = right;
        }
        for c in &mut cdf {
            *c /= acc;
        }
        *cdf.last_mut().expect("non-empty") = 1.0;
        CdfTable { lo, step, cdf }
    }

    pub fn knots(&self) -> usize {
        self.cdf.len()
    }

    /// Maps `u` in `[0, 1)` to a coordinate.
    pub fn sample(&self, u: f64) -> f64 {
        // First knot with cdf > u; the cell is the one ending there.
        let j = self
            .cdf
            .partition_point(|&c| c <= u)
            .clamp(1, self.cdf.len() - 1);
        let (c0, c1) = (self.cdf[j - 1], self.cdf[j]);
        let frac = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
        self.lo + ((j - 1) as f64 + frac) * self.step
    }
}
