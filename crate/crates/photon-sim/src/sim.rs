use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::Histogram;
use crate::config::{Mode, SimConfig};
use crate::pattern::{wire_at, Pattern};
use crate::sampler::CdfTable;
use crate::SimError;

/// Photons per random stream. Stream `b` serves photons
/// `b * BLOCK .. (b + 1) * BLOCK`, so results do not depend on how blocks
/// are spread over workers.
pub const BLOCK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slit {
    U,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonRecord {
    pub slit: Slit,
    pub x: f64,
    pub blocked: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub mode: Mode,
    pub seed: u64,
    pub records: Vec<PhotonRecord>,
    pub blocked: u64,
    /// Detected (unblocked) arrivals.
    pub histogram: Histogram,
}

impl SimResult {
    pub fn photons(&self) -> u64 {
        self.records.len() as u64
    }

    pub fn blocked_fraction(&self) -> f64 {
        self.blocked as f64 / self.photons() as f64
    }

    pub fn detected(&self) -> impl Iterator<Item = &PhotonRecord> {
        self.records.iter().filter(|r| !r.blocked)
    }
}

/// Runs with one chunk per available worker thread.
pub fn simulate(cfg: &SimConfig) -> Result<SimResult, SimError> {
    simulate_chunked(cfg, rayon::current_num_threads())
}

/// Runs with the photon blocks split into `chunks` contiguous ranges. With
/// one chunk everything happens on the calling thread.
pub fn simulate_chunked(cfg: &SimConfig, chunks: usize) -> Result<SimResult, SimError> {
    cfg.validate()?;
    if chunks == 0 {
        return Err(SimError::InvalidConfig("chunks must be at least 1".into()));
    }
    let pattern = Pattern::new(cfg);
    let table = CdfTable::new(&pattern, cfg.mode);
    let blocks = cfg.photons.div_ceil(BLOCK);
    let per_chunk = blocks.div_ceil(chunks as u64).max(1);
    let ranges: Vec<(u64, u64)> = (0..chunks as u64)
        .map(|c| {
            (
                (c * per_chunk).min(blocks),
                ((c + 1) * per_chunk).min(blocks),
            )
        })
        .collect();
    let run = |&(b0, b1): &(u64, u64)| {
        let mut out = Vec::new();
        for b in b0..b1 {
            run_block(cfg, &table, b, &mut out);
        }
        out
    };
    let parts: Vec<Vec<PhotonRecord>> = if chunks == 1 {
        ranges.iter().map(run).collect()
    } else {
        ranges.par_iter().map(run).collect()
    };
    let records: Vec<PhotonRecord> = parts.into_iter().flatten().collect();
    let blocked = records.iter().filter(|r| r.blocked).count() as u64;
    let histogram = Histogram::of(
        cfg,
        cfg.bins,
        records.iter().filter(|r| !r.blocked).map(|r| r.x),
    );
    Ok(SimResult {
        mode: cfg.mode,
        seed: cfg.seed,
        records,
        blocked,
        histogram,
    })
}

fn run_block(cfg: &SimConfig, table: &CdfTable, block: u64, out: &mut Vec<PhotonRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(block);
    let first = block * BLOCK;
    let count = BLOCK.min(cfg.photons - first);
    for _ in 0..count {
        let slit = match cfg.mode {
            Mode::SingleSlit => Slit::U,
            Mode::Quantum | Mode::Classical => {
                if rng.random::<bool>() {
                    Slit::U
                } else {
                    Slit::L
                }
            }
        };
        let x = table.sample(rng.random::<f64>());
        out.push(PhotonRecord {
            slit,
            x,
            blocked: cfg.grid && wire_at(cfg, x),
        });
    }
}
