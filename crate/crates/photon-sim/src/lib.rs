//! Monte Carlo single-photon two-slit simulator.
//!
//! Arrivals are drawn from an idealized fringe pattern `cos^2(pi x / period)`
//! (optionally under a Gaussian envelope) or from the fringe-free envelope,
//! with thin wires placed at the fringe minima. Every run is reproducible from
//! its seed regardless of how many chunks it is split into.

mod analysis;
mod config;
mod output;
mod pattern;
pub mod quadrature;
mod sampler;
mod sim;

use thiserror::Error;

pub use analysis::{
    analytic_blocked_fraction, reconstruct, slit_independence, ChiSquare, Histogram,
    Reconstruction, MIN_EXPECTED,
};
pub use config::{Envelope, Mode, SimConfig};
pub use output::Summary;
pub use pattern::{classical_pdf, make_grid, quantum_pdf, Pattern, Wire};
pub use sampler::{CdfTable, TABLE_KNOTS};
pub use sim::{simulate, simulate_chunked, PhotonRecord, SimResult, Slit, BLOCK};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },
    #[error("too few samples: expected count {expected:.3} in cell {cell} is below 5")]
    TooFewSamples { cell: usize, expected: f64 },
}
