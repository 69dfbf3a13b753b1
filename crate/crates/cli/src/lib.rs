//! Commands behind the `nafl` binary, kept in a library so they can be
//! driven from tests without spawning processes.

mod commands;
mod repl;

pub use commands::{check, duality, run, sim, Outcome, SimOptions};
pub use repl::{Reply, Session};

pub const EXIT_OK: i32 = 0;
/// Unreadable or malformed input.
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
/// Complementarity or duality audit failed.
pub const EXIT_AUDIT: i32 = 3;
/// An event was rejected unexpectedly, or an expected rejection did not happen.
pub const EXIT_MISMATCH: i32 = 4;
