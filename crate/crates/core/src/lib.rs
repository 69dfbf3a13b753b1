//! Propositional fragment of a finitary, time-indexed logic.
//!
//! - [`logic`]: formulas, parser, classical decision procedures.
//! - [`kernel`]: theories with a restricted theory syntax.
//! - [`timeline`]: the observer's interpretation over time.
//! - [`models`]: classical and superposed models.
//! - [`scenarios`]: the scenario language and built-in experiment replays.

pub mod kernel;
pub mod logic;
pub mod models;
pub mod scenarios;
pub mod timeline;

pub use kernel::{KernelError, PropStatus, Theory};
pub use logic::{parse_formula, Atom, Formula, LogicError, TruthValue};
pub use models::{ClassicalModel, NonclassicalModel};
pub use timeline::Timeline;
