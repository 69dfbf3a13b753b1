//! Propositional language: formulas, the ASCII parser, and the classical
//! decision procedures used as proof syntax.

mod enumerate;
mod formula;
mod parser;
mod semantics;

use thiserror::Error;

pub use enumerate::{formula_count, formulas_up_to_depth};
pub use formula::{Atom, Connective, Formula, Nnf};
pub use parser::parse_formula;
pub use semantics::{
    entails, entails_with, find_model, is_satisfiable, is_satisfiable_with, Strategy, Vocabulary,
    MAX_ATOMS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown token '{found}' at {line}:{column}")]
    UnknownToken {
        line: usize,
        column: usize,
        found: String,
    },
    #[error("vocabulary of {atoms} atoms exceeds the supported bound of {limit}")]
    VocabularyOverflow { atoms: usize, limit: usize },
}

/// The three truth values a formula can take relative to an interpretation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    True,
    False,
    Neither,
}

impl std::fmt::Display for TruthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Neither => "neither",
        })
    }
}
