//! Classical models of an interpretation and the superposed (nonclassical)
//! model built from them.
//!
//! In the superposed model a literal over an open atom is true exactly when
//! its complement is not provable, so `P`, `~P` and `P & ~P` all hold for an
//! undecided `P`. Evaluation of compound formulas goes through negation
//! normal form and combines literal values with ordinary `&` / `|`; no
//! explosion follows from the contradiction.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::kernel::{KernelError, PropStatus, Theory};
use crate::logic::{find_model, Atom, Formula, LogicError, Strategy, Vocabulary};

/// Largest vocabulary [`classical_models`] will enumerate.
pub const MAX_MODEL_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("every atom of {theory} is decided; its model is classical")]
    NoSuperposition { theory: String },
    #[error("{atom} is decided in {theory}; its model is classical for that atom")]
    AtomDecided { atom: Atom, theory: String },
}

impl From<LogicError> for ModelError {
    fn from(e: LogicError) -> Self {
        ModelError::Kernel(e.into())
    }
}

/// A total valuation satisfying every axiom of the generating theory.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassicalModel {
    pub valuation: BTreeMap<Atom, bool>,
}

impl ClassicalModel {
    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.valuation.get(atom).copied()
    }

    pub fn satisfies(&self, phi: &Formula) -> bool {
        phi.eval(&|a: &Atom| self.valuation[a])
    }
}

/// All models of `theory` over its declared vocabulary.
pub fn classical_models(theory: &Theory) -> Result<Vec<ClassicalModel>, ModelError> {
    let vocab =
        Vocabulary::with_limit(theory.vocabulary().atoms().iter().cloned(), MAX_MODEL_ATOMS)?;
    let axioms = theory.axioms();
    Ok((0..vocab.valuation_count())
        .map(|v| v as u32)
        .filter(|&bits| axioms.iter().all(|f| vocab.eval(f, bits)))
        .map(|bits| ClassicalModel {
            valuation: vocab
                .atoms()
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), bits >> i & 1 == 1))
                .collect(),
        })
        .collect())
}

/// Superposition of the classical models of an interpretation.
#[derive(Clone, Debug, PartialEq)]
pub struct NonclassicalModel {
    theory: String,
    components: Vec<ClassicalModel>,
    superposed: BTreeSet<Atom>,
    /// Classical value of each decided atom.
    decided: BTreeMap<Atom, bool>,
}

impl NonclassicalModel {
    /// Builds the superposed model of `theory`; fails when no atom is open.
    pub fn build(theory: &Theory) -> Result<NonclassicalModel, ModelError> {
        let model = Self::assemble(theory)?;
        if model.superposed.is_empty() {
            return Err(ModelError::NoSuperposition {
                theory: theory.name().to_string(),
            });
        }
        Ok(model)
    }

    /// As [`build`](Self::build), but requires `atom` itself to be open.
    pub fn build_for(theory: &Theory, atom: &Atom) -> Result<NonclassicalModel, ModelError> {
        let model = Self::assemble(theory)?;
        if !model.superposed.contains(atom) {
            if !theory.vocabulary().contains(atom) {
                return Err(KernelError::UnknownAtom(atom.clone()).into());
            }
            return Err(ModelError::AtomDecided {
                atom: atom.clone(),
                theory: theory.name().to_string(),
            });
        }
        Ok(model)
    }

    fn assemble(theory: &Theory) -> Result<NonclassicalModel, ModelError> {
        let components = classical_models(theory)?;
        let mut superposed = BTreeSet::new();
        let mut decided = BTreeMap::new();
        for (atom, status) in theory.atom_statuses()? {
            match status {
                PropStatus::Provable => {
                    decided.insert(atom, true);
                }
                PropStatus::Refutable => {
                    decided.insert(atom, false);
                }
                PropStatus::Undecidable => {
                    superposed.insert(atom);
                }
            }
        }
        Ok(NonclassicalModel {
            theory: theory.name().to_string(),
            components,
            superposed,
            decided,
        })
    }

    pub fn theory_name(&self) -> &str {
        &self.theory
    }

    pub fn components(&self) -> &[ClassicalModel] {
        &self.components
    }

    pub fn superposed(&self) -> &BTreeSet<Atom> {
        &self.superposed
    }

    pub fn decided(&self) -> &BTreeMap<Atom, bool> {
        &self.decided
    }

    /// Truth of the literal `atom` (or `~atom` when `positive` is false).
    ///
    /// For an open atom each literal is true because its complement is not
    /// provable. Decided atoms keep their classical value.
    pub fn literal(&self, atom: &Atom, positive: bool) -> bool {
        if self.superposed.contains(atom) {
            return true;
        }
        match self.decided.get(atom) {
            Some(&v) => v == positive,
            None => panic!("atom {atom} outside the model's vocabulary"),
        }
    }

    /// Paraconsistent evaluation of `phi`.
    pub fn nc_eval(&self, phi: &Formula) -> bool {
        phi.nnf().eval(&|a: &Atom, pos: bool| self.literal(a, pos))
    }

    /// Checks that every open atom is true in some component and false in
    /// another.
    pub fn witnesses_superposition(&self) -> bool {
        self.superposed.iter().all(|a| {
            let values: BTreeSet<bool> =
                self.components.iter().filter_map(|m| m.value(a)).collect();
            values.len() == 2
        })
    }
}

/// Classical truth of `phi` in the unique model of a theory that decides every
/// atom, via the classical decision procedure rather than the literal map.
pub fn classical_value(theory: &Theory, phi: &Formula) -> Result<Option<bool>, ModelError> {
    let vocab = Vocabulary::new(theory.vocabulary().atoms().iter().cloned())?;
    let Some(bits) = find_model(&vocab, theory.axioms(), Strategy::Search) else {
        return Ok(None);
    };
    Ok(Some(vocab.eval(phi, bits)))
}
