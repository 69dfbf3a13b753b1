use std::collections::BTreeSet;

use super::formula::{Atom, Formula};
use super::LogicError;

/// Largest vocabulary the decision procedures accept.
pub const MAX_ATOMS: usize = 24;

/// How satisfiability is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Enumerate all 2^n total valuations.
    Exhaustive,
    /// Backtracking over partial valuations with three-valued pruning.
    #[default]
    Search,
}

/// A finite, ordered set of atoms. Valuations over it are bitmasks where bit
/// `i` is the value of the `i`-th atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    atoms: Vec<Atom>,
}

impl Vocabulary {
    pub fn new<I: IntoIterator<Item = Atom>>(atoms: I) -> Result<Vocabulary, LogicError> {
        Self::with_limit(atoms, MAX_ATOMS)
    }

    pub(crate) fn with_limit<I: IntoIterator<Item = Atom>>(
        atoms: I,
        limit: usize,
    ) -> Result<Vocabulary, LogicError> {
        let atoms: Vec<Atom> = atoms
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if atoms.len() > limit {
            return Err(LogicError::VocabularyOverflow {
                atoms: atoms.len(),
                limit,
            });
        }
        Ok(Vocabulary { atoms })
    }

    /// The atoms occurring in `formulas`.
    pub fn of<'a, I: IntoIterator<Item = &'a Formula>>(
        formulas: I,
    ) -> Result<Vocabulary, LogicError> {
        let mut set = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut set);
        }
        Vocabulary::new(set)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    /// Number of total valuations, `2^len`.
    pub fn valuation_count(&self) -> u64 {
        1u64 << self.atoms.len()
    }

    /// Evaluates `f` under the valuation encoded by `bits`.
    ///
    /// # Panics
    /// If `f` mentions an atom outside the vocabulary.
    pub fn eval(&self, f: &Formula, bits: u32) -> bool {
        f.eval(&|a: &Atom| {
            let i = self.index_of(a).expect("atom outside vocabulary");
            bits >> i & 1 == 1
        })
    }
}

/// Finds a valuation satisfying every formula, or `None`.
pub fn find_model(vocab: &Vocabulary, formulas: &[Formula], strategy: Strategy) -> Option<u32> {
    match strategy {
        Strategy::Exhaustive => (0..vocab.valuation_count())
            .map(|v| v as u32)
            .find(|&bits| formulas.iter().all(|f| vocab.eval(f, bits))),
        Strategy::Search => {
            let mut partial: Vec<Option<bool>> = vec![None; vocab.len()];
            search(vocab, formulas, &mut partial, 0)
        }
    }
}

fn search(
    vocab: &Vocabulary,
    formulas: &[Formula],
    partial: &mut Vec<Option<bool>>,
    next: usize,
) -> Option<u32> {
    let lookup = |a: &Atom| partial[vocab.index_of(a).expect("atom outside vocabulary")];
    let mut all_true = true;
    for f in formulas {
        match f.eval_partial(&lookup) {
            Some(false) => return None,
            Some(true) => {}
            None => all_true = false,
        }
    }
    if all_true {
        // Unassigned atoms are free; fill with false.
        return Some(
            partial
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Some(true))
                .fold(0u32, |bits, (i, _)| bits | 1 << i),
        );
    }
    debug_assert!(next < partial.len(), "all atoms assigned yet undetermined");
    for value in [true, false] {
        partial[next] = Some(value);
        if let Some(bits) = search(vocab, formulas, partial, next + 1) {
            partial[next] = None;
            return Some(bits);
        }
    }
    partial[next] = None;
    None
}

/// True iff some total valuation satisfies every axiom.
pub fn is_satisfiable(axioms: &[Formula]) -> Result<bool, LogicError> {
    is_satisfiable_with(axioms, Strategy::default())
}

pub fn is_satisfiable_with(axioms: &[Formula], strategy: Strategy) -> Result<bool, LogicError> {
    let vocab = Vocabulary::of(axioms)?;
    Ok(find_model(&vocab, axioms, strategy).is_some())
}

/// Classical consequence: every valuation satisfying the axioms satisfies `phi`.
pub fn entails(axioms: &[Formula], phi: &Formula) -> Result<bool, LogicError> {
    entails_with(axioms, phi, Strategy::default())
}

pub fn entails_with(
    axioms: &[Formula],
    phi: &Formula,
    strategy: Strategy,
) -> Result<bool, LogicError> {
    let mut with_negation = axioms.to_vec();
    with_negation.push(Formula::not(phi.clone()));
    let vocab = Vocabulary::of(&with_negation)?;
    Ok(find_model(&vocab, &with_negation, strategy).is_none())
}
