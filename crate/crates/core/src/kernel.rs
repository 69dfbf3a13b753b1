//! Finitary theories with a restricted theory syntax.
//!
//! Deduction (the proof syntax) is classical. What may be *stated* as an
//! axiom or theorem is narrower: a formula is legal in a theory when the
//! axioms leave it undecided, or when every atom it mentions is already
//! decided. Tautologies over undecided atoms, such as `P | ~P`, are therefore
//! deducible but never theorems, and `P & ~P` can never be added as an axiom
//! while `P` is open.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{
    self, formula_count, formulas_up_to_depth, Atom, Formula, LogicError, Vocabulary,
};

/// Bounds on [`Theory::theorems`].
pub const MAX_THEOREM_DEPTH: usize = 4;
pub const MAX_THEOREM_ATOMS: usize = 4;
/// Candidate formulas [`Theory::theorems`] is willing to enumerate.
pub const MAX_THEOREM_CANDIDATES: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("atom '{0}' is not in the theory's vocabulary")]
    UnknownAtom(Atom),
    #[error("'{formula}' is not in the theory syntax of {theory}")]
    IllegalAxiom { theory: String, formula: Formula },
    #[error("adding {} to {theory} makes it inconsistent", join(.added))]
    Inconsistent { theory: String, added: Vec<Formula> },
    #[error("theorem enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid theory name '{0}'")]
    InvalidName(String),
}

fn join(fs: &[Formula]) -> String {
    fs.iter()
        .map(|f| format!("'{f}'"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Metamathematical status of a formula in a theory; exactly one holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropStatus {
    Provable,
    Refutable,
    Undecidable,
}

impl PropStatus {
    pub fn is_decided(self) -> bool {
        self != PropStatus::Undecidable
    }
}

impl fmt::Display for PropStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropStatus::Provable => "provable",
            PropStatus::Refutable => "refutable",
            PropStatus::Undecidable => "undecidable",
        })
    }
}

/// A consistent, finitely axiomatized theory over a declared vocabulary.
///
/// Construction checks each axiom for legality against the theory formed by
/// the axioms before it, and checks consistency of the whole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    name: String,
    vocabulary: Vocabulary,
    axioms: Vec<Formula>,
}

impl Theory {
    pub fn new<I>(name: &str, vocabulary: I, axioms: Vec<Formula>) -> Result<Theory, KernelError>
    where
        I: IntoIterator<Item = Atom>,
    {
        let vocabulary = Vocabulary::new(vocabulary)?;
        let mut theory = Theory::empty_with(name, vocabulary)?;
        for axiom in axioms {
            theory = theory.extend(std::slice::from_ref(&axiom))?;
            theory.name = name.to_string();
        }
        Ok(theory)
    }

    /// The theory with no axioms (every legal proposition undecidable).
    pub fn empty<I>(name: &str, vocabulary: I) -> Result<Theory, KernelError>
    where
        I: IntoIterator<Item = Atom>,
    {
        Theory::empty_with(name, Vocabulary::new(vocabulary)?)
    }

    fn empty_with(name: &str, vocabulary: Vocabulary) -> Result<Theory, KernelError> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(KernelError::InvalidName(name.to_string()));
        }
        Ok(Theory {
            name: name.to_string(),
            vocabulary,
            axioms: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    /// Same axioms under a different name.
    pub fn renamed(&self, name: &str) -> Theory {
        Theory {
            name: name.to_string(),
            ..self.clone()
        }
    }

    fn check_atoms(&self, phi: &Formula) -> Result<(), KernelError> {
        match phi
            .atoms()
            .into_iter()
            .find(|a| !self.vocabulary.contains(a))
        {
            Some(a) => Err(KernelError::UnknownAtom(a)),
            None => Ok(()),
        }
    }

    /// Classical consequence of the axioms (the proof syntax), without any
    /// legality filter.
    pub fn proves(&self, phi: &Formula) -> Result<bool, KernelError> {
        self.check_atoms(phi)?;
        Ok(logic::entails(&self.axioms, phi)?)
    }

    pub fn classify(&self, phi: &Formula) -> Result<PropStatus, KernelError> {
        if self.proves(phi)? {
            Ok(PropStatus::Provable)
        } else if self.proves(&Formula::not(phi.clone()))? {
            Ok(PropStatus::Refutable)
        } else {
            Ok(PropStatus::Undecidable)
        }
    }

    /// Status of every vocabulary atom, in vocabulary order.
    pub fn atom_statuses(&self) -> Result<Vec<(Atom, PropStatus)>, KernelError> {
        self.vocabulary
            .atoms()
            .iter()
            .map(|a| Ok((a.clone(), self.classify(&Formula::Atom(a.clone()))?)))
            .collect()
    }

    pub fn decided_atoms(&self) -> Result<BTreeSet<Atom>, KernelError> {
        Ok(self
            .atom_statuses()?
            .into_iter()
            .filter(|(_, s)| s.is_decided())
            .map(|(a, _)| a)
            .collect())
    }

    /// Membership in the theory syntax: undecided by the axioms, or built
    /// only from atoms the axioms already decide.
    pub fn is_legal(&self, phi: &Formula) -> Result<bool, KernelError> {
        if self.classify(phi)? == PropStatus::Undecidable {
            return Ok(true);
        }
        for atom in phi.atoms() {
            if !self.classify(&Formula::Atom(atom))?.is_decided() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Legal formulas of depth at most `depth_bound` entailed by the axioms.
    pub fn theorems(&self, depth_bound: usize) -> Result<BTreeSet<Formula>, KernelError> {
        if depth_bound > MAX_THEOREM_DEPTH {
            return Err(KernelError::BoundExceeded(format!(
                "depth {depth_bound} > {MAX_THEOREM_DEPTH}"
            )));
        }
        let n = self.vocabulary.len();
        if n > MAX_THEOREM_ATOMS {
            return Err(KernelError::BoundExceeded(format!(
                "{n} atoms > {MAX_THEOREM_ATOMS}"
            )));
        }
        let candidates = formula_count(n, depth_bound);
        if candidates > MAX_THEOREM_CANDIDATES {
            return Err(KernelError::BoundExceeded(format!(
                "{candidates} candidate formulas > {MAX_THEOREM_CANDIDATES}"
            )));
        }
        let decided = self.decided_atoms()?;
        let mut out = BTreeSet::new();
        for phi in formulas_up_to_depth(self.vocabulary.atoms(), depth_bound) {
            if !self.proves(&phi)? {
                continue;
            }
            // An entailed formula is never undecidable, so legality reduces
            // to the decided-atoms clause.
            if phi.atoms().is_subset(&decided) {
                out.insert(phi);
            }
        }
        Ok(out)
    }

    /// A new theory with `delta` appended; `self` is untouched.
    ///
    /// Each formula must be legal here, and the result must be consistent.
    pub fn extend(&self, delta: &[Formula]) -> Result<Theory, KernelError> {
        for phi in delta {
            self.check_atoms(phi)?;
            if !self.is_legal(phi)? {
                return Err(KernelError::IllegalAxiom {
                    theory: self.name.clone(),
                    formula: phi.clone(),
                });
            }
        }
        let mut axioms = self.axioms.clone();
        axioms.extend(delta.iter().cloned());
        if !logic::is_satisfiable(&axioms)? {
            return Err(KernelError::Inconsistent {
                theory: self.name.clone(),
                added: delta.to_vec(),
            });
        }
        let name = if delta.is_empty() {
            self.name.clone()
        } else {
            let added: Vec<String> = delta.iter().map(plus_term).collect();
            format!("{}+{}", self.name, added.join("+"))
        };
        Ok(Theory {
            name,
            vocabulary: self.vocabulary.clone(),
            axioms,
        })
    }
}

fn plus_term(f: &Formula) -> String {
    match f {
        Formula::Atom(_) | Formula::Not(_) => f.to_string(),
        _ => format!("({f})"),
    }
}

/// A parsed theory file: the theory plus any `query` lines.
#[derive(Clone, Debug)]
pub struct TheoryFile {
    pub theory: Theory,
    pub queries: Vec<Formula>,
}

/// Errors from reading a theory file. Construction failures of the theory
/// itself are passed through as [`KernelError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Theory(#[from] KernelError),
}

/// Parses the plain-text theory format:
///
/// ```text
/// # comment
/// theory QM
/// atoms P Q R
/// axiom Q -> P
/// query P | ~P
/// ```
pub fn parse_theory_file(text: &str) -> Result<TheoryFile, TheoryFileError> {
    let mut name: Option<String> = None;
    let mut atoms: Vec<Atom> = Vec::new();
    let mut axioms = Vec::new();
    let mut queries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        let parse_err = |message: String| TheoryFileError::Parse { line, message };
        let formula = |rest: &str| logic::parse_formula(rest).map_err(|e| parse_err(e.to_string()));
        match keyword {
            "theory" => {
                if name.is_some() {
                    return Err(parse_err("duplicate 'theory' line".into()));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_err("expected 'theory <name>'".into()));
                }
                name = Some(rest.to_string());
            }
            "atoms" => {
                for word in rest
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|w| !w.is_empty())
                {
                    let atom = Atom::new(word)
                        .ok_or_else(|| parse_err(format!("invalid atom name '{word}'")))?;
                    atoms.push(atom);
                }
            }
            "axiom" => axioms.push(formula(rest)?),
            "query" => queries.push(formula(rest)?),
            other => return Err(parse_err(format!("unknown directive '{other}'"))),
        }
    }
    let name = name.ok_or(TheoryFileError::Parse {
        line: 0,
        message: "missing 'theory <name>' line".into(),
    })?;
    let theory = Theory::new(&name, atoms, axioms)?;
    for q in &queries {
        if let Some(a) = q
            .atoms()
            .into_iter()
            .find(|a| !theory.vocabulary().contains(a))
        {
            return Err(KernelError::UnknownAtom(a).into());
        }
    }
    Ok(TheoryFile { theory, queries })
}
