use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A named propositional atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom, returning `None` unless `name` is a valid identifier
    /// (`[A-Za-z_][A-Za-z0-9_]*`).
    pub fn new(name: &str) -> Option<Atom> {
        is_identifier(name).then(|| Atom(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Propositional formula over named atoms.
///
/// Equality is structural: `~~A` and `A` are different formulas even though
/// they are interchangeable in every model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// The binary connectives, in one place so enumeration and printing agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
    ];

    pub fn apply(self, lhs: Formula, rhs: Formula) -> Formula {
        let (l, r) = (Box::new(lhs), Box::new(rhs));
        match self {
            Connective::And => Formula::And(l, r),
            Connective::Or => Formula::Or(l, r),
            Connective::Implies => Formula::Implies(l, r),
            Connective::Iff => Formula::Iff(l, r),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
            Connective::Iff => "<->",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Connective::Iff => 1,
            Connective::Implies => 2,
            Connective::Or => 3,
            Connective::And => 4,
        }
    }

    fn right_assoc(self) -> bool {
        matches!(self, Connective::Implies)
    }
}

const NOT_PRECEDENCE: u8 = 5;
const ATOM_PRECEDENCE: u8 = 6;

impl Formula {
    /// Atom constructor.
    ///
    /// # Panics
    /// If `name` is not an identifier. Use [`Atom::new`] for fallible input.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).unwrap_or_else(|| panic!("invalid atom name {name:?}")))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Connective::And.apply(lhs, rhs)
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Connective::Or.apply(lhs, rhs)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Connective::Implies.apply(lhs, rhs)
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Connective::Iff.apply(lhs, rhs)
    }

    /// `phi & ~phi`
    pub fn contradiction_of(phi: Formula) -> Formula {
        Formula::and(phi.clone(), Formula::not(phi))
    }

    /// `phi | ~phi`
    pub fn excluded_middle_of(phi: Formula) -> Formula {
        Formula::or(phi.clone(), Formula::not(phi))
    }

    /// Height of the syntax tree, counting an atom as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Classical evaluation under an arbitrary atom assignment.
    pub fn eval<F>(&self, value: &F) -> bool
    where
        F: Fn(&Atom) -> bool,
    {
        match self {
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Implies(l, r) => !l.eval(value) || r.eval(value),
            Formula::Iff(l, r) => l.eval(value) == r.eval(value),
        }
    }

    /// Kleene strong three-valued evaluation: `None` means "not yet determined"
    /// under a partial assignment.
    pub fn eval_partial<F>(&self, value: &F) -> Option<bool>
    where
        F: Fn(&Atom) -> Option<bool>,
    {
        match self {
            Formula::Atom(a) => value(a),
            Formula::Not(f) => f.eval_partial(value).map(|b| !b),
            Formula::And(l, r) => match (l.eval_partial(value), r.eval_partial(value)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Formula::Or(l, r) => match (l.eval_partial(value), r.eval_partial(value)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Formula::Implies(l, r) => match (l.eval_partial(value), r.eval_partial(value)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            Formula::Iff(l, r) => match (l.eval_partial(value), r.eval_partial(value)) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            },
        }
    }

    /// Negation normal form: only `&`, `|` and negated atoms remain.
    /// `->` and `<->` are expanded classically.
    pub fn nnf(&self) -> Nnf {
        self.to_nnf(true)
    }

    fn to_nnf(&self, positive: bool) -> Nnf {
        match (self, positive) {
            (Formula::Atom(a), pol) => Nnf::Literal(a.clone(), pol),
            (Formula::Not(f), pol) => f.to_nnf(!pol),
            (Formula::And(l, r), true) | (Formula::Or(l, r), false) => {
                Nnf::And(Box::new(l.to_nnf(positive)), Box::new(r.to_nnf(positive)))
            }
            (Formula::Or(l, r), true) | (Formula::And(l, r), false) => {
                Nnf::Or(Box::new(l.to_nnf(positive)), Box::new(r.to_nnf(positive)))
            }
            (Formula::Implies(l, r), true) => {
                Nnf::Or(Box::new(l.to_nnf(false)), Box::new(r.to_nnf(true)))
            }
            (Formula::Implies(l, r), false) => {
                Nnf::And(Box::new(l.to_nnf(true)), Box::new(r.to_nnf(false)))
            }
            // a <-> b  ==  (~a | b) & (a | ~b)
            (Formula::Iff(l, r), true) => Nnf::And(
                Box::new(Nnf::Or(Box::new(l.to_nnf(false)), Box::new(r.to_nnf(true)))),
                Box::new(Nnf::Or(Box::new(l.to_nnf(true)), Box::new(r.to_nnf(false)))),
            ),
            // ~(a <-> b)  ==  (a | b) & (~a | ~b)
            (Formula::Iff(l, r), false) => Nnf::And(
                Box::new(Nnf::Or(Box::new(l.to_nnf(true)), Box::new(r.to_nnf(true)))),
                Box::new(Nnf::Or(
                    Box::new(l.to_nnf(false)),
                    Box::new(r.to_nnf(false)),
                )),
            ),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) => ATOM_PRECEDENCE,
            Formula::Not(_) => NOT_PRECEDENCE,
            Formula::And(..) => Connective::And.precedence(),
            Formula::Or(..) => Connective::Or.precedence(),
            Formula::Implies(..) => Connective::Implies.precedence(),
            Formula::Iff(..) => Connective::Iff.precedence(),
        }
    }

    fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(l, r) => Some((Connective::And, l, r)),
            Formula::Or(l, r) => Some((Connective::Or, l, r)),
            Formula::Implies(l, r) => Some((Connective::Implies, l, r)),
            Formula::Iff(l, r) => Some((Connective::Iff, l, r)),
            _ => None,
        }
    }
}

/// A formula in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nnf {
    /// Atom with polarity (`false` = negated).
    Literal(Atom, bool),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
}

impl Nnf {
    pub fn eval<F>(&self, literal: &F) -> bool
    where
        F: Fn(&Atom, bool) -> bool,
    {
        match self {
            Nnf::Literal(a, pol) => literal(a, *pol),
            Nnf::And(l, r) => l.eval(literal) && r.eval(literal),
            Nnf::Or(l, r) => l.eval(literal) || r.eval(literal),
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parenthesize: bool) -> fmt::Result {
    if parenthesize {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Prints the ASCII surface syntax with the fewest parentheses that still
/// parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                f.write_str("~")?;
                write_child(f, inner, inner.precedence() < NOT_PRECEDENCE)
            }
            _ => {
                let (op, l, r) = self.as_binary().expect("binary node");
                let p = op.precedence();
                let (left_parens, right_parens) = if op.right_assoc() {
                    (l.precedence() <= p, r.precedence() < p)
                } else {
                    (l.precedence() < p, r.precedence() <= p)
                };
                write_child(f, l, left_parens)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, right_parens)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn depth_counts_atoms_as_one() {
        assert_eq!(a("A").depth(), 1);
        assert_eq!(Formula::not(a("A")).depth(), 2);
        assert_eq!(Formula::excluded_middle_of(a("P")).depth(), 3);
    }

    #[test]
    fn atom_names_are_identifiers() {
        assert!(Atom::new("Q_retro").is_some());
        assert!(Atom::new("_x1").is_some());
        assert!(Atom::new("1x").is_none());
        assert!(Atom::new("").is_none());
        assert!(Atom::new("a-b").is_none());
    }

    #[test]
    fn printing_respects_associativity() {
        let imp = Formula::implies(Formula::implies(a("A"), a("B")), a("C"));
        assert_eq!(imp.to_string(), "(A -> B) -> C");
        let imp = Formula::implies(a("A"), Formula::implies(a("B"), a("C")));
        assert_eq!(imp.to_string(), "A -> B -> C");
        let conj = Formula::and(a("A"), Formula::and(a("B"), a("C")));
        assert_eq!(conj.to_string(), "A & (B & C)");
        let neg = Formula::not(Formula::and(a("P"), Formula::not(a("P"))));
        assert_eq!(neg.to_string(), "~(P & ~P)");
    }

    #[test]
    fn nnf_pushes_negation_to_atoms() {
        let f = Formula::not(Formula::implies(a("A"), a("B")));
        assert_eq!(
            f.nnf(),
            Nnf::And(
                Box::new(Nnf::Literal(Atom::new("A").unwrap(), true)),
                Box::new(Nnf::Literal(Atom::new("B").unwrap(), false)),
            )
        );
    }

    #[test]
    fn kleene_partial_evaluation() {
        let f = Formula::or(a("A"), a("B"));
        let only_a_true = |x: &Atom| (x.name() == "A").then_some(true);
        assert_eq!(f.eval_partial(&only_a_true), Some(true));
        let nothing = |_: &Atom| None;
        assert_eq!(f.eval_partial(&nothing), None);
    }
}
