//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := bicond
//! bicond  := impl ("<->" impl)*
//! impl    := disj ("->" impl)?
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | atom | "(" formula ")"
//! atom    := [A-Za-z_][A-Za-z0-9_]*
//! ```

use super::formula::{Atom, Connective, Formula};
use super::LogicError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Implies => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '~' => push(Tok::Not, 1, &mut i, &mut col),
            '&' => push(Tok::And, 1, &mut i, &mut col),
            '|' => push(Tok::Or, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Implies, 2, &mut i, &mut col),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::Iff, 3, &mut i, &mut col)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                let width = j - i;
                push(Tok::Ident(name), width, &mut i, &mut col);
            }
            _ => {
                // Grab the whole run of unrecognised non-space characters for the message.
                let mut j = i + 1;
                while j < chars.len()
                    && !chars[j].is_whitespace()
                    && !matches!(chars[j], '~' | '&' | '|' | '(' | ')')
                    && !(chars[j].is_ascii_alphanumeric() || chars[j] == '_')
                {
                    j += 1;
                }
                return Err(LogicError::UnknownToken {
                    line,
                    column: col,
                    found: chars[i..j].iter().collect(),
                });
            }
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> LogicError {
        let here = &self.toks[self.pos];
        LogicError::Syntax {
            line: here.line,
            column: here.column,
            message: format!("expected {expected}, found {}", here.tok.describe()),
        }
    }

    fn bicond(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implication()?;
            lhs = Connective::Iff.apply(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Connective::Implies.apply(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Connective::Or.apply(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Connective::And.apply(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(name) => {
                self.bump();
                // The tokenizer only produces identifiers.
                Ok(Formula::Atom(Atom::new(&name).expect("identifier token")))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.bicond()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("'~', '(' or an atom")),
        }
    }
}

/// Parses a formula. Precedence, tightest first: `~`, `&`, `|`, `->`, `<->`.
/// `->` associates to the right, the others to the left.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = p.bicond()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn contradiction_parses_as_conjunction() {
        assert_eq!(
            parse_formula("P & ~P").unwrap(),
            Formula::and(a("P"), Formula::not(a("P")))
        );
    }

    #[test]
    fn double_negation_is_kept() {
        let f = parse_formula("~~A").unwrap();
        assert_eq!(f, Formula::not(Formula::not(a("A"))));
        assert_ne!(f, a("A"));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("A -> (B -> A)").unwrap(),
            Formula::implies(a("A"), Formula::implies(a("B"), a("A")))
        );
        assert_eq!(
            parse_formula("A -> B -> A").unwrap(),
            parse_formula("A -> (B -> A)").unwrap()
        );
    }

    #[test]
    fn precedence_ladder() {
        // ~A & B | C -> D <-> E  ==  ((((~A) & B) | C) -> D) <-> E
        let f = parse_formula("~A & B | C -> D <-> E").unwrap();
        let expected = Formula::iff(
            Formula::implies(
                Formula::or(Formula::and(Formula::not(a("A")), a("B")), a("C")),
                a("D"),
            ),
            a("E"),
        );
        assert_eq!(f, expected);
        assert_eq!(
            parse_formula("A <-> B <-> C").unwrap(),
            Formula::iff(Formula::iff(a("A"), a("B")), a("C"))
        );
    }

    #[test]
    fn syntax_error_has_location() {
        match parse_formula("A &\n  (B | )") {
            Err(LogicError::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (2, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula("(A & B"),
            Err(LogicError::Syntax { .. })
        ));
        assert!(matches!(parse_formula(""), Err(LogicError::Syntax { .. })));
        assert!(matches!(
            parse_formula("A B"),
            Err(LogicError::Syntax { .. })
        ));
    }

    #[test]
    fn unknown_token_reported() {
        match parse_formula("A => B") {
            Err(LogicError::UnknownToken {
                line,
                column,
                found,
            }) => {
                assert_eq!((line, column), (1, 3));
                assert_eq!(found, "=>");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula("A - B"),
            Err(LogicError::UnknownToken { .. })
        ));
    }
}
