//! Parser for the species expression language used on the command line.
//!
//! The grammar, whitespace-insensitive except for one caveat:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := mark '*' factor          -- y, y1, y2, ... attach a weight
//!         | atom '(' expr ')'        -- substitution
//!         | atom
//!         | '(' expr ')'
//! ```
//!
//! Atom names: 0, 1, X, E, E+, E_n (n a size), Eodd, L, L+, C, S, Der,
//! Par, Bal, G. The lexer glues `E` or `L` to an immediately following `+`,
//! so `E+` is the nonempty-set species; write sums with whitespace
//! (`E + X`) to keep them apart.

use std::fmt;

use species::{Atom, SpeciesExpr};

/// A syntax error, pointing at the byte where parsing stopped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Plus,
    Star,
    LParen,
    RParen,
    Ident(String),
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let mut name = input[start..i].to_string();
                // `E+` and `L+` are atom names of their own; the '+' glues
                // on only when it touches the identifier.
                if (name == "E" || name == "L") && i < bytes.len() && bytes[i] == b'+' {
                    name.push('+');
                    i += 1;
                }
                out.push((Tok::Ident(name), start));
            }
            _ => {
                // `i` sits on a char boundary: the loop only ever advances
                // past ASCII bytes, so decode the full character here rather
                // than mangling a lone UTF-8 byte.
                let full = input[i..].chars().next().unwrap_or(c);
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character {full:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn atom_from_name(name: &str, offset: usize) -> Result<Atom, ParseError> {
    let atom = match name {
        "0" => Atom::Zero,
        "1" => Atom::One,
        "X" => Atom::Singleton,
        "E" => Atom::Set,
        "E+" => Atom::NonEmptySet,
        "Eodd" => Atom::OddSet,
        "L" => Atom::Linear,
        "L+" => Atom::NonEmptyLinear,
        "C" => Atom::Cycle,
        "S" => Atom::Permutation,
        "Der" => Atom::Derangement,
        "Par" => Atom::Partition,
        "Bal" => Atom::Ballot,
        "G" => Atom::Graph,
        _ => {
            if let Some(size) = name.strip_prefix("E_") {
                match size.parse::<usize>() {
                    Ok(size) => return Ok(Atom::SetOfSize(size)),
                    Err(_) => {
                        return Err(ParseError {
                            offset,
                            message: format!("the size in {name:?} is not a number"),
                        })
                    }
                }
            }
            return Err(ParseError {
                offset,
                message: format!(
                    "unknown species {name:?} (atoms: 0 1 X E E+ E_n Eodd L L+ C S Der Par Bal G; \
                     weight marks like y or y2 must multiply a factor, as in y*C)"
                ),
            });
        }
    };
    Ok(atom)
}

fn is_mark(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('y') && chars.all(|c| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_second(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.bump();
                Ok(())
            }
            _ => Err(ParseError {
                offset: self.offset(),
                message: "expected ')'".to_string(),
            }),
        }
    }

    fn expr(&mut self) -> Result<SpeciesExpr, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.bump();
            acc = SpeciesExpr::sum(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SpeciesExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = SpeciesExpr::product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SpeciesExpr, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let offset = self.offset();
                if is_mark(&name) && self.peek_second() == Some(&Tok::Star) {
                    self.bump();
                    self.bump();
                    let inner = self.factor()?;
                    return Ok(SpeciesExpr::weight(&name, inner));
                }
                let atom = atom_from_name(&name, offset)?;
                self.bump();
                if self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(SpeciesExpr::compose(SpeciesExpr::from(atom), inner));
                }
                Ok(SpeciesExpr::from(atom))
            }
            _ => Err(ParseError {
                offset: self.offset(),
                message: "expected a species expression".to_string(),
            }),
        }
    }
}

/// Parse an expression, requiring the whole input to be consumed.
pub fn parse(input: &str) -> Result<SpeciesExpr, ParseError> {
    let toks = lex(input)?;
    let mut parser = Parser { toks, pos: 0, end: input.len() };
    let expr = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(ParseError {
            offset: parser.offset(),
            message: "expected '+', '*', or end of input".to_string(),
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atom(a: Atom) -> SpeciesExpr {
        SpeciesExpr::from(a)
    }

    #[test]
    fn atoms_parse_by_name() {
        assert_eq!(parse("Der").unwrap(), atom(Atom::Derangement));
        assert_eq!(parse("E+").unwrap(), atom(Atom::NonEmptySet));
        assert_eq!(parse("E_3").unwrap(), atom(Atom::SetOfSize(3)));
        assert_eq!(parse("Eodd").unwrap(), atom(Atom::OddSet));
        assert_eq!(parse("0").unwrap(), atom(Atom::Zero));
    }

    #[test]
    fn precedence_products_bind_tighter_than_sums() {
        assert_eq!(
            parse("X + E * C").unwrap(),
            SpeciesExpr::sum(
                atom(Atom::Singleton),
                SpeciesExpr::product(atom(Atom::Set), atom(Atom::Cycle))
            )
        );
        assert_eq!(
            parse("(X + E) * C").unwrap(),
            SpeciesExpr::product(
                SpeciesExpr::sum(atom(Atom::Singleton), atom(Atom::Set)),
                atom(Atom::Cycle)
            )
        );
    }

    #[test]
    fn composition_attaches_to_atoms() {
        assert_eq!(
            parse("E(E+)").unwrap(),
            SpeciesExpr::compose(atom(Atom::Set), atom(Atom::NonEmptySet))
        );
        assert_eq!(
            parse("L(E+)").unwrap(),
            SpeciesExpr::compose(atom(Atom::Linear), atom(Atom::NonEmptySet))
        );
    }

    #[test]
    fn weights_need_a_star() {
        assert_eq!(
            parse("E(y*C)").unwrap(),
            SpeciesExpr::compose(
                atom(Atom::Set),
                SpeciesExpr::weight("y", atom(Atom::Cycle))
            )
        );
        assert_eq!(
            parse("y2*(X*X)").unwrap(),
            SpeciesExpr::weight(
                "y2",
                SpeciesExpr::product(atom(Atom::Singleton), atom(Atom::Singleton))
            )
        );
        // A bare mark is an unknown species.
        let err = parse("y + X").unwrap_err();
        assert!(err.message.contains("unknown species"));
    }

    #[test]
    fn error_offsets_point_at_the_problem() {
        let err = parse("E(").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("E(C)) ").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("Foo").unwrap_err();
        assert_eq!(err.offset, 0);
        let err = parse("X @ E").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn non_ascii_input_reports_the_whole_character() {
        // Offsets are byte offsets, but the message must show the actual
        // character, not its first UTF-8 byte.
        let err = parse("E(λ)").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains('λ'), "got: {}", err.message);
        let err = parse("λ").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.message.contains('λ'), "got: {}", err.message);
    }

    #[test]
    fn glued_plus_is_the_nonempty_atom() {
        // `E+X` reads as the atom E+ followed by a stray X; a sum needs
        // whitespace after the E.
        assert!(parse("E+X").is_err());
        assert_eq!(
            parse("E + X").unwrap(),
            SpeciesExpr::sum(atom(Atom::Set), atom(Atom::Singleton))
        );
        assert_eq!(
            parse("1+X").unwrap(),
            SpeciesExpr::sum(atom(Atom::One), atom(Atom::Singleton))
        );
    }

    #[test]
    fn one_plus_x_table_row_spelling() {
        // The table row names are themselves parseable.
        for name in ["X", "1+X", "E+", "E", "L+", "L", "C"] {
            assert!(parse(name).is_ok(), "{name}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = SpeciesExpr> {
        let leaf = prop_oneof![
            Just(atom(Atom::Zero)),
            Just(atom(Atom::One)),
            Just(atom(Atom::Singleton)),
            Just(atom(Atom::Set)),
            Just(atom(Atom::NonEmptySet)),
            Just(atom(Atom::SetOfSize(2))),
            Just(atom(Atom::SetOfSize(3))),
            Just(atom(Atom::OddSet)),
            Just(atom(Atom::Linear)),
            Just(atom(Atom::NonEmptyLinear)),
            Just(atom(Atom::Cycle)),
            Just(atom(Atom::Permutation)),
            Just(atom(Atom::Derangement)),
            Just(atom(Atom::Partition)),
            Just(atom(Atom::Ballot)),
            Just(atom(Atom::Graph)),
        ];
        // Substitution heads must be atoms for the printed form to re-parse.
        let outer = prop_oneof![
            Just(Atom::Set),
            Just(Atom::Linear),
            Just(Atom::SetOfSize(2)),
            Just(Atom::Cycle),
        ];
        leaf.prop_recursive(4, 24, 3, move |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| SpeciesExpr::sum(a, b)),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| SpeciesExpr::product(a, b)),
                (outer.clone(), inner.clone())
                    .prop_map(|(o, g)| SpeciesExpr::compose(SpeciesExpr::from(o), g)),
                (prop_oneof![Just("y"), Just("y1"), Just("y2")], inner.clone())
                    .prop_map(|(m, g)| SpeciesExpr::weight(m, g)),
            ]
        })
    }

    proptest! {
        /// Printed output is canonical: it reparses, and reprinting the
        /// result reproduces the text byte for byte. (Structural identity
        /// is too strong — `+` and `*` print flat, so `a + (b + c)` and
        /// `(a + b) + c` share one canonical spelling.)
        #[test]
        fn printed_expressions_reparse(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap_or_else(|err| {
                panic!("{printed:?} failed to reparse: {err}")
            });
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
