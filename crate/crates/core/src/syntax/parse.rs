//! Lexer and recursive-descent parser for terms and formulas.
//!
//! ```text
//! term    := var | '\' var [':' formula] '.' term | 'mu' mvar [':' formula] '.' term
//!          | '[' mvar ']' term | '<' term ',' term '>'
//!          | 'in1' ['{' formula '}'] term | 'in2' ['{' formula '}'] term
//!          | '(' term eterm ')'
//! eterm   := term | 'p1' | 'p2' | '[' var '.' term ',' var '.' term ']'
//! formula := pvar | '_|_' | formula '->' formula | formula '/\' formula
//!          | formula '\/' formula | '~' formula | '(' formula ')'
//! ```
//!
//! `(t e1 e2 ...)` is accepted as `((t e1) e2 ...)`. A binder may not
//! rebind a name already bound by an enclosing binder, and an identifier may
//! not be used both as a λ-variable and as a μ-variable.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::formula::Formula;
use super::term::{Branch, ETerm, Side, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    Bottom,
    Arrow,
    Wedge,
    Vee,
    Tilde,
    Mu,
    P1,
    P2,
    In1,
    In2,
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Lambda => "`\\`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Comma => "`,`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LAngle => "`<`",
            Tok::RAngle => "`>`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Bottom => "`_|_`",
            Tok::Arrow => "`->`",
            Tok::Wedge => "`/\\`",
            Tok::Vee => "`\\/`",
            Tok::Tilde => "`~`",
            Tok::Mu => "`mu`",
            Tok::P1 => "`p1`",
            Tok::P2 => "`p2`",
            Tok::In1 => "`in1`",
            Tok::In2 => "`in2`",
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

/// Position of a token in the input: byte offset plus 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: unexpected character `{found}`")]
    BadChar { pos: Pos, found: char },
    #[error("{pos}: expected {expected}, found {found}")]
    Unexpected { pos: Pos, expected: String, found: String },
    #[error("{pos}: `{name}` is already bound by an enclosing binder")]
    Shadowing { pos: Pos, name: String },
    #[error("{pos}: `{name}` is used both as a λ-variable and as a μ-variable")]
    MixedNamespace { pos: Pos, name: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::BadChar { pos, .. }
            | ParseError::Unexpected { pos, .. }
            | ParseError::Shadowing { pos, .. }
            | ParseError::MixedNamespace { pos, .. } => *pos,
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    let mut line = 1;
    let mut line_start = 0;
    while i < bytes.len() {
        let pos = Pos { offset: i, line, column: src[line_start..i].chars().count() + 1 };
        let rest = &src[i..];
        let c = rest.chars().next().expect("non-empty remainder");
        if c == '\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '#' {
            i += rest.find('\n').unwrap_or(rest.len());
            continue;
        }
        let two = [("_|_", Tok::Bottom), ("->", Tok::Arrow), ("/\\", Tok::Wedge), ("\\/", Tok::Vee)];
        if let Some((s, tok)) = two.iter().find(|(s, _)| rest.starts_with(s)) {
            toks.push((tok.clone(), pos));
            i += s.len();
            continue;
        }
        let single = match c {
            '\\' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '~' => Some(Tok::Tilde),
            _ => None,
        };
        if let Some(tok) = single {
            toks.push((tok, pos));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match word {
                "mu" => Tok::Mu,
                "p1" => Tok::P1,
                "p2" => Tok::P2,
                "in1" => Tok::In1,
                "in2" => Tok::In2,
                _ => Tok::Ident(word.to_string()),
            };
            toks.push((tok, pos));
            i += len;
            continue;
        }
        return Err(ParseError::BadChar { pos, found: c });
    }
    let pos = Pos { offset: src.len(), line, column: src[line_start..].chars().count() + 1 };
    toks.push((Tok::Eof, pos));
    Ok(toks)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Lambda,
    Mu,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    roles: HashMap<String, Role>,
    bound: Vec<String>,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, at: 0, roles: HashMap::new(), bound: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Unexpected { pos: self.pos(), expected: expected.to_string(), found: self.peek().to_string() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn ident(&mut self, role: Role) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match self.roles.get(&name) {
                    Some(r) if *r != role => return Err(ParseError::MixedNamespace { pos, name }),
                    _ => {
                        self.roles.insert(name.clone(), role);
                    }
                }
                Ok(name)
            }
            _ => Err(self.error(match role {
                Role::Lambda => "a λ-variable",
                Role::Mu => "a μ-variable",
            })),
        }
    }

    fn binder(&mut self, role: Role) -> Result<String, ParseError> {
        let pos = self.pos();
        let name = self.ident(role)?;
        if self.bound.contains(&name) {
            return Err(ParseError::Shadowing { pos, name });
        }
        Ok(name)
    }

    fn scoped<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        self.bound.push(name.to_string());
        let r = f(self);
        self.bound.pop();
        r
    }

    fn annotation(&mut self) -> Result<Option<Formula>, ParseError> {
        if *self.peek() == Tok::Colon {
            self.bump();
            Ok(Some(self.formula()?))
        } else {
            Ok(None)
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(Term::Var(self.ident(Role::Lambda)?)),
            Tok::Lambda => {
                self.bump();
                let x = self.binder(Role::Lambda)?;
                let ann = self.annotation()?;
                self.expect(Tok::Dot)?;
                let body = self.scoped(&x, |p| p.term())?;
                Ok(Term::abs(x, ann, body))
            }
            Tok::Mu => {
                self.bump();
                let a = self.binder(Role::Mu)?;
                let ann = self.annotation()?;
                self.expect(Tok::Dot)?;
                let body = self.scoped(&a, |p| p.term())?;
                Ok(Term::mu(a, ann, body))
            }
            Tok::LBracket => {
                self.bump();
                let a = self.ident(Role::Mu)?;
                self.expect(Tok::RBracket)?;
                Ok(Term::named(a, self.term()?))
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Term::pair(a, b))
            }
            Tok::In1 | Tok::In2 => {
                let side = if self.bump() == Tok::In1 { Side::Left } else { Side::Right };
                let ann = if *self.peek() == Tok::LBrace {
                    self.bump();
                    let f = self.formula()?;
                    self.expect(Tok::RBrace)?;
                    Some(f)
                } else {
                    None
                };
                Ok(Term::inj(side, self.term()?, ann))
            }
            Tok::LParen => {
                self.bump();
                let mut t = self.term()?;
                while *self.peek() != Tok::RParen {
                    let e = self.eterm()?;
                    t = Term::app(t, e);
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.error("a term")),
        }
    }

    fn eterm(&mut self) -> Result<ETerm, ParseError> {
        match self.peek() {
            Tok::P1 => {
                self.bump();
                Ok(ETerm::Proj(Side::Left))
            }
            Tok::P2 => {
                self.bump();
                Ok(ETerm::Proj(Side::Right))
            }
            Tok::LBracket if matches!(self.peek_at(1), Tok::Ident(_)) && *self.peek_at(2) == Tok::Dot => {
                self.bump();
                let l = self.branch()?;
                self.expect(Tok::Comma)?;
                let r = self.branch()?;
                self.expect(Tok::RBracket)?;
                Ok(ETerm::Case(l, r))
            }
            _ => Ok(ETerm::Arg(self.term()?)),
        }
    }

    fn branch(&mut self) -> Result<Branch, ParseError> {
        let x = self.binder(Role::Lambda)?;
        self.expect(Tok::Dot)?;
        let body = self.scoped(&x, |p| p.term())?;
        Ok(Branch::new(x, body))
    }

    // precedence: ~ > /\ > \/ > ->, all binary connectives right-associative
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(Formula::arrow(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if *self.peek() == Tok::Vee {
            self.bump();
            Ok(Formula::or(lhs, self.disjunction()?))
        } else {
            Ok(lhs)
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Wedge {
            self.bump();
            Ok(Formula::and(lhs, self.conjunction()?))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a single E-term (`p1`, `p2`, a case bracket or a term).
pub fn parse_eterm(text: &str) -> Result<ETerm, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.eterm()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("P")
    }

    #[test]
    fn parses_ex_falso_witness() {
        let t = parse_term("\\z:_|_. mu a:P. z").unwrap();
        assert_eq!(t, Term::abs("z", Some(Formula::Bottom), Term::mu("a", Some(p()), Term::var("z"))));
    }

    #[test]
    fn parses_eterm_forms() {
        assert_eq!(parse_term("(t p1)").unwrap(), Term::app(Term::var("t"), ETerm::Proj(Side::Left)));
        assert_eq!(
            parse_term("(w [x.u, y.v])").unwrap(),
            Term::var("w").case("x", Term::var("u"), "y", Term::var("v"))
        );
        // a named term in argument position is not a case bracket
        assert_eq!(
            parse_term("(f [a] y)").unwrap(),
            Term::apply(Term::var("f"), Term::named("a", Term::var("y")))
        );
        assert_eq!(
            parse_term("(f x y)").unwrap(),
            Term::apply(Term::apply(Term::var("f"), Term::var("x")), Term::var("y"))
        );
    }

    #[test]
    fn formula_precedence() {
        let f = parse_formula("~P \\/ P").unwrap();
        assert_eq!(f, Formula::or(Formula::neg(p()), p()));
        let f = parse_formula("(~P -> P) -> P").unwrap();
        assert_eq!(f, Formula::arrow(Formula::arrow(Formula::neg(p()), p()), p()));
        let f = parse_formula("P -> P -> P").unwrap();
        assert_eq!(f, Formula::arrow(p(), Formula::arrow(p(), p())));
        let f = parse_formula("P /\\ P \\/ P").unwrap();
        assert_eq!(f, Formula::or(Formula::and(p(), p()), p()));
        let f = parse_formula("~P /\\ P -> _|_").unwrap();
        assert_eq!(f, Formula::arrow(Formula::and(Formula::neg(p()), p()), Formula::Bottom));
    }

    #[test]
    fn injection_annotations() {
        let t = parse_term("in2{~P} mu a:P. [a] y").unwrap();
        assert_eq!(
            t,
            Term::inj(Side::Right, Term::mu("a", Some(p()), Term::named("a", Term::var("y"))), Some(Formula::neg(p())))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("(x").unwrap_err();
        assert!(matches!(e, ParseError::Unexpected { .. }));
        assert_eq!(e.pos().column, 3);
        let e = parse_term("\\x. \\x. x").unwrap_err();
        assert!(matches!(e, ParseError::Shadowing { .. }));
        let e = parse_term("\\a. mu b. [a] a").unwrap_err();
        assert!(matches!(e, ParseError::MixedNamespace { .. }));
        let e = parse_term("x $").unwrap_err();
        assert!(matches!(e, ParseError::BadChar { found: '$', .. }));
        let e = parse_term("x y").unwrap_err();
        assert_eq!(e.to_string(), "1:3: expected end of input, found identifier `y`");
        assert!(parse_term("mu").is_err());
    }

    #[test]
    fn sibling_binders_may_reuse_names() {
        assert!(parse_term("<\\x. x, \\x. x>").is_ok());
        assert!(parse_term("(w [x. x, x. x])").is_ok());
    }

    #[test]
    fn comments_are_skipped() {
        let t = parse_term("# identity\n\\x. x # done").unwrap();
        assert_eq!(t, Term::abs("x", None, Term::var("x")));
    }
}
