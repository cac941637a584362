//! Recursive-descent parser for the formula and knowledge-base text format.
//!
//! Precedence from loosest to tightest: `<->`, `->` (right associative), `|`,
//! `&`, `!`. Quantifiers `forall x. body` / `exists x y. body` extend as far
//! right as possible. `t1 != t2` is sugar for `!(t1 = t2)`.

use thiserror::Error;

use super::ast::{Formula, Term};
use super::signature::{Signature, SymbolKind};
use super::subst::normalize_bound;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("arity mismatch at offset {offset}: `{symbol}` expects {expected} argument(s), found {found}")]
    Arity {
        offset: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("undeclared symbol `{symbol}` at offset {offset}")]
    Undeclared { offset: usize, symbol: String },
    #[error("`{symbol}` at offset {offset} is a {kind:?}, not usable here")]
    WrongKind {
        offset: usize,
        symbol: String,
        kind: SymbolKind,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::Undeclared { offset, .. }
            | ParseError::WrongKind { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equals,
    NotEquals,
    Forall,
    Exists,
    True,
    False,
    Eof,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'=' => Tok::Equals,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::NotEquals
            }
            b'!' => Tok::Bang,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DArrow
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..=i];
                let value = text.parse::<u32>().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("domain element `{text}` out of range"),
                })?;
                Tok::Num(value)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || matches!(bytes[i + 1], b'_' | b'\''))
                {
                    i += 1;
                }
                match &src[start..=i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{}`", src[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'s Signature,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let mut vars = Vec::new();
                loop {
                    match self.bump() {
                        Tok::Ident(v) => {
                            if self.sig.contains(&v) {
                                self.pos -= 1;
                                return self.error(format!("`{v}` is a declared symbol, not a variable"));
                            }
                            vars.push(v)
                        }
                        _ => {
                            self.pos -= 1;
                            return self.error("expected variable name");
                        }
                    }
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::Dot => break,
                        Tok::Ident(_) => {}
                        _ => return self.error("expected `.` after quantified variables"),
                    }
                }
                self.expect(Tok::Dot, "`.`")?;
                let body = self.formula()?;
                Ok(vars.into_iter().rev().fold(body, |acc, v| {
                    if universal {
                        Formula::forall(v, acc)
                    } else {
                        Formula::exists(v, acc)
                    }
                }))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) if self.sig.lookup(&name).map(|s| s.0) == Some(SymbolKind::Relation) => {
                let at = self.offset();
                self.bump();
                let arity = self.sig.relation_arity(&name).unwrap();
                let args = if *self.peek() == Tok::LParen {
                    self.arguments()?
                } else {
                    Vec::new()
                };
                if args.len() != arity {
                    return Err(ParseError::Arity {
                        offset: at,
                        symbol: name,
                        expected: arity,
                        found: args.len(),
                    });
                }
                Ok(Formula::Atom(name, args))
            }
            Tok::Ident(name) if self.sig.lookup(&name).is_none() && *self.peek_at(1) == Tok::LParen => {
                Err(ParseError::Undeclared {
                    offset: self.offset(),
                    symbol: name,
                })
            }
            Tok::Ident(_) | Tok::Num(_) => {
                let lhs = self.term()?;
                match self.bump() {
                    Tok::Equals => Ok(Formula::Eq(lhs, self.term()?)),
                    Tok::NotEquals => Ok(Formula::Eq(lhs, self.term()?).not()),
                    _ => {
                        self.pos -= 1;
                        self.error("expected `=` or `!=` after term")
                    }
                }
            }
            Tok::Eof => self.error("unexpected end of input"),
            _ => self.error("expected formula"),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return self.error("expected `,` or `)`"),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(0) => Err(ParseError::Syntax {
                offset: at,
                message: "domain elements start at 1".into(),
            }),
            Tok::Num(d) => Ok(Term::Elem(d)),
            Tok::Ident(name) => match self.sig.lookup(&name) {
                Some((SymbolKind::Function, arity)) => {
                    let args = if *self.peek() == Tok::LParen {
                        self.arguments()?
                    } else {
                        Vec::new()
                    };
                    if args.len() != arity {
                        return Err(ParseError::Arity {
                            offset: at,
                            symbol: name,
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    Ok(Term::App(name, args))
                }
                Some((SymbolKind::Relation, _)) => Err(ParseError::WrongKind {
                    offset: at,
                    symbol: name,
                    kind: SymbolKind::Relation,
                }),
                None if *self.peek() == Tok::LParen => Err(ParseError::Undeclared {
                    offset: at,
                    symbol: name,
                }),
                None => Ok(Term::Var(name)),
            },
            _ => {
                self.pos -= 1;
                self.error("expected term")
            }
        }
    }
}

/// Parses a formula over `sig` and normalizes bound variable names.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let f = parse_formula_raw(text, sig)?;
    Ok(normalize_bound(&f))
}

/// Parses without bound-variable normalization.
pub fn parse_formula_raw(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}
