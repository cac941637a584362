//! Weighted knowledge bases and their line-oriented text format.
//!
//! ```text
//! # pairing relation
//! declare rel u/2
//! declare rel a/0
//! forall x. exists y. (y != x & u(x,y)) : 0
//! u(x,y) : 3/2
//! ```

use std::fmt;

use thiserror::Error;

use crate::logic::{normalize_bound, parse_formula, Formula, ParseError, Signature, SignatureError, SymbolKind, Term};
use crate::weight::{ExactWeight, WeightError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KbError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Weight { line: usize, source: WeightError },
    #[error("line {line}: {source}")]
    Signature { line: usize, source: SignatureError },
    #[error("line {line}: malformed declaration (expected `declare rel name/arity` or `declare fun name/arity`)")]
    Declaration { line: usize },
    #[error("line {line}: missing `: weight`")]
    MissingWeight { line: usize },
    #[error("line {line}: formula files do not carry weights")]
    UnexpectedWeight { line: usize },
    #[error("formula is not well-formed over the signature: {0}")]
    IllFormed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedItem {
    pub formula: Formula,
    pub weight: ExactWeight,
}

/// An ordered list of weighted formulas over a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedKB {
    signature: Signature,
    items: Vec<WeightedItem>,
}

impl WeightedKB {
    pub fn new(signature: Signature) -> Self {
        WeightedKB {
            signature,
            items: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn items(&self) -> &[WeightedItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Appends a weighted formula after checking it against the signature.
    /// Bound variables are normalized so that rendering and re-parsing is the identity.
    pub fn push(&mut self, formula: Formula, weight: ExactWeight) -> Result<(), KbError> {
        check_well_formed(&formula, &self.signature).map_err(KbError::IllFormed)?;
        self.items.push(WeightedItem {
            formula: normalize_bound(&formula),
            weight,
        });
        Ok(())
    }

    pub fn with_item(&self, formula: Formula, weight: ExactWeight) -> Result<Self, KbError> {
        let mut kb = self.clone();
        kb.push(formula, weight)?;
        Ok(kb)
    }

    pub fn weights(&self) -> Vec<ExactWeight> {
        self.items.iter().map(|i| i.weight.clone()).collect()
    }

    /// Same formulas with the weights replaced, in order.
    pub fn with_weights(&self, weights: &[ExactWeight]) -> Self {
        assert_eq!(weights.len(), self.items.len(), "one weight per formula");
        let mut kb = self.clone();
        for (item, w) in kb.items.iter_mut().zip(weights) {
            item.weight = w.clone();
        }
        kb
    }

    /// Extends the signature; existing declarations must agree.
    pub fn extend_signature(&mut self, other: &Signature) -> Result<(), SignatureError> {
        self.signature = self.signature.merged(other)?;
        Ok(())
    }

    pub fn is_function_free(&self) -> bool {
        self.items.iter().all(|i| !i.formula.has_function())
    }
}

impl fmt::Display for WeightedKB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_declarations(f, &self.signature)?;
        for item in &self.items {
            writeln!(f, "{} : {}", item.formula, item.weight)?;
        }
        Ok(())
    }
}

fn write_declarations(f: &mut fmt::Formatter<'_>, sig: &Signature) -> fmt::Result {
    for (name, arity) in sig.relations() {
        writeln!(f, "declare rel {name}/{arity}")?;
    }
    for (name, arity) in sig.functions() {
        writeln!(f, "declare fun {name}/{arity}")?;
    }
    Ok(())
}

/// Checks symbol declarations and arities.
pub fn check_well_formed(f: &Formula, sig: &Signature) -> Result<(), String> {
    fn term_ok(t: &Term, sig: &Signature) -> Result<(), String> {
        match t {
            Term::Var(v) if v.is_empty() => Err("empty variable name".into()),
            Term::Var(_) => Ok(()),
            Term::Elem(0) => Err("domain elements start at 1".into()),
            Term::Elem(_) => Ok(()),
            Term::App(name, args) => {
                match sig.lookup(name) {
                    Some((SymbolKind::Function, a)) if a == args.len() => {}
                    Some((SymbolKind::Function, a)) => {
                        return Err(format!("`{name}` expects {a} argument(s), found {}", args.len()))
                    }
                    _ => return Err(format!("undeclared function `{name}`")),
                }
                args.iter().try_for_each(|a| term_ok(a, sig))
            }
        }
    }
    let mut result = Ok(());
    f.visit(&mut |g| {
        if result.is_err() {
            return;
        }
        result = match g {
            Formula::Atom(r, args) => match sig.relation_arity(r) {
                Some(a) if a == args.len() => args.iter().try_for_each(|t| term_ok(t, sig)),
                Some(a) => Err(format!("`{r}` expects {a} argument(s), found {}", args.len())),
                None => Err(format!("undeclared relation `{r}`")),
            },
            Formula::Eq(l, r) => term_ok(l, sig).and_then(|_| term_ok(r, sig)),
            _ => Ok(()),
        };
    });
    result
}

/// Declarations plus formulas, with an optional weight per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub signature: Signature,
    /// `(line number, formula, weight)`
    pub lines: Vec<(usize, Formula, Option<ExactWeight>)>,
}

pub fn parse_document(text: &str) -> Result<Document, KbError> {
    let mut signature = Signature::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("declare") {
            if rest.starts_with(char::is_whitespace) {
                parse_declaration(rest, &mut signature).ok_or(KbError::Declaration { line })?
                    .map_err(|source| KbError::Signature { line, source })?;
                continue;
            }
        }
        let (formula_text, weight) = match content.rsplit_once(':') {
            Some((f, w)) => (
                f,
                Some(w.parse::<ExactWeight>().map_err(|source| KbError::Weight { line, source })?),
            ),
            None => (content, None),
        };
        let formula = parse_formula(formula_text, &signature).map_err(|e| KbError::Parse {
            line,
            source: e,
        })?;
        lines.push((line, formula, weight));
    }
    Ok(Document { signature, lines })
}

fn parse_declaration(rest: &str, sig: &mut Signature) -> Option<Result<(), SignatureError>> {
    let mut parts = rest.split_whitespace();
    let kind = parts.next()?;
    let spec = parts.next()?;
    if parts.next().is_some() {
        return None;
    }
    let (name, arity) = spec.split_once('/')?;
    let arity: usize = arity.parse().ok()?;
    Some(match kind {
        "rel" => sig.add_relation(name, arity),
        "fun" => sig.add_function(name, arity),
        _ => return None,
    })
}

/// Parses a knowledge base; every formula line needs a weight.
pub fn parse_kb(text: &str) -> Result<WeightedKB, KbError> {
    let doc = parse_document(text)?;
    let mut kb = WeightedKB::new(doc.signature);
    for (line, formula, weight) in doc.lines {
        let weight = weight.ok_or(KbError::MissingWeight { line })?;
        kb.push(formula, weight)?;
    }
    Ok(kb)
}

/// A sentence file: declarations plus one or more formulas, read as their conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaFile {
    pub signature: Signature,
    pub formula: Formula,
}

pub fn parse_formula_file(text: &str) -> Result<FormulaFile, KbError> {
    let doc = parse_document(text)?;
    let mut parts = Vec::new();
    for (line, f, w) in doc.lines {
        if w.is_some() {
            return Err(KbError::UnexpectedWeight { line });
        }
        parts.push(f);
    }
    Ok(FormulaFile {
        signature: doc.signature,
        formula: normalize_bound(&Formula::conjunction(parts)),
    })
}

impl fmt::Display for FormulaFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_declarations(f, &self.signature)?;
        writeln!(f, "{}", self.formula)
    }
}
