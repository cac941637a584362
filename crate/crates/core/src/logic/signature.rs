use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Relation,
    Function,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("symbol `{name}` already declared as a {existing:?}/{arity}")]
    Clash {
        name: String,
        existing: SymbolKind,
        arity: usize,
    },
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
}

/// Relation and function symbols with their arities.
///
/// Symbols keep declaration order, which fixes the ground-atom layout used by
/// interpretations. Names are unique across both kinds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    relations: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    index: HashMap<String, (SymbolKind, usize)>,
    fresh: usize,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a relational signature from `(name, arity)` pairs.
    pub fn with_relations<'a>(rels: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        let mut sig = Self::new();
        for (name, arity) in rels {
            sig.add_relation(name, arity).expect("distinct relation names");
        }
        sig
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.add(name, SymbolKind::Relation, arity)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.add(name, SymbolKind::Function, arity)
    }

    fn add(&mut self, name: &str, kind: SymbolKind, arity: usize) -> Result<(), SignatureError> {
        if !is_identifier(name) {
            return Err(SignatureError::InvalidName(name.to_string()));
        }
        match self.index.get(name) {
            Some(&(k, a)) if k == kind && a == arity => Ok(()),
            Some(&(existing, arity)) => Err(SignatureError::Clash {
                name: name.to_string(),
                existing,
                arity,
            }),
            None => {
                self.index.insert(name.to_string(), (kind, arity));
                match kind {
                    SymbolKind::Relation => self.relations.push((name.to_string(), arity)),
                    SymbolKind::Function => self.functions.push((name.to_string(), arity)),
                }
                Ok(())
            }
        }
    }

    pub fn remove_function(&mut self, name: &str) {
        if let Some((SymbolKind::Function, _)) = self.index.get(name) {
            self.index.remove(name);
            self.functions.retain(|(n, _)| n != name);
        }
    }

    pub fn lookup(&self, name: &str) -> Option<(SymbolKind, usize)> {
        self.index.get(name).copied()
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some(&(SymbolKind::Relation, a)) => Some(a),
            _ => None,
        }
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some(&(SymbolKind::Function, a)) => Some(a),
            _ => None,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn max_relation_arity(&self) -> usize {
        self.relations.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }

    /// Returns `base` when unused, otherwise `base` followed by the first free
    /// counter value.
    pub fn fresh_like(&mut self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        self.fresh_numbered(base)
    }

    /// Returns `stem` followed by the signature's counter, skipping used names.
    /// The counter advances on every call, so results are deterministic for a
    /// given sequence of calls.
    pub fn fresh_numbered(&mut self, stem: &str) -> String {
        loop {
            let candidate = format!("{stem}{}", self.fresh);
            self.fresh += 1;
            if !self.contains(&candidate) {
                return candidate;
            }
        }
    }

    /// Union of two signatures; fails on conflicting declarations.
    pub fn merged(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        for (n, a) in &other.relations {
            out.add_relation(n, *a)?;
        }
        for (n, a) in &other.functions {
            out.add_function(n, *a)?;
        }
        out.fresh = out.fresh.max(other.fresh);
        Ok(out)
    }

    /// Keeps only the listed relations (in this signature's order) and no functions.
    pub fn restricted_to(&self, relations: &[String]) -> Signature {
        let mut out = Signature::new();
        for (n, a) in &self.relations {
            if relations.contains(n) {
                out.add_relation(n, *a).expect("names already unique");
            }
        }
        out.fresh = self.fresh;
        out
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !matches!(s, "forall" | "exists" | "true" | "false" | "declare")
}
