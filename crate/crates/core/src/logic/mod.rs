//! First-order syntax: terms, formulas, signatures, the text format, and the
//! syntactic utilities the transformations build on.

mod ast;
mod fragment;
mod parser;
mod render;
mod signature;
mod subst;

pub use ast::{Formula, Term};
pub use fragment::{classify_fragment, Fragment};
pub use parser::{parse_formula, parse_formula_raw, ParseError};
pub use signature::{Signature, SignatureError, SymbolKind};
pub use subst::{fresh_variable, normalize_bound, replace_terms, substitute, substitute_term};

/// Free variables of `f` in first-occurrence order.
pub fn free_variables(f: &Formula) -> Vec<String> {
    f.free_variables()
}

/// Maximal nesting depth of function symbols in `f`.
pub fn term_depth(f: &Formula) -> usize {
    f.term_depth()
}
