//! Formula pipeline: negation normal form, Skolemization, term-depth
//! reduction, relational Skolemization with functionality axioms, equality
//! elimination and the literal-weighted normal form of a knowledge base.

mod literal;
mod skolem;

use thiserror::Error;

use crate::logic::{Formula, Signature, SignatureError};

pub use literal::to_literal_weighted;
pub use skolem::{
    func_axioms, reduce_term_depth, relational_skolemize, skolemize, DepthReduction, RelationalSkolemResult,
    SkolemResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("expected a sentence; free variables: {0}")]
    NotASentence(String),
    #[error("expected a quantifier-free formula")]
    HasQuantifier,
    #[error("formula has term depth 0; nothing to reduce")]
    DepthZero,
    #[error("expected a function-free formula; found `{0}`")]
    NotRelational(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("{0}")]
    IllFormed(String),
}

pub(crate) fn require_sentence(f: &Formula) -> Result<(), TransformError> {
    let free = f.free_variables();
    if free.is_empty() {
        Ok(())
    } else {
        Err(TransformError::NotASentence(free.join(", ")))
    }
}

/// Negation normal form: only `∧`, `∨`, quantifiers, and negation directly
/// on atoms and equalities. Biconditionals are expanded.
pub fn nnf(f: &Formula) -> Formula {
    to_nnf(f, true)
}

fn to_nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::True | Formula::False => {
            if positive == matches!(f, Formula::True) {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Atom(..) | Formula::Eq(..) => {
            if positive {
                f.clone()
            } else {
                f.clone().not()
            }
        }
        Formula::Not(a) => to_nnf(a, !positive),
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (l, r) = (to_nnf(l, positive), to_nnf(r, positive));
            if matches!(f, Formula::And(..)) == positive {
                l.and(r)
            } else {
                l.or(r)
            }
        }
        Formula::Implies(l, r) => {
            if positive {
                to_nnf(l, false).or(to_nnf(r, true))
            } else {
                to_nnf(l, true).and(to_nnf(r, false))
            }
        }
        Formula::Iff(l, r) => {
            // a ↔ b  ≡ (a ∧ b) ∨ (¬a ∧ ¬b);  ¬(a ↔ b) ≡ (a ∧ ¬b) ∨ (¬a ∧ b)
            let (pl, nl) = (to_nnf(l, true), to_nnf(l, false));
            let (pr, nr) = (to_nnf(r, true), to_nnf(r, false));
            if positive {
                pl.and(pr).or(nl.and(nr))
            } else {
                pl.and(nr).or(nl.and(pr))
            }
        }
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let body = to_nnf(b, positive);
            if matches!(f, Formula::Forall(..)) == positive {
                Formula::forall(v.clone(), body)
            } else {
                Formula::exists(v.clone(), body)
            }
        }
    }
}

/// Replaces every equality `t₁ = t₂` by `E(t₁, t₂)`, declaring `E/2` in `sig`.
pub fn eliminate_equality(
    f: &Formula,
    e: &str,
    sig: &mut Signature,
) -> Result<Formula, TransformError> {
    sig.add_relation(e, 2)?;
    Ok(replace_eq(f, e))
}

fn replace_eq(f: &Formula, e: &str) -> Formula {
    match f {
        Formula::Eq(l, r) => Formula::atom(e, vec![l.clone(), r.clone()]),
        Formula::True | Formula::False | Formula::Atom(..) => f.clone(),
        Formula::Not(a) => replace_eq(a, e).not(),
        Formula::And(l, r) => replace_eq(l, e).and(replace_eq(r, e)),
        Formula::Or(l, r) => replace_eq(l, e).or(replace_eq(r, e)),
        Formula::Implies(l, r) => replace_eq(l, e).implies(replace_eq(r, e)),
        Formula::Iff(l, r) => replace_eq(l, e).iff(replace_eq(r, e)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), replace_eq(b, e)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), replace_eq(b, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn sig() -> Signature {
        Signature::with_relations([("u", 2), ("R", 1)])
    }

    #[test]
    fn nnf_pushes_negations_to_atoms() {
        let f = parse_formula("!(forall x. (R(x) -> exists y. u(x,y)))", &sig()).unwrap();
        assert_eq!(nnf(&f).to_string(), "exists x. R(x) & (forall y. !u(x, y))");
        let g = parse_formula("!(R(1) <-> R(2))", &sig()).unwrap();
        assert_eq!(nnf(&g).to_string(), "R(1) & !R(2) | !R(1) & R(2)");
    }

    #[test]
    fn equality_becomes_relation() {
        let mut s = sig();
        let f = parse_formula("forall x, y. (y != x | y = y)", &s).unwrap();
        let g = eliminate_equality(&f, "_E", &mut s).unwrap();
        assert_eq!(g.to_string(), "forall x. forall y. !_E(y, x) | _E(y, y)");
        assert!(!g.has_equality());
        assert!(eliminate_equality(&f, "u", &mut sig()).is_ok());
        assert!(eliminate_equality(&f, "R", &mut sig()).is_err());
    }
}
