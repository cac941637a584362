use crate::kb::WeightedKB;
use crate::logic::{Formula, Term};
use crate::weight::ExactWeight;

use super::TransformError;

/// Rewrites a knowledge base so that every weighted (non-zero) item is a
/// literal: each compound `φ(x̄) : w` becomes the hard constraint
/// `¬(φ(x̄) ↔ F(x̄)) : 0` plus `F(x̄) : w` for a fresh relation `F`.
///
/// `F` is forced to coincide with `φ`, so `Z` and every probability over the
/// original signature are unchanged.
pub fn to_literal_weighted(kb: &WeightedKB) -> Result<WeightedKB, TransformError> {
    let mut signature = kb.signature().clone();
    let mut items: Vec<(Formula, ExactWeight)> = Vec::new();
    let mut counter = 1;
    for item in kb.items() {
        if item.weight.is_zero() || item.formula.is_literal() {
            items.push((item.formula.clone(), item.weight.clone()));
            continue;
        }
        let vars = item.formula.free_variables();
        let name = loop {
            let candidate = format!("_F{counter}");
            counter += 1;
            if !signature.contains(&candidate) {
                break candidate;
            }
        };
        signature.add_relation(&name, vars.len())?;
        let fresh = Formula::atom(name, vars.iter().map(Term::var).collect());
        items.push((item.formula.clone().iff(fresh.clone()).not(), ExactWeight::zero()));
        items.push((fresh, item.weight.clone()));
    }
    let mut out = WeightedKB::new(signature);
    for (f, w) in items {
        out.push(f, w).map_err(|e| TransformError::IllFormed(e.to_string()))?;
    }
    Ok(out)
}
