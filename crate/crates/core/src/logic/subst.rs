use std::collections::{HashMap, HashSet};

use super::ast::{Formula, Term};

/// Picks a name derived from `base` (by appending primes) that is not in `taken`.
pub fn fresh_variable(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Renames bound variables so that every quantifier binds a distinct name and
/// no bound name coincides with a free variable. Already-normalized formulas
/// are returned unchanged.
pub fn normalize_bound(f: &Formula) -> Formula {
    let mut taken: HashSet<String> = f.all_variables();
    let mut used: HashSet<String> = f.free_variables().into_iter().collect();
    normalize_rec(f, &mut HashMap::new(), &mut used, &mut taken)
}

fn normalize_rec(
    f: &Formula,
    env: &mut HashMap<String, String>,
    used: &mut HashSet<String>,
    taken: &mut HashSet<String>,
) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(r, args) => {
            Formula::Atom(r.clone(), args.iter().map(|t| rename_term(t, env)).collect())
        }
        Formula::Eq(l, r) => Formula::Eq(rename_term(l, env), rename_term(r, env)),
        Formula::Not(a) => normalize_rec(a, env, used, taken).not(),
        Formula::And(l, r) => {
            normalize_rec(l, env, used, taken).and(normalize_rec(r, env, used, taken))
        }
        Formula::Or(l, r) => normalize_rec(l, env, used, taken).or(normalize_rec(r, env, used, taken)),
        Formula::Implies(l, r) => {
            normalize_rec(l, env, used, taken).implies(normalize_rec(r, env, used, taken))
        }
        Formula::Iff(l, r) => {
            normalize_rec(l, env, used, taken).iff(normalize_rec(r, env, used, taken))
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let new = if used.contains(v) {
                let n = fresh_variable(v, &taken.union(used).cloned().collect());
                taken.insert(n.clone());
                n
            } else {
                v.clone()
            };
            used.insert(new.clone());
            let previous = env.insert(v.clone(), new.clone());
            let body = normalize_rec(body, env, used, taken);
            match previous {
                Some(p) => env.insert(v.clone(), p),
                None => env.remove(v),
            };
            match f {
                Formula::Forall(..) => Formula::forall(new, body),
                _ => Formula::exists(new, body),
            }
        }
    }
}

fn rename_term(t: &Term, env: &HashMap<String, String>) -> Term {
    match t {
        Term::Var(v) => Term::Var(env.get(v).cloned().unwrap_or_else(|| v.clone())),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_term(a, env)).collect()),
        Term::Elem(_) => t.clone(),
    }
}

pub fn substitute_term(t: &Term, binding: &HashMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => {
            Term::App(f.clone(), args.iter().map(|a| substitute_term(a, binding)).collect())
        }
        Term::Elem(_) => t.clone(),
    }
}

/// Simultaneous capture-avoiding substitution of free variables.
///
/// A quantifier whose variable occurs in a substituted term is renamed by
/// appending primes, e.g. `(forall y. R(x,y))[x -> y]` gives `forall y'. R(y,y')`.
pub fn substitute(f: &Formula, binding: &HashMap<String, Term>) -> Formula {
    if binding.is_empty() {
        return f.clone();
    }
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(r, args) => Formula::Atom(
            r.clone(),
            args.iter().map(|t| substitute_term(t, binding)).collect(),
        ),
        Formula::Eq(l, r) => Formula::Eq(substitute_term(l, binding), substitute_term(r, binding)),
        Formula::Not(a) => substitute(a, binding).not(),
        Formula::And(l, r) => substitute(l, binding).and(substitute(r, binding)),
        Formula::Or(l, r) => substitute(l, binding).or(substitute(r, binding)),
        Formula::Implies(l, r) => substitute(l, binding).implies(substitute(r, binding)),
        Formula::Iff(l, r) => substitute(l, binding).iff(substitute(r, binding)),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let mut inner: HashMap<String, Term> = binding
                .iter()
                .filter(|(k, _)| *k != v)
                .map(|(k, t)| (k.clone(), t.clone()))
                .collect();
            let body_free = body.free_variables();
            let captures = inner
                .iter()
                .any(|(k, t)| body_free.contains(k) && t.mentions_var(v));
            let (var, body) = if captures {
                let mut taken = body.all_variables();
                for (k, t) in &inner {
                    taken.insert(k.clone());
                    let mut vs = Vec::new();
                    t.collect_vars(&mut HashSet::new(), &mut vs);
                    taken.extend(vs);
                }
                let fresh = fresh_variable(v, &taken);
                inner.insert(v.clone(), Term::Var(fresh.clone()));
                (fresh, substitute(body, &inner))
            } else {
                (v.clone(), substitute(body, &inner))
            };
            match f {
                Formula::Forall(..) => Formula::forall(var, body),
                _ => Formula::exists(var, body),
            }
        }
    }
}

/// Replaces whole terms (not just variables) in a quantifier-free formula.
/// Matching is outermost-first; arguments of unmatched applications are
/// rewritten recursively.
pub fn replace_terms(f: &Formula, map: &HashMap<Term, Term>) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(r, args) => {
            Formula::Atom(r.clone(), args.iter().map(|t| replace_in_term(t, map)).collect())
        }
        Formula::Eq(l, r) => Formula::Eq(replace_in_term(l, map), replace_in_term(r, map)),
        Formula::Not(a) => replace_terms(a, map).not(),
        Formula::And(l, r) => replace_terms(l, map).and(replace_terms(r, map)),
        Formula::Or(l, r) => replace_terms(l, map).or(replace_terms(r, map)),
        Formula::Implies(l, r) => replace_terms(l, map).implies(replace_terms(r, map)),
        Formula::Iff(l, r) => replace_terms(l, map).iff(replace_terms(r, map)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), replace_terms(b, map)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), replace_terms(b, map)),
    }
}

fn replace_in_term(t: &Term, map: &HashMap<Term, Term>) -> Term {
    if let Some(r) = map.get(t) {
        return r.clone();
    }
    match t {
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| replace_in_term(a, map)).collect()),
        _ => t.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn plain_renaming() {
        let f = Formula::atom_vars("R", &["x", "y"]);
        let b = HashMap::from([("x".to_string(), v("z"))]);
        assert_eq!(substitute(&f, &b), Formula::atom_vars("R", &["z", "y"]));
    }

    #[test]
    fn capture_is_avoided() {
        let f = Formula::forall("y", Formula::atom_vars("R", &["x", "y"]));
        let b = HashMap::from([("x".to_string(), v("y"))]);
        assert_eq!(
            substitute(&f, &b),
            Formula::forall("y'", Formula::atom_vars("R", &["y", "y'"]))
        );
    }

    #[test]
    fn bound_variables_are_not_substituted() {
        let f = Formula::forall("x", Formula::atom_vars("R", &["x"]));
        let b = HashMap::from([("x".to_string(), v("z"))]);
        assert_eq!(substitute(&f, &b), f);
    }

    #[test]
    fn term_replacement() {
        let fx = Term::app("f", vec![v("x")]);
        let f = Formula::atom("u", vec![v("x"), fx.clone()]);
        let map = HashMap::from([(fx, v("z"))]);
        assert_eq!(replace_terms(&f, &map), Formula::atom_vars("u", &["x", "z"]));
    }

    #[test]
    fn normalization_separates_bound_names() {
        // forall x. R(x) & forall x. S(x), with free x elsewhere
        let f = Formula::atom_vars("T", &["x"]).and(
            Formula::forall("x", Formula::atom_vars("R", &["x"]))
                .and(Formula::forall("x", Formula::atom_vars("S", &["x"]))),
        );
        let g = normalize_bound(&f);
        let expected = Formula::atom_vars("T", &["x"]).and(
            Formula::forall("x'", Formula::atom_vars("R", &["x'"]))
                .and(Formula::forall("x''", Formula::atom_vars("S", &["x''"]))),
        );
        assert_eq!(g, expected);
        assert_eq!(normalize_bound(&g), g);
    }
}
