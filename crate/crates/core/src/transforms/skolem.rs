use std::collections::{HashMap, HashSet};

use crate::logic::{fresh_variable, normalize_bound, replace_terms, substitute_term, Formula, Signature, SymbolKind, Term};

use super::{nnf, require_sentence, TransformError};

/// Quantifier-free Skolem normal form of a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkolemResult {
    /// Quantifier-free; implicitly universally closed over `universal_vars`.
    pub matrix: Formula,
    /// Universally quantified variables, in prefix order.
    pub universal_vars: Vec<String>,
    /// Skolem functions introduced, `(name, arity)`.
    pub new_functions: Vec<(String, usize)>,
    /// Input signature extended by the Skolem functions.
    pub signature: Signature,
}

impl SkolemResult {
    /// `∀x̄ matrix`.
    pub fn sentence(&self) -> Formula {
        Formula::forall_many(&self.universal_vars, self.matrix.clone())
    }
}

/// Replaces every existential by a fresh function of the universals in
/// whose scope it occurs (after conversion to negation normal form).
pub fn skolemize(sentence: &Formula, sig: &Signature) -> Result<SkolemResult, TransformError> {
    require_sentence(sentence)?;
    let mut out = SkolemResult {
        matrix: Formula::True,
        universal_vars: Vec::new(),
        new_functions: Vec::new(),
        signature: sig.clone(),
    };
    let prepared = nnf(&normalize_bound(sentence));
    let mut scope = Vec::new();
    out.matrix = strip(&prepared, &mut scope, &mut HashMap::new(), &mut out);
    Ok(out)
}

fn strip(
    f: &Formula,
    scope: &mut Vec<String>,
    binding: &mut HashMap<String, Term>,
    out: &mut SkolemResult,
) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(r, args) => Formula::Atom(r.clone(), args.iter().map(|t| substitute_term(t, binding)).collect()),
        Formula::Eq(l, r) => Formula::Eq(substitute_term(l, binding), substitute_term(r, binding)),
        Formula::Not(a) => strip(a, scope, binding, out).not(),
        Formula::And(l, r) => strip(l, scope, binding, out).and(strip(r, scope, binding, out)),
        Formula::Or(l, r) => strip(l, scope, binding, out).or(strip(r, scope, binding, out)),
        Formula::Implies(..) | Formula::Iff(..) => unreachable!("input is in negation normal form"),
        Formula::Forall(v, body) => {
            scope.push(v.clone());
            out.universal_vars.push(v.clone());
            let m = strip(body, scope, binding, out);
            scope.pop();
            m
        }
        Formula::Exists(v, body) => {
            let name = out
                .signature
                .fresh_numbered(&format!("_sk{}", v.trim_end_matches('\'')));
            out.signature
                .add_function(&name, scope.len())
                .expect("fresh name is unused");
            out.new_functions.push((name.clone(), scope.len()));
            let term = Term::app(name, scope.iter().map(Term::var).collect());
            binding.insert(v.clone(), term);
            let m = strip(body, scope, binding, out);
            binding.remove(v);
            m
        }
    }
}

/// One step of term-depth reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReduction {
    /// `⋀ R^{f_i}(x̄_i, z_i) → φ[z_i / f_i(x̄_i)]`
    pub formula: Formula,
    /// `(f_i(x̄_i), z_i)` in first-occurrence order.
    pub replaced: Vec<(Term, String)>,
    /// Relations declared by this step (relations reused from earlier steps are not listed).
    pub new_relations: Vec<(String, usize)>,
}

/// Name of the relation standing for the graph of `f`.
fn graph_relation(f: &str, arity: usize, sig: &mut Signature) -> (String, bool) {
    let base = format!("_Rsk{f}");
    match sig.lookup(&base) {
        Some((SymbolKind::Relation, a)) if a == arity => (base, false),
        None => {
            sig.add_relation(&base, arity).expect("unused name");
            (base, true)
        }
        Some(_) => {
            let name = sig.fresh_numbered(&base);
            sig.add_relation(&name, arity).expect("fresh name is unused");
            (name, true)
        }
    }
}

/// Lowers the term depth of a quantifier-free formula by one.
///
/// Every distinct depth-1 term `f(x̄)` (left-to-right first occurrence) is
/// replaced by a fresh variable `z`, guarded by the graph atom `R^f(x̄, z)`.
/// Function symbols that no longer occur are removed from `sig`.
pub fn reduce_term_depth(f: &Formula, sig: &mut Signature) -> Result<DepthReduction, TransformError> {
    if f.has_quantifier() {
        return Err(TransformError::HasQuantifier);
    }
    if f.term_depth() == 0 {
        return Err(TransformError::DepthZero);
    }
    let mut terms: Vec<Term> = Vec::new();
    f.visit_terms(&mut |t| collect_depth_one(t, &mut terms));

    let mut taken: HashSet<String> = f.all_variables();
    let mut map = HashMap::new();
    let mut guards = Vec::new();
    let mut replaced = Vec::new();
    let mut new_relations = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let z = fresh_variable(&format!("z{}", i + 1), &taken);
        taken.insert(z.clone());
        let Term::App(fname, args) = t else { unreachable!() };
        let (rel, fresh) = graph_relation(fname, args.len() + 1, sig);
        if fresh {
            new_relations.push((rel.clone(), args.len() + 1));
        }
        let mut rel_args = args.clone();
        rel_args.push(Term::var(z.clone()));
        guards.push(Formula::atom(rel, rel_args));
        map.insert(t.clone(), Term::var(z.clone()));
        replaced.push((t.clone(), z));
    }
    let formula = Formula::conjunction(guards).implies(replace_terms(f, &map));
    let remaining: HashSet<String> = function_symbols(&formula);
    for (t, _) in &replaced {
        if let Term::App(name, _) = t {
            if !remaining.contains(name) {
                sig.remove_function(name);
            }
        }
    }
    Ok(DepthReduction {
        formula,
        replaced,
        new_relations,
    })
}

fn collect_depth_one(t: &Term, out: &mut Vec<Term>) {
    if let Term::App(_, args) = t {
        if t.depth() == 1 {
            if !out.contains(t) {
                out.push(t.clone());
            }
        } else {
            args.iter().for_each(|a| collect_depth_one(a, out));
        }
    }
}

fn function_symbols(f: &Formula) -> HashSet<String> {
    fn walk(t: &Term, out: &mut HashSet<String>) {
        if let Term::App(name, args) = t {
            out.insert(name.clone());
            args.iter().for_each(|a| walk(a, out));
        }
    }
    let mut out = HashSet::new();
    f.visit_terms(&mut |t| walk(t, &mut out));
    out
}

/// Function-free normal form of a relational sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalSkolemResult {
    /// `φ⁺(x̄, z̄)`: quantifier- and function-free, implicitly universally closed.
    pub matrix: Formula,
    /// Free variables of the matrix in first-occurrence order.
    pub variables: Vec<String>,
    /// Graph relations `R^f`, arity `k + 1` for a `k`-ary `f`.
    pub new_relations: Vec<(String, usize)>,
    /// Functionality and totality of every graph relation.
    pub func_axioms: Vec<Formula>,
    /// Input signature plus the graph relations (Skolem functions removed).
    pub signature: Signature,
    /// Number of depth-reduction steps performed.
    pub steps: usize,
}

impl RelationalSkolemResult {
    /// `Func ∧ ∀x̄ z̄ φ⁺(x̄, z̄)`, satisfiable over `{1..n}` iff the input is.
    pub fn sentence(&self) -> Formula {
        let body = Formula::forall_many(&self.variables, self.matrix.clone());
        Formula::conjunction(self.func_axioms.iter().cloned().chain(std::iter::once(body)))
    }
}

/// The two sentences making a `(k+1)`-ary relation the graph of a total function:
/// `∀x̄ y y' (R(x̄,y) ∧ R(x̄,y') → y = y')` and `∀x̄ ∃y R(x̄,y)`.
pub fn func_axioms(rel: &str, arity: usize) -> [Formula; 2] {
    assert!(arity >= 1, "graph relations have arity at least 1");
    let xs: Vec<String> = (1..arity).map(|i| format!("x{i}")).collect();
    let args = |last: &str| {
        let mut v: Vec<Term> = xs.iter().map(Term::var).collect();
        v.push(Term::var(last));
        v
    };
    let mut functional_vars = xs.clone();
    functional_vars.extend(["y".to_string(), "y'".to_string()]);
    let functional = Formula::forall_many(
        &functional_vars,
        Formula::atom(rel, args("y"))
            .and(Formula::atom(rel, args("y'")))
            .implies(Formula::eq(Term::var("y"), Term::var("y'"))),
    );
    let total = Formula::forall_many(&xs, Formula::exists("y", Formula::atom(rel, args("y"))));
    [functional, total]
}

/// Skolemizes, then applies [`reduce_term_depth`] until no function
/// symbols remain, and adds the functionality axioms of every graph relation.
pub fn relational_skolemize(sentence: &Formula, sig: &Signature) -> Result<RelationalSkolemResult, TransformError> {
    let mut found = None;
    sentence.visit_terms(&mut |t| {
        if let (None, Term::App(f, _)) = (&found, t) {
            found = Some(f.clone());
        }
    });
    if let Some(f) = found {
        return Err(TransformError::NotRelational(f));
    }
    let sk = skolemize(sentence, sig)?;
    let mut signature = sk.signature.clone();
    let mut matrix = sk.matrix;
    let mut new_relations = Vec::new();
    let mut steps = 0;
    while matrix.term_depth() > 0 {
        let step = reduce_term_depth(&matrix, &mut signature)?;
        matrix = step.formula;
        new_relations.extend(step.new_relations);
        steps += 1;
    }
    let func_axioms = new_relations
        .iter()
        .flat_map(|(r, a)| func_axioms(r, *a))
        .collect();
    Ok(RelationalSkolemResult {
        variables: matrix.free_variables(),
        matrix,
        new_relations,
        func_axioms,
        signature,
        steps,
    })
}
