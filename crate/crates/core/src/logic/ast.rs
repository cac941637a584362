use std::collections::HashSet;

/// A first-order term.
///
/// Constants are function applications with no arguments. `Elem` is a
/// literal domain element (`1..=n`), used for ground queries such as `R(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
    Elem(u32),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    /// Maximal nesting depth of function symbols: variables and domain
    /// elements are 0, `f()` and `f(x1, .., xk)` are 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Elem(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn has_function(&self) -> bool {
        matches!(self, Term::App(..))
    }

    pub(crate) fn collect_vars<'a>(&'a self, seen: &mut HashSet<&'a str>, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if seen.insert(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(seen, out)),
            Term::Elem(_) => {}
        }
    }

    pub fn mentions_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::App(_, args) => args.iter().any(|a| a.mentions_var(name)),
            Term::Elem(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(rel.into(), args)
    }

    /// Atom whose arguments are all variables.
    pub fn atom_vars(rel: impl Into<String>, vars: &[&str]) -> Self {
        Formula::Atom(rel.into(), vars.iter().map(|v| Term::var(*v)).collect())
    }

    pub fn nullary(rel: impl Into<String>) -> Self {
        Formula::Atom(rel.into(), Vec::new())
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs).not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Universal closure over `vars`, outermost first.
    pub fn forall_many<S: AsRef<str>>(vars: &[S], body: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    /// Left-associated conjunction; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::True,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-associated disjunction; `False` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::False,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Not(inner) => matches!(**inner, Formula::Atom(..)),
            _ => false,
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
        let visit_term = |t: &Term, bound: &Vec<&'a str>, out: &mut Vec<String>| {
            let mut vars = Vec::new();
            t.collect_vars(&mut HashSet::new(), &mut vars);
            for v in vars {
                if !bound.contains(&v.as_str()) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| visit_term(t, bound, out)),
            Formula::Eq(l, r) => {
                visit_term(l, bound, out);
                visit_term(r, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_variables(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.visit(&mut |f| match f {
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            Formula::Atom(_, args) => args.iter().for_each(|t| term_vars_into(t, &mut out)),
            Formula::Eq(l, r) => {
                term_vars_into(l, &mut out);
                term_vars_into(r, &mut out);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal over subformulas.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit(f),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    /// Terms appearing directly as arguments of atoms and equalities, left to right.
    pub fn visit_terms<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        self.visit(&mut |g| match g {
            Formula::Atom(_, args) => args.iter().for_each(&mut *f),
            Formula::Eq(l, r) => {
                f(l);
                f(r);
            }
            _ => {}
        });
    }

    /// Maximal nesting depth of function symbols over all contained terms.
    pub fn term_depth(&self) -> usize {
        let mut depth = 0;
        self.visit_terms(&mut |t| depth = depth.max(t.depth()));
        depth
    }

    pub fn has_quantifier(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            found |= matches!(f, Formula::Forall(..) | Formula::Exists(..));
        });
        found
    }

    pub fn has_equality(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Eq(..)));
        found
    }

    pub fn has_function(&self) -> bool {
        let mut found = false;
        self.visit_terms(&mut |t| found |= t.has_function());
        found
    }

    /// Relation names in first-occurrence order.
    pub fn relations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom(r, _) = f {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        });
        out
    }
}

fn term_vars_into(t: &Term, out: &mut HashSet<String>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::App(_, args) => args.iter().for_each(|a| term_vars_into(a, out)),
        Term::Elem(_) => {}
    }
}
