//! Formulas compiled against an atom layout: variables become slots and
//! atoms become index arithmetic. Used both for direct Tarskian evaluation
//! and for grounding.

use crate::logic::{Formula, Term};

use super::layout::{AtomLayout, AtomValues};
use super::InferenceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Arg {
    Slot(usize),
    /// 0-based domain element.
    Elem(u32),
}

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Const(bool),
    Atom { offset: usize, args: Vec<Arg> },
    Eq(Arg, Arg),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A function-free formula resolved against an [`AtomLayout`].
/// Free variables occupy slots `0..free.len()` in first-occurrence order.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    pub(crate) root: Node,
    free: Vec<String>,
    slots: usize,
    n: usize,
}

impl CompiledFormula {
    pub fn compile(f: &Formula, layout: &AtomLayout) -> Result<Self, InferenceError> {
        let free = f.free_variables();
        let mut scope: Vec<(String, usize)> =
            free.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut slots = free.len();
        let root = compile_node(f, layout, &mut scope, &mut slots)?;
        Ok(CompiledFormula {
            root,
            free,
            slots,
            n: layout.domain_size(),
        })
    }

    pub fn free_variables(&self) -> &[String] {
        &self.free
    }

    pub fn arity(&self) -> usize {
        self.free.len()
    }

    pub fn num_slots(&self) -> usize {
        self.slots
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    /// Truth value under `env`, whose first `arity()` entries hold the
    /// (0-based) values of the free variables.
    pub fn eval<A: AtomValues + ?Sized>(&self, atoms: &A, env: &mut [u32]) -> bool {
        eval_node(&self.root, atoms, env, self.n as u32)
    }

    /// Number of free-variable tuples satisfying the formula, stopping early
    /// once `limit` is reached.
    pub fn count<A: AtomValues + ?Sized>(&self, atoms: &A, env: &mut [u32], limit: u64) -> u64 {
        let k = self.free.len();
        let n = self.n as u32;
        env[..k].iter_mut().for_each(|e| *e = 0);
        let mut count = 0;
        loop {
            if eval_node(&self.root, atoms, env, n) {
                count += 1;
                if count >= limit {
                    return count;
                }
            }
            // odometer over the free slots
            let mut i = k;
            loop {
                if i == 0 {
                    return count;
                }
                i -= 1;
                env[i] += 1;
                if env[i] < n {
                    break;
                }
                env[i] = 0;
            }
        }
    }

    pub fn new_env(&self) -> Vec<u32> {
        vec![0; self.slots.max(1)]
    }
}

fn compile_arg(t: &Term, layout: &AtomLayout, scope: &[(String, usize)]) -> Result<Arg, InferenceError> {
    match t {
        Term::Var(v) => scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, s)| Arg::Slot(*s))
            .ok_or_else(|| InferenceError::UnboundVariable(v.clone())),
        Term::Elem(d) => {
            if *d == 0 || *d as usize > layout.domain_size() {
                Err(InferenceError::ElementOutOfRange {
                    element: *d,
                    n: layout.domain_size(),
                })
            } else {
                Ok(Arg::Elem(d - 1))
            }
        }
        Term::App(f, _) => Err(InferenceError::FunctionSymbol(f.clone())),
    }
}

fn compile_node(
    f: &Formula,
    layout: &AtomLayout,
    scope: &mut Vec<(String, usize)>,
    slots: &mut usize,
) -> Result<Node, InferenceError> {
    let bin = |l: &Formula, r: &Formula, scope: &mut Vec<(String, usize)>, slots: &mut usize| {
        Ok::<_, InferenceError>((
            Box::new(compile_node(l, layout, scope, slots)?),
            Box::new(compile_node(r, layout, scope, slots)?),
        ))
    };
    Ok(match f {
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Atom(r, args) => {
            let slot = layout
                .slot(r)
                .ok_or_else(|| InferenceError::UnknownRelation(r.clone()))?;
            if slot.arity != args.len() {
                return Err(InferenceError::ArityMismatch(r.clone()));
            }
            Node::Atom {
                offset: slot.offset,
                args: args
                    .iter()
                    .map(|t| compile_arg(t, layout, scope))
                    .collect::<Result<_, _>>()?,
            }
        }
        Formula::Eq(l, r) => Node::Eq(compile_arg(l, layout, scope)?, compile_arg(r, layout, scope)?),
        Formula::Not(a) => Node::Not(Box::new(compile_node(a, layout, scope, slots)?)),
        Formula::And(l, r) => {
            let (l, r) = bin(l, r, scope, slots)?;
            Node::And(l, r)
        }
        Formula::Or(l, r) => {
            let (l, r) = bin(l, r, scope, slots)?;
            Node::Or(l, r)
        }
        Formula::Implies(l, r) => {
            let (l, r) = bin(l, r, scope, slots)?;
            Node::Implies(l, r)
        }
        Formula::Iff(l, r) => {
            let (l, r) = bin(l, r, scope, slots)?;
            Node::Iff(l, r)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let slot = *slots;
            *slots += 1;
            scope.push((v.clone(), slot));
            let body = compile_node(body, layout, scope, slots);
            scope.pop();
            let body = Box::new(body?);
            if matches!(f, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
    })
}

#[inline]
pub(crate) fn arg_value(a: Arg, env: &[u32]) -> u32 {
    match a {
        Arg::Slot(s) => env[s],
        Arg::Elem(d) => d,
    }
}

#[inline]
pub(crate) fn atom_offset(offset: usize, args: &[Arg], env: &[u32], n: u32) -> usize {
    offset
        + args
            .iter()
            .fold(0usize, |acc, a| acc * n as usize + arg_value(*a, env) as usize)
}

fn eval_node<A: AtomValues + ?Sized>(node: &Node, atoms: &A, env: &mut [u32], n: u32) -> bool {
    match node {
        Node::Const(b) => *b,
        Node::Atom { offset, args } => atoms.atom(atom_offset(*offset, args, env, n)),
        Node::Eq(l, r) => arg_value(*l, env) == arg_value(*r, env),
        Node::Not(a) => !eval_node(a, atoms, env, n),
        Node::And(l, r) => eval_node(l, atoms, env, n) && eval_node(r, atoms, env, n),
        Node::Or(l, r) => eval_node(l, atoms, env, n) || eval_node(r, atoms, env, n),
        Node::Implies(l, r) => !eval_node(l, atoms, env, n) || eval_node(r, atoms, env, n),
        Node::Iff(l, r) => eval_node(l, atoms, env, n) == eval_node(r, atoms, env, n),
        Node::Forall(slot, body) => (0..n).all(|d| {
            env[*slot] = d;
            eval_node(body, atoms, env, n)
        }),
        Node::Exists(slot, body) => (0..n).any(|d| {
            env[*slot] = d;
            eval_node(body, atoms, env, n)
        }),
    }
}
