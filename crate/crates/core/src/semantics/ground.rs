//! Grounding a function-free knowledge base over `{1..n}` into propositional
//! constraints (from weight-0 items) and weighted propositional formulas.

use std::fmt;

use crate::kb::WeightedKB;
use crate::weight::ExactWeight;

use super::eval::{arg_value, atom_offset, CompiledFormula, Node};
use super::layout::AtomLayout;
use super::InferenceError;

/// Propositional formula in negation normal form (biconditionals kept).
///
/// The smart constructors keep `And`/`Or` flat, sorted and duplicate-free,
/// with at least two children and no constants, so structurally equal
/// sub-problems compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    Const(bool),
    /// `(atom index, polarity)`
    Lit(u32, bool),
    And(Vec<Prop>),
    Or(Vec<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn and(children: impl IntoIterator<Item = Prop>) -> Prop {
        Self::junction(children, true)
    }

    pub fn or(children: impl IntoIterator<Item = Prop>) -> Prop {
        Self::junction(children, false)
    }

    /// `conj = true` builds a conjunction, otherwise a disjunction.
    fn junction(children: impl IntoIterator<Item = Prop>, conj: bool) -> Prop {
        let mut out = Vec::new();
        for c in children {
            match c {
                Prop::Const(b) if b == conj => {}
                Prop::Const(_) => return Prop::Const(!conj),
                Prop::And(v) if conj => out.extend(v),
                Prop::Or(v) if !conj => out.extend(v),
                other => out.push(other),
            }
        }
        out.sort();
        out.dedup();
        // Lit(v, false) sorts directly before Lit(v, true).
        if out
            .windows(2)
            .any(|w| matches!((&w[0], &w[1]), (Prop::Lit(a, false), Prop::Lit(b, true)) if a == b))
        {
            return Prop::Const(!conj);
        }
        match out.len() {
            0 => Prop::Const(conj),
            1 => out.pop().unwrap(),
            _ if conj => Prop::And(out),
            _ => Prop::Or(out),
        }
    }

    pub fn iff(a: Prop, b: Prop) -> Prop {
        match (a, b) {
            (Prop::Const(x), p) | (p, Prop::Const(x)) => {
                if x {
                    p
                } else {
                    p.negate()
                }
            }
            (a, b) if a == b => Prop::Const(true),
            (a, b) => {
                let na = a.clone().negate();
                if na == b {
                    return Prop::Const(false);
                }
                if a <= b {
                    Prop::Iff(Box::new(a), Box::new(b))
                } else {
                    Prop::Iff(Box::new(b), Box::new(a))
                }
            }
        }
    }

    pub fn negate(self) -> Prop {
        match self {
            Prop::Const(b) => Prop::Const(!b),
            Prop::Lit(v, p) => Prop::Lit(v, !p),
            Prop::And(v) => Prop::or(v.into_iter().map(Prop::negate)),
            Prop::Or(v) => Prop::and(v.into_iter().map(Prop::negate)),
            Prop::Iff(a, b) => Prop::iff(*a, b.negate()),
        }
    }

    /// Appends the atom indices occurring in the formula (unsorted, may repeat).
    pub fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Prop::Const(_) => {}
            Prop::Lit(v, _) => out.push(*v),
            Prop::And(v) | Prop::Or(v) => v.iter().for_each(|c| c.collect_vars(out)),
            Prop::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut v = Vec::new();
        self.collect_vars(&mut v);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Substitutes the values fixed by `assignment` (indexed by atom).
    pub fn assign(&self, assignment: &[Option<bool>]) -> Prop {
        match self {
            Prop::Const(_) => self.clone(),
            Prop::Lit(v, p) => match assignment[*v as usize] {
                Some(val) => Prop::Const(val == *p),
                None => self.clone(),
            },
            Prop::And(v) => Prop::and(v.iter().map(|c| c.assign(assignment))),
            Prop::Or(v) => Prop::or(v.iter().map(|c| c.assign(assignment))),
            Prop::Iff(a, b) => Prop::iff(a.assign(assignment), b.assign(assignment)),
        }
    }

    pub fn eval(&self, values: &[bool]) -> bool {
        match self {
            Prop::Const(b) => *b,
            Prop::Lit(v, p) => values[*v as usize] == *p,
            Prop::And(v) => v.iter().all(|c| c.eval(values)),
            Prop::Or(v) => v.iter().any(|c| c.eval(values)),
            Prop::Iff(a, b) => a.eval(values) == b.eval(values),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Prop::Const(_) | Prop::Lit(..) => 1,
            Prop::And(v) | Prop::Or(v) => 1 + v.iter().map(Prop::size).sum::<usize>(),
            Prop::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[Prop], op: &str| {
            write!(f, "(")?;
            for (i, c) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        };
        match self {
            Prop::Const(b) => write!(f, "{b}"),
            Prop::Lit(v, true) => write!(f, "p{v}"),
            Prop::Lit(v, false) => write!(f, "!p{v}"),
            Prop::And(v) => join(f, v, "&"),
            Prop::Or(v) => join(f, v, "|"),
            Prop::Iff(a, b) => write!(f, "({a} <-> {b})"),
        }
    }
}

/// Propositional image of a knowledge base over a fixed domain.
#[derive(Debug, Clone)]
pub struct GroundKB {
    pub num_atoms: usize,
    /// Ground instances of weight-0 items. Each must be false in any
    /// interpretation of non-zero weight.
    pub forbidden: Vec<Prop>,
    /// Ground instances of the remaining items, weight 1 omitted.
    pub soft: Vec<(Prop, ExactWeight)>,
}

impl GroundKB {
    /// Weight of a full assignment (product of weights of satisfied soft instances).
    pub fn weight_of(&self, values: &[bool]) -> ExactWeight {
        if self.forbidden.iter().any(|p| p.eval(values)) {
            return ExactWeight::zero();
        }
        self.soft
            .iter()
            .filter(|(p, _)| p.eval(values))
            .fold(ExactWeight::one(), |acc, (_, w)| acc * w)
    }
}

/// Instantiates the free variables of `f` in all `n^k` ways.
pub(crate) fn ground_instances(c: &CompiledFormula) -> Vec<Prop> {
    let k = c.arity();
    let n = c.domain_size() as u32;
    let mut env = c.new_env();
    let total = (n as usize).pow(k as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        for slot in (0..k).rev() {
            env[slot] = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        out.push(ground_node(&c.root, &mut env, n));
    }
    out
}

/// Grounds a closed-under-`env` node; quantifiers expand to finite `And`/`Or`.
pub(crate) fn ground_node(node: &Node, env: &mut [u32], n: u32) -> Prop {
    match node {
        Node::Const(b) => Prop::Const(*b),
        Node::Atom { offset, args } => Prop::Lit(atom_offset(*offset, args, env, n) as u32, true),
        Node::Eq(l, r) => Prop::Const(arg_value(*l, env) == arg_value(*r, env)),
        Node::Not(a) => ground_node(a, env, n).negate(),
        Node::And(l, r) => Prop::and([ground_node(l, env, n), ground_node(r, env, n)]),
        Node::Or(l, r) => Prop::or([ground_node(l, env, n), ground_node(r, env, n)]),
        Node::Implies(l, r) => Prop::or([ground_node(l, env, n).negate(), ground_node(r, env, n)]),
        Node::Iff(l, r) => Prop::iff(ground_node(l, env, n), ground_node(r, env, n)),
        Node::Forall(slot, body) | Node::Exists(slot, body) => {
            let parts: Vec<Prop> = (0..n)
                .map(|d| {
                    env[*slot] = d;
                    ground_node(body, env, n)
                })
                .collect();
            if matches!(node, Node::Forall(..)) {
                Prop::and(parts)
            } else {
                Prop::or(parts)
            }
        }
    }
}

/// Grounds every item of a function-free KB over `{1..n}`.
pub fn ground_kb(kb: &WeightedKB, n: usize, max_groundings: usize) -> Result<GroundKB, InferenceError> {
    let layout = AtomLayout::new(kb.signature(), n)?;
    let mut total: u64 = 0;
    for item in kb.items() {
        let k = item.formula.free_variables().len() as u32;
        total = total.saturating_add((n as u64).saturating_pow(k));
    }
    if total > max_groundings as u64 {
        return Err(InferenceError::GroundingTooLarge {
            groundings: total,
            cap: max_groundings,
        });
    }
    let mut forbidden = Vec::new();
    let mut soft = Vec::new();
    for item in kb.items() {
        if item.weight.is_one() {
            continue;
        }
        let c = CompiledFormula::compile(&item.formula, &layout)?;
        let instances = ground_instances(&c);
        if item.weight.is_zero() {
            forbidden.extend(instances.into_iter().filter(|p| *p != Prop::Const(false)));
        } else {
            soft.extend(
                instances
                    .into_iter()
                    .filter(|p| *p != Prop::Const(false))
                    .map(|p| (p, item.weight.clone())),
            );
        }
    }
    Ok(GroundKB {
        num_atoms: layout.num_atoms(),
        forbidden,
        soft,
    })
}
