//! Exact weighted model counting over a [`GroundKB`] by DPLL-style search
//! with unit propagation, connected-component decomposition and caching of
//! component results. Generic over the semiring so the same search yields
//! sums (partition functions) and maxima (heaviest interpretation).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::weight::ExactWeight;

use super::ground::{GroundKB, Prop};

/// Commutative semiring over non-negative rationals.
pub trait Semiring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_weight(w: &ExactWeight) -> Self;
    /// Contribution of `k` atoms that no constraint or formula mentions.
    fn free(k: usize) -> Self;
}

/// Ordinary `(+, ×)`: the weighted model count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumProduct(pub BigRational);

/// `(max, ×)`: the weight of the heaviest interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxProduct(pub BigRational);

impl Semiring for SumProduct {
    fn zero() -> Self {
        SumProduct(BigRational::zero())
    }
    fn one() -> Self {
        SumProduct(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        SumProduct(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        SumProduct(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_weight(w: &ExactWeight) -> Self {
        SumProduct(w.as_rational().clone())
    }
    fn free(k: usize) -> Self {
        SumProduct(BigRational::from_integer(BigInt::one() << k))
    }
}

impl Semiring for MaxProduct {
    fn zero() -> Self {
        MaxProduct(BigRational::zero())
    }
    fn one() -> Self {
        MaxProduct(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }
    fn mul(&self, other: &Self) -> Self {
        MaxProduct(&self.0 * &other.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_weight(w: &ExactWeight) -> Self {
        MaxProduct(w.as_rational().clone())
    }
    fn free(_k: usize) -> Self {
        MaxProduct(BigRational::one())
    }
}

/// A constraint (must hold) or a weighted formula (contributes its weight when true).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Item {
    /// `None` for hard constraints, otherwise an index into the weight table.
    weight: Option<u32>,
    prop: Prop,
}

#[derive(Debug, Clone)]
struct Entry {
    item: Item,
    vars: Vec<u32>,
}

impl Entry {
    fn new(item: Item) -> Self {
        let vars = item.prop.vars();
        Entry { item, vars }
    }
}

/// Result of simplifying a set of entries under a partial assignment.
enum Simplified<S> {
    Conflict,
    Done { entries: Vec<Entry>, factor: S },
}

struct Counter<S: Semiring> {
    weights: Vec<S>,
    num_atoms: usize,
    cache: HashMap<Vec<Item>, S>,
}

/// Partial assignment over atoms, indexed by atom.
pub type Restriction = Vec<Option<bool>>;

/// Counts `Σ_I W(I)` (or `max_I W(I)` for [`MaxProduct`]) over all
/// interpretations consistent with `restriction`.
pub fn weighted_count<S: Semiring>(g: &GroundKB, restriction: Option<&Restriction>) -> S {
    let mut table: Vec<ExactWeight> = Vec::new();
    let mut entries = Vec::new();
    for p in &g.forbidden {
        push_constraint(&mut entries, p.clone().negate());
    }
    for (p, w) in &g.soft {
        let idx = match table.iter().position(|t| t == w) {
            Some(i) => i,
            None => {
                table.push(w.clone());
                table.len() - 1
            }
        };
        entries.push(Entry::new(Item {
            weight: Some(idx as u32),
            prop: p.clone(),
        }));
    }
    let mut counter = Counter {
        weights: table.iter().map(S::from_weight).collect(),
        num_atoms: g.num_atoms,
        cache: HashMap::new(),
    };

    let unrestricted;
    let assignment = match restriction {
        Some(r) => {
            assert_eq!(r.len(), g.num_atoms, "restriction must cover every atom");
            r
        }
        None => {
            unrestricted = vec![None; g.num_atoms];
            &unrestricted
        }
    };
    let fixed = assignment.iter().filter(|v| v.is_some()).count();
    // Also folds constant constraints and soft formulas.
    let (entries, factor) = match counter.simplify(entries, assignment) {
        Simplified::Conflict => return S::zero(),
        Simplified::Done { entries, factor } => (entries, factor),
    };
    let mentioned = var_set(&entries).len();
    let free = g.num_atoms - fixed - mentioned;
    factor.mul(&S::free(free)).mul(&counter.count(entries))
}

fn push_constraint(entries: &mut Vec<Entry>, p: Prop) {
    match p {
        Prop::And(children) => children.into_iter().for_each(|c| push_constraint(entries, c)),
        p => entries.push(Entry::new(Item { weight: None, prop: p })),
    }
}

fn var_set(entries: &[Entry]) -> Vec<u32> {
    let mut v: Vec<u32> = entries.iter().flat_map(|e| e.vars.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl<S: Semiring> Counter<S> {
    /// Applies `assignment` to every entry that mentions an assigned atom.
    /// Constraints reduced to `true` and false soft formulas disappear; true
    /// soft formulas move their weight into the returned factor.
    fn simplify(&self, entries: Vec<Entry>, assignment: &[Option<bool>]) -> Simplified<S> {
        let mut out = Vec::with_capacity(entries.len());
        let mut factor = S::one();
        for e in entries {
            let touched = e.vars.iter().any(|&v| assignment[v as usize].is_some());
            let prop = if touched {
                e.item.prop.assign(assignment)
            } else if matches!(e.item.prop, Prop::Const(_)) {
                e.item.prop.clone()
            } else {
                out.push(e);
                continue;
            };
            match (e.item.weight, prop) {
                (None, Prop::Const(false)) => return Simplified::Conflict,
                (None, Prop::Const(true)) => {}
                (None, p @ Prop::And(_)) => push_constraint(&mut out, p),
                (Some(w), Prop::Const(true)) => factor = factor.mul(&self.weights[w as usize]),
                (Some(_), Prop::Const(false)) => {}
                (weight, prop) => out.push(Entry::new(Item { weight, prop })),
            }
        }
        Simplified::Done { entries: out, factor }
    }

    /// Count over the atoms mentioned by `entries`.
    fn count(&mut self, entries: Vec<Entry>) -> S {
        let before = var_set(&entries).len();
        let mut assignment: Vec<Option<bool>> = vec![None; self.num_atoms];
        let mut assigned = 0;
        let mut factor = S::one();
        let mut entries = entries;
        loop {
            let mut any = false;
            for e in &entries {
                if let (None, Prop::Lit(v, p)) = (&e.item.weight, &e.item.prop) {
                    match assignment[*v as usize] {
                        Some(old) if old != *p => return S::zero(),
                        Some(_) => {}
                        None => {
                            assignment[*v as usize] = Some(*p);
                            assigned += 1;
                            any = true;
                        }
                    }
                }
            }
            if !any {
                break;
            }
            match self.simplify(entries, &assignment) {
                Simplified::Conflict => return S::zero(),
                Simplified::Done { entries: e, factor: f } => {
                    entries = e;
                    factor = factor.mul(&f);
                }
            }
        }
        let remaining = var_set(&entries);
        factor = factor.mul(&S::free(before - assigned - remaining.len()));
        if entries.is_empty() {
            return factor;
        }
        for component in components(entries, &remaining) {
            let r = self.count_component(component);
            if r.is_zero() {
                return S::zero();
            }
            factor = factor.mul(&r);
        }
        factor
    }

    fn count_component(&mut self, entries: Vec<Entry>) -> S {
        let mut key: Vec<Item> = entries.iter().map(|e| e.item.clone()).collect();
        key.sort();
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let vars = var_set(&entries);
        let x = choose_branch(&entries, &vars);
        let mut total = S::zero();
        for value in [true, false] {
            let mut assignment = vec![None; self.num_atoms];
            assignment[x as usize] = Some(value);
            if let Simplified::Done { entries: sub, factor } = self.simplify(entries.clone(), &assignment) {
                let free = vars.len() - 1 - var_set(&sub).len();
                let branch = factor.mul(&S::free(free)).mul(&self.count(sub));
                total = total.add(&branch);
            }
        }
        self.cache.insert(key, total.clone());
        total
    }
}

/// Splits entries into groups with disjoint atoms.
fn components(entries: Vec<Entry>, vars: &[u32]) -> Vec<Vec<Entry>> {
    let pos = |v: u32| vars.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for e in &entries {
        if let Some((&first, rest)) = e.vars.split_first() {
            let a = find(&mut parent, pos(first));
            for &v in rest {
                let b = find(&mut parent, pos(v));
                parent[b] = a;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Entry>> = HashMap::new();
    for e in entries {
        let root = find(&mut parent, pos(e.vars[0]));
        groups.entry(root).or_default().push(e);
    }
    let mut out: Vec<Vec<Entry>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0].vars[0]);
    out
}

/// Atom occurring most, weighted towards short constraints.
fn choose_branch(entries: &[Entry], vars: &[u32]) -> u32 {
    let mut score = vec![0.0f64; vars.len()];
    for e in entries {
        let bonus = if e.item.weight.is_none() { 2.0 } else { 1.0 };
        let s = bonus / e.vars.len() as f64;
        for v in &e.vars {
            score[vars.binary_search(v).unwrap()] += s;
        }
    }
    let best = (0..vars.len())
        .max_by(|&a, &b| score[a].partial_cmp(&score[b]).unwrap().then(b.cmp(&a)))
        .unwrap();
    vars[best]
}
