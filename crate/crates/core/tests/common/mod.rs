//! Seeded generators of small random knowledge bases and sentences.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wfm::kb::WeightedKB;
use wfm::logic::{Formula, Signature, Term};
use wfm::weight::ExactWeight;

pub const PAIRING: &str = include_str!("../../data/pairing.fol");

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Gen<'a> {
    pub sig: &'a Signature,
    /// Largest domain element that may appear as a constant.
    pub n: u32,
    pub rng: ChaCha8Rng,
}

const VARS: [&str; 3] = ["x", "y", "z"];

impl<'a> Gen<'a> {
    pub fn new(sig: &'a Signature, n: u32, seed: u64) -> Self {
        Gen { sig, n, rng: rng(seed) }
    }

    fn term(&mut self, scope: &[String]) -> Term {
        if !scope.is_empty() && self.rng.gen_bool(0.75) {
            Term::var(scope.choose(&mut self.rng).unwrap().clone())
        } else {
            Term::Elem(self.rng.gen_range(1..=self.n))
        }
    }

    fn leaf(&mut self, scope: &[String]) -> Formula {
        let rels = self.sig.relations();
        if self.rng.gen_bool(0.15) {
            let (l, r) = (self.term(scope), self.term(scope));
            return Formula::eq(l, r);
        }
        if self.rng.gen_bool(0.03) {
            return if self.rng.gen() { Formula::True } else { Formula::False };
        }
        let (name, arity) = rels.choose(&mut self.rng).unwrap().clone();
        let args = (0..arity).map(|_| self.term(scope)).collect();
        Formula::atom(name, args)
    }

    /// A formula whose free variables are drawn from `scope`.
    pub fn formula(&mut self, depth: usize, scope: &mut Vec<String>) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.leaf(scope);
        }
        match self.rng.gen_range(0..7) {
            0 => self.formula(depth - 1, scope).not(),
            1 => self.formula(depth - 1, scope).and(self.formula(depth - 1, scope)),
            2 => self.formula(depth - 1, scope).or(self.formula(depth - 1, scope)),
            3 => self.formula(depth - 1, scope).implies(self.formula(depth - 1, scope)),
            4 => self.formula(depth - 1, scope).iff(self.formula(depth - 1, scope)),
            q => {
                let v = VARS.choose(&mut self.rng).unwrap().to_string();
                scope.push(v.clone());
                let body = self.formula(depth - 1, scope);
                scope.pop();
                if q == 5 {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
        }
    }

    pub fn sentence(&mut self, depth: usize) -> Formula {
        self.formula(depth, &mut Vec::new())
    }

    pub fn weight(&mut self) -> ExactWeight {
        let choices: [(u64, u64); 9] = [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1), (3, 2), (5, 4), (1, 3), (7, 3)];
        let (u, v) = *choices.choose(&mut self.rng).unwrap();
        ExactWeight::ratio(u, v).unwrap()
    }

    /// `items` formulas with up to two free variables and random weights.
    /// Weight 0 is drawn less often so that most knowledge bases have `Z > 0`.
    pub fn kb(&mut self, items: usize) -> WeightedKB {
        let mut kb = WeightedKB::new(self.sig.clone());
        for _ in 0..items {
            let k = self.rng.gen_range(0..=2);
            let mut scope: Vec<String> = VARS[..k].iter().map(|s| s.to_string()).collect();
            let f = self.formula(3, &mut scope);
            let mut w = self.weight();
            if w.is_zero() && self.rng.gen_bool(0.5) {
                w = ExactWeight::from_integer(2);
            }
            kb.push(f, w).expect("generated formulas are well-formed");
        }
        kb
    }
}

/// `P/1, Q/1, c/0` — 5 ground atoms at n = 2.
pub fn small_signature() -> Signature {
    Signature::with_relations([("P", 1), ("Q", 1), ("c", 0)])
}

/// `P/1, Q/1, R/2, c/0` — 9 ground atoms at n = 2.
pub fn binary_signature() -> Signature {
    Signature::with_relations([("P", 1), ("Q", 1), ("R", 2), ("c", 0)])
}
