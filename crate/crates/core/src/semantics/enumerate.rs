//! Brute-force enumeration of all `2^L` interpretations, in parallel.
//!
//! Each interpretation is reduced to its vector of satisfaction counts
//! `(#(φ_i, I))_i` for the soft items; the histogram of those vectors is
//! exact and small, and weights are only multiplied out at the end.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::kb::WeightedKB;
use crate::logic::Formula;
use crate::weight::ExactWeight;

use super::eval::CompiledFormula;
use super::layout::AtomLayout;
use super::InferenceError;

/// Largest number of atoms the bitmask representation supports.
const MASK_BITS: usize = 63;

type Key = (Vec<u32>, bool);

pub(crate) struct Histogram {
    weights: Vec<ExactWeight>,
    /// `(counts per soft item, condition holds) -> number of interpretations`
    buckets: HashMap<Key, u64>,
}

impl Histogram {
    fn bucket_weight(&self, counts: &[u32]) -> ExactWeight {
        counts
            .iter()
            .zip(&self.weights)
            .fold(ExactWeight::one(), |acc, (&c, w)| acc * &w.pow(c as u64))
    }

    /// Total weight, optionally restricted to interpretations where the condition holds.
    pub fn total(&self, condition_only: bool) -> ExactWeight {
        self.buckets
            .iter()
            .filter(|((_, q), _)| !condition_only || *q)
            .fold(ExactWeight::zero(), |acc, ((counts, _), &m)| {
                acc + self.bucket_weight(counts) * ExactWeight::from_integer(m)
            })
    }

    /// Heaviest single interpretation, optionally among those satisfying the condition.
    pub fn max(&self, condition_only: bool) -> ExactWeight {
        self.buckets
            .keys()
            .filter(|(_, q)| !condition_only || *q)
            .map(|(counts, _)| self.bucket_weight(counts))
            .max_by(|a, b| a.as_rational().cmp(b.as_rational()))
            .unwrap_or_else(ExactWeight::zero)
    }
}

pub(crate) fn check_capacity(layout: &AtomLayout, cap: usize) -> Result<(), InferenceError> {
    let atoms = layout.num_atoms();
    if atoms > cap.min(MASK_BITS) {
        return Err(InferenceError::CapacityExceeded {
            atoms: atoms as u64,
            cap: cap.min(MASK_BITS),
        });
    }
    Ok(())
}

/// Splits `0..2^atoms` into ranges for the thread pool.
fn chunks(atoms: usize) -> Vec<(u64, u64)> {
    let total = 1u64 << atoms;
    let size = (total / 256).max(1 << 10).min(total);
    (0..total.div_ceil(size))
        .map(|c| (c * size, ((c + 1) * size).min(total)))
        .collect()
}

pub(crate) fn histogram(
    kb: &WeightedKB,
    n: usize,
    condition: Option<&Formula>,
    cap: usize,
) -> Result<Histogram, InferenceError> {
    let layout = AtomLayout::new(kb.signature(), n)?;
    check_capacity(&layout, cap)?;
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    let mut weights = Vec::new();
    for item in kb.items() {
        if item.weight.is_one() {
            continue;
        }
        let c = CompiledFormula::compile(&item.formula, &layout)?;
        if item.weight.is_zero() {
            hard.push(c);
        } else {
            soft.push(c);
            weights.push(item.weight.clone());
        }
    }
    let condition = condition
        .map(|f| CompiledFormula::compile(f, &layout))
        .transpose()?;

    let buckets = chunks(layout.num_atoms())
        .into_par_iter()
        .fold(HashMap::new, |mut local: HashMap<Key, u64>, (lo, hi)| {
            let mut hard_env: Vec<Vec<u32>> = hard.iter().map(CompiledFormula::new_env).collect();
            let mut soft_env: Vec<Vec<u32>> = soft.iter().map(CompiledFormula::new_env).collect();
            let mut cond_env = condition.as_ref().map(CompiledFormula::new_env).unwrap_or_default();
            let mut counts = vec![0u32; soft.len()];
            for mask in lo..hi {
                if hard
                    .iter()
                    .zip(hard_env.iter_mut())
                    .any(|(c, env)| c.count(&mask, env, 1) > 0)
                {
                    continue;
                }
                for ((c, env), slot) in soft.iter().zip(soft_env.iter_mut()).zip(counts.iter_mut()) {
                    *slot = c.count(&mask, env, u64::MAX) as u32;
                }
                let holds = condition.as_ref().map_or(true, |c| c.eval(&mask, &mut cond_env));
                match local.get_mut(&(counts.clone(), holds)) {
                    Some(m) => *m += 1,
                    None => {
                        local.insert((counts.clone(), holds), 1);
                    }
                }
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(Histogram { weights, buckets })
}

/// Whether some interpretation over `{1..n}` satisfies the sentence.
pub(crate) fn satisfiable(
    sentence: &Formula,
    layout: &AtomLayout,
    cap: usize,
) -> Result<bool, InferenceError> {
    check_capacity(layout, cap)?;
    let c = CompiledFormula::compile(sentence, layout)?;
    Ok(chunks(layout.num_atoms()).into_par_iter().any(|(lo, hi)| {
        let mut env = c.new_env();
        (lo..hi).any(|mask| c.eval(&mask, &mut env))
    }))
}
