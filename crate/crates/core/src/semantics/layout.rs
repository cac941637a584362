use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::logic::Signature;

use super::InferenceError;

/// `Σ_R n^arity(R)`, or `None` on overflow.
pub fn num_ground_atoms(sig: &Signature, n: usize) -> Option<u64> {
    sig.relations().iter().try_fold(0u64, |acc, (_, arity)| {
        let count = (n as u64).checked_pow(*arity as u32)?;
        acc.checked_add(count)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RelationSlot {
    pub name: String,
    pub arity: usize,
    pub offset: usize,
}

/// Ground atoms of a relational signature over `{1..n}`, laid out
/// relation by relation in declaration order, tuples in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomLayout {
    n: usize,
    slots: Vec<RelationSlot>,
    by_name: HashMap<String, usize>,
    total: usize,
}

impl AtomLayout {
    pub fn new(sig: &Signature, n: usize) -> Result<Self, InferenceError> {
        if n == 0 {
            return Err(InferenceError::EmptyDomain);
        }
        let total = num_ground_atoms(sig, n).ok_or(InferenceError::CapacityExceeded {
            atoms: u64::MAX,
            cap: usize::MAX,
        })?;
        let mut slots = Vec::new();
        let mut by_name = HashMap::new();
        let mut offset = 0;
        for (name, arity) in sig.relations() {
            by_name.insert(name.clone(), slots.len());
            slots.push(RelationSlot {
                name: name.clone(),
                arity: *arity,
                offset,
            });
            offset += n.pow(*arity as u32);
        }
        Ok(AtomLayout {
            n,
            slots,
            by_name,
            total: total as usize,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    pub fn num_atoms(&self) -> usize {
        self.total
    }

    pub(crate) fn slot(&self, name: &str) -> Option<&RelationSlot> {
        self.by_name.get(name).map(|&i| &self.slots[i])
    }

    /// Index of `rel(elems)`, elements 1-based.
    pub fn atom_index(&self, rel: &str, elems: &[u32]) -> Option<usize> {
        let slot = self.slot(rel)?;
        if elems.len() != slot.arity || elems.iter().any(|&d| d == 0 || d as usize > self.n) {
            return None;
        }
        Some(
            slot.offset
                + elems
                    .iter()
                    .fold(0usize, |acc, &d| acc * self.n + (d as usize - 1)),
        )
    }

    /// Relation name and 1-based arguments of an atom index.
    pub fn describe(&self, index: usize) -> Option<(String, Vec<u32>)> {
        let slot = self
            .slots
            .iter()
            .rev()
            .find(|s| s.offset <= index && (s.arity > 0 || s.offset == index))?;
        let mut rest = index - slot.offset;
        if rest >= self.n.pow(slot.arity as u32) {
            return None;
        }
        let mut args = vec![0u32; slot.arity];
        for a in args.iter_mut().rev() {
            *a = (rest % self.n) as u32 + 1;
            rest /= self.n;
        }
        Some((slot.name.clone(), args))
    }

    pub fn atom_name(&self, index: usize) -> String {
        match self.describe(index) {
            Some((r, args)) => format!(
                "{r}({})",
                args.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
            None => format!("#{index}"),
        }
    }
}

/// Truth values of ground atoms.
pub trait AtomValues {
    fn atom(&self, index: usize) -> bool;
}

impl AtomValues for u64 {
    #[inline]
    fn atom(&self, index: usize) -> bool {
        (self >> index) & 1 == 1
    }
}

impl AtomValues for [bool] {
    #[inline]
    fn atom(&self, index: usize) -> bool {
        self[index]
    }
}

/// A finite structure over `{1..n}`: one truth value per ground atom.
#[derive(Clone, PartialEq, Eq)]
pub struct Interpretation {
    layout: Arc<AtomLayout>,
    bits: Vec<bool>,
}

impl Interpretation {
    /// All relations empty.
    pub fn empty(sig: &Signature, n: usize) -> Result<Self, InferenceError> {
        let layout = Arc::new(AtomLayout::new(sig, n)?);
        let bits = vec![false; layout.num_atoms()];
        Ok(Interpretation { layout, bits })
    }

    pub fn from_bits(layout: Arc<AtomLayout>, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), layout.num_atoms());
        Interpretation { layout, bits }
    }

    /// Decodes an interpretation from the low bits of `mask` (atom `i` is bit `i`).
    pub fn from_mask(layout: Arc<AtomLayout>, mask: u64) -> Self {
        let bits = (0..layout.num_atoms()).map(|i| mask.atom(i)).collect();
        Interpretation { layout, bits }
    }

    /// Builds an interpretation from lists of true tuples, e.g. `[("u", &[&[1, 2], &[2, 1]])]`.
    pub fn with_true_atoms(
        sig: &Signature,
        n: usize,
        atoms: &[(&str, &[&[u32]])],
    ) -> Result<Self, InferenceError> {
        let mut i = Self::empty(sig, n)?;
        for (rel, tuples) in atoms {
            for t in *tuples {
                i.set(rel, t, true)?;
            }
        }
        Ok(i)
    }

    pub fn set(&mut self, rel: &str, elems: &[u32], value: bool) -> Result<(), InferenceError> {
        let idx = self
            .layout
            .atom_index(rel, elems)
            .ok_or_else(|| InferenceError::UnknownAtom(format!("{rel}{elems:?}")))?;
        self.bits[idx] = value;
        Ok(())
    }

    pub fn get(&self, rel: &str, elems: &[u32]) -> Option<bool> {
        self.layout.atom_index(rel, elems).map(|i| self.bits[i])
    }

    pub fn domain_size(&self) -> usize {
        self.layout.domain_size()
    }

    pub fn layout(&self) -> &Arc<AtomLayout> {
        &self.layout
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn num_true(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

impl AtomValues for Interpretation {
    #[inline]
    fn atom(&self, index: usize) -> bool {
        self.bits[index]
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let true_atoms: Vec<String> = (0..self.bits.len())
            .filter(|&i| self.bits[i])
            .map(|i| self.layout.atom_name(i))
            .collect();
        write!(f, "Interpretation(n={}, {{{}}})", self.domain_size(), true_atoms.join(", "))
    }
}
