//! Exact weighted first-order model counting over finite domains `{1..n}`.
//!
//! `W(I) = Π_i w_i^{#(φ_i, I)}` with `0^0 = 1`, `Z = Σ_I W(I)` and
//! `P(φ) = W(φ) / Z`. Two backends compute the same quantities: plain
//! enumeration of all interpretations and a weighted model counter on the
//! grounded knowledge base.

mod enumerate;
mod eval;
mod ground;
mod layout;
mod wmc;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kb::WeightedKB;
use crate::logic::{Formula, Signature};
use crate::weight::{ExactWeight, Probability};

pub use eval::CompiledFormula;
pub use ground::{ground_kb, GroundKB, Prop};
pub use layout::{num_ground_atoms, AtomLayout, AtomValues, Interpretation};
pub use wmc::{weighted_count, MaxProduct, Restriction, Semiring, SumProduct};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InferenceError {
    #[error("{atoms} ground atoms exceed the capacity of {cap}")]
    CapacityExceeded { atoms: u64, cap: usize },
    #[error("{groundings} ground instances exceed the capacity of {cap}")]
    GroundingTooLarge { groundings: u64, cap: usize },
    #[error("partition function is zero: the distribution is undefined")]
    ZeroPartition,
    #[error("evidence has probability zero: the conditional is undefined")]
    ZeroEvidence,
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("query must be a sentence; free variables: {0}")]
    NotASentence(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("function symbol `{0}` must be eliminated before inference")]
    FunctionSymbol(String),
    #[error("relation `{0}` is not in the signature")]
    UnknownRelation(String),
    #[error("relation `{0}` used with the wrong arity")]
    ArityMismatch(String),
    #[error("no such ground atom: {0}")]
    UnknownAtom(String),
    #[error("element {element} is outside the domain {{1..{n}}}")]
    ElementOutOfRange { element: u32, n: usize },
    #[error("{0}")]
    IllFormed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Enumerate every interpretation.
    Enumerate,
    /// Weighted model counting on the grounded knowledge base.
    Wmc,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Enumerate => "enum",
            Backend::Wmc => "wmc",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "enum" | "enumerate" => Ok(Backend::Enumerate),
            "wmc" => Ok(Backend::Wmc),
            other => Err(format!("unknown backend `{other}` (expected `enum` or `wmc`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceConfig {
    pub backend: Backend,
    /// Maximum number of ground atoms for enumeration.
    pub enum_cap: usize,
    /// Maximum number of ground atoms for model counting.
    pub wmc_cap: usize,
    /// Maximum number of ground instances produced while grounding.
    pub max_groundings: usize,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        InferenceConfig {
            backend: Backend::Enumerate,
            enum_cap: 26,
            wmc_cap: 64,
            max_groundings: 2_000_000,
        }
    }
}

impl InferenceConfig {
    pub fn with_backend(backend: Backend) -> Self {
        InferenceConfig {
            backend,
            ..Self::default()
        }
    }

    /// Sets the atom cap of the selected backend.
    pub fn with_cap(mut self, cap: usize) -> Self {
        match self.backend {
            Backend::Enumerate => self.enum_cap = cap,
            Backend::Wmc => self.wmc_cap = cap,
        }
        self
    }

    fn cap(&self) -> usize {
        match self.backend {
            Backend::Enumerate => self.enum_cap,
            Backend::Wmc => self.wmc_cap,
        }
    }
}

/// Number of tuples `ā ∈ {1..n}^k` with `I ⊨ φ[ā]`, `k` the number of free
/// variables of `φ` (taken in first-occurrence order). For sentences, 0 or 1.
pub fn count_satisfying(f: &Formula, i: &Interpretation) -> Result<u64, InferenceError> {
    let c = CompiledFormula::compile(f, i.layout())?;
    Ok(c.count(i.bits(), &mut c.new_env(), u64::MAX))
}

pub fn satisfies(sentence: &Formula, i: &Interpretation) -> Result<bool, InferenceError> {
    require_sentence(sentence)?;
    Ok(count_satisfying(sentence, i)? == 1)
}

/// `W(I) = Π_i w_i^{#(φ_i, I)}`.
pub fn interpretation_weight(kb: &WeightedKB, i: &Interpretation) -> Result<ExactWeight, InferenceError> {
    let mut w = ExactWeight::one();
    for item in kb.items() {
        let c = CompiledFormula::compile(&item.formula, i.layout())?;
        let count = c.count(i.bits(), &mut c.new_env(), u64::MAX);
        w = w * item.weight.pow(count);
        if w.is_zero() {
            break;
        }
    }
    Ok(w)
}

fn require_sentence(f: &Formula) -> Result<(), InferenceError> {
    let free = f.free_variables();
    if free.is_empty() {
        Ok(())
    } else {
        Err(InferenceError::NotASentence(free.join(", ")))
    }
}

/// Grounds for the model counter after checking the atom cap.
fn ground_checked(kb: &WeightedKB, n: usize, cfg: &InferenceConfig) -> Result<GroundKB, InferenceError> {
    let layout = AtomLayout::new(kb.signature(), n)?;
    if layout.num_atoms() > cfg.wmc_cap {
        return Err(InferenceError::CapacityExceeded {
            atoms: layout.num_atoms() as u64,
            cap: cfg.wmc_cap,
        });
    }
    ground_kb(kb, n, cfg.max_groundings)
}

fn with_constraint(kb: &WeightedKB, forbidden: Formula) -> Result<WeightedKB, InferenceError> {
    kb.with_item(forbidden, ExactWeight::zero())
        .map_err(|e| InferenceError::IllFormed(e.to_string()))
}

/// Partition function `Z`.
pub fn partition_function(kb: &WeightedKB, n: usize, cfg: &InferenceConfig) -> Result<ExactWeight, InferenceError> {
    match cfg.backend {
        Backend::Enumerate => Ok(enumerate::histogram(kb, n, None, cfg.enum_cap)?.total(false)),
        Backend::Wmc => {
            let g = ground_checked(kb, n, cfg)?;
            Ok(ExactWeight::from_rational(weighted_count::<SumProduct>(&g, None).0)
                .expect("weighted counts are non-negative"))
        }
    }
}

/// `(W(φ), Z)` where `W(φ)` sums the weights of interpretations satisfying `φ`.
pub fn query_weight(
    kb: &WeightedKB,
    n: usize,
    query: &Formula,
    cfg: &InferenceConfig,
) -> Result<(ExactWeight, ExactWeight), InferenceError> {
    require_sentence(query)?;
    match cfg.backend {
        Backend::Enumerate => {
            let h = enumerate::histogram(kb, n, Some(query), cfg.enum_cap)?;
            Ok((h.total(true), h.total(false)))
        }
        Backend::Wmc => {
            let restricted = with_constraint(kb, Formula::not(query.clone()))?;
            Ok((partition_function(&restricted, n, cfg)?, partition_function(kb, n, cfg)?))
        }
    }
}

/// `P(φ) = W(φ) / Z`; fails with [`InferenceError::ZeroPartition`] when `Z = 0`.
pub fn event_probability(
    kb: &WeightedKB,
    n: usize,
    query: &Formula,
    cfg: &InferenceConfig,
) -> Result<Probability, InferenceError> {
    let (w, z) = query_weight(kb, n, query, cfg)?;
    Probability::from_weights(&w, &z).ok_or(InferenceError::ZeroPartition)
}

/// `P(φ | ε)`, computed as `P(φ)` in the knowledge base extended by `(¬ε : 0)`.
pub fn conditional_probability(
    kb: &WeightedKB,
    n: usize,
    query: &Formula,
    evidence: &Formula,
    cfg: &InferenceConfig,
) -> Result<Probability, InferenceError> {
    require_sentence(evidence)?;
    let conditioned = with_constraint(kb, Formula::not(evidence.clone()))?;
    match event_probability(&conditioned, n, query, cfg) {
        Err(InferenceError::ZeroPartition) => {
            if partition_function(kb, n, cfg)?.is_zero() {
                Err(InferenceError::ZeroPartition)
            } else {
                Err(InferenceError::ZeroEvidence)
            }
        }
        other => other,
    }
}

/// `max_I W(I)`, over interpretations satisfying `condition` if given.
pub fn max_interpretation_weight(
    kb: &WeightedKB,
    n: usize,
    condition: Option<&Formula>,
    cfg: &InferenceConfig,
) -> Result<ExactWeight, InferenceError> {
    if let Some(c) = condition {
        require_sentence(c)?;
    }
    match cfg.backend {
        Backend::Enumerate => {
            Ok(enumerate::histogram(kb, n, condition, cfg.enum_cap)?.max(condition.is_some()))
        }
        Backend::Wmc => {
            let kb = match condition {
                Some(c) => with_constraint(kb, Formula::not(c.clone()))?,
                None => kb.clone(),
            };
            let g = ground_checked(&kb, n, cfg)?;
            Ok(ExactWeight::from_rational(weighted_count::<MaxProduct>(&g, None).0)
                .expect("weighted counts are non-negative"))
        }
    }
}

/// Whether the sentence has a model with domain `{1..n}`.
pub fn spectrum_member(
    sentence: &Formula,
    sig: &Signature,
    n: usize,
    cfg: &InferenceConfig,
) -> Result<bool, InferenceError> {
    require_sentence(sentence)?;
    let layout = AtomLayout::new(sig, n)?;
    match cfg.backend {
        Backend::Enumerate => enumerate::satisfiable(sentence, &layout, cfg.cap()),
        Backend::Wmc => {
            let kb = with_constraint(&WeightedKB::new(sig.clone()), Formula::not(sentence.clone()))?;
            let g = ground_checked(&kb, n, cfg)?;
            Ok(!weighted_count::<MaxProduct>(&g, None).is_zero())
        }
    }
}

/// `{ n ≤ n_max : φ has a model of size n }`.
pub fn spectrum(
    sentence: &Formula,
    sig: &Signature,
    n_max: usize,
    cfg: &InferenceConfig,
) -> Result<BTreeSet<usize>, InferenceError> {
    let mut out = BTreeSet::new();
    for n in 1..=n_max {
        if spectrum_member(sentence, sig, n, cfg)? {
            out.insert(n);
        }
    }
    Ok(out)
}
