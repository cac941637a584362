//! Knowledge bases that reduce spectrum membership of a relational sentence
//! to (approximate) probabilistic inference, plus their verification.

mod build;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kb::{KbError, WeightedKB};
use crate::logic::Formula;
use crate::semantics::InferenceError;
use crate::transforms::TransformError;
use crate::weight::ExactWeight;

pub use build::{build_thm2_kb, build_thm3_kb, build_thm4_kb};
pub use crate::semantics::num_ground_atoms;
pub use verify::{verify_gap, Bound, GapReport, GapRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("expected a sentence; free variables: {0}")]
    NotASentence(String),
    #[error("expected a relational sentence (no function symbols)")]
    NotRelational,
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("the construction needs a domain size")]
    MissingDomainSize,
    #[error("signature too large for the requested domain size")]
    TooLarge,
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Hard constraints only; `P(a()) = 0` outside the spectrum.
    Two,
    /// Quantifier-free formulas with equality and calibrated weights.
    Three,
    /// Quantifier- and equality-free formulas with calibrated weights.
    Four,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::Two => 2,
            Theorem::Three => 3,
            Theorem::Four => 4,
        }
    }

    pub fn needs_domain_size(self) -> bool {
        self != Theorem::Two
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "2" => Ok(Theorem::Two),
            "3" => Ok(Theorem::Three),
            "4" => Ok(Theorem::Four),
            other => Err(format!("unknown construction `{other}` (expected 2, 3 or 4)")),
        }
    }
}

/// Which part of a construction an item implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItemRole {
    /// `¬(φ ↔ a())`
    QueryIffSentence,
    /// `¬((⋀ ∀x̄ ¬R(x̄)) ↔ b())`
    EmptyIffB,
    /// `¬(a() ∨ b())`
    AOrB,
    /// `a() ∧ ¬φ⁺(x̄)`
    SentenceUnderA,
    /// `R⁺(x̄,y) ∧ R⁺(x̄,y') ∧ y ≠ y'`
    Functional,
    /// `a() ∧ R⁺(x̄,y) : w`
    GraphWeight,
    /// `b() ∧ R(x̄)` for the input relations
    EmptyUnderB,
    /// `b() ∧ R⁺(x̄,y)`
    GraphEmptyUnderB,
    /// `b() ∧ R⁺⁺(x̄) : w`
    ComplementWeight,
    /// `b() ∧ ¬R⁺⁺(x̄)`
    ComplementFull,
    /// `a() ∧ R⁺⁺(x̄)`
    ComplementEmptyUnderA,
    /// `a() ∧ ¬E(x,x)`
    IdentityReflexive,
    /// `a() ∧ E(x,y) : 1/w`
    IdentityPenalty,
    /// `b() ∧ E(x,y)`: keeps `E` empty in the `b()` model, as for the input relations.
    IdentityEmptyUnderB,
    /// `b() ∧ E⁺⁺(x) : 1/w`
    IdentityComplementWeight,
    /// `b() ∧ ¬E⁺⁺(x)`
    IdentityComplementFull,
    /// `a() ∧ E⁺⁺(x)`
    IdentityComplementEmptyUnderA,
}

impl ItemRole {
    pub fn describe(self) -> &'static str {
        match self {
            ItemRole::QueryIffSentence => "a() holds exactly when the sentence does",
            ItemRole::EmptyIffB => "b() holds exactly when every relation is empty",
            ItemRole::AOrB => "a() or b() holds",
            ItemRole::SentenceUnderA => "a() forces the relational Skolem matrix",
            ItemRole::Functional => "graph relations are functional",
            ItemRole::GraphWeight => "under a(), reward each graph tuple",
            ItemRole::EmptyUnderB => "under b(), input relations are empty",
            ItemRole::GraphEmptyUnderB => "under b(), graph relations are empty",
            ItemRole::ComplementWeight => "under b(), reward each complement tuple",
            ItemRole::ComplementFull => "under b(), complement relations are full",
            ItemRole::ComplementEmptyUnderA => "under a(), complement relations are empty",
            ItemRole::IdentityReflexive => "under a(), E is reflexive",
            ItemRole::IdentityPenalty => "under a(), penalize each E tuple",
            ItemRole::IdentityEmptyUnderB => "under b(), E is empty",
            ItemRole::IdentityComplementWeight => "under b(), penalize each E-complement tuple",
            ItemRole::IdentityComplementFull => "under b(), the E complement is full",
            ItemRole::IdentityComplementEmptyUnderA => "under a(), the E complement is empty",
        }
    }
}

/// A constructed knowledge base with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionKB {
    pub theorem: Theorem,
    pub kb: WeightedKB,
    /// One role per item of `kb`.
    pub roles: Vec<ItemRole>,
    /// Name of the query atom `a`.
    pub a: String,
    /// Name of the calibration atom `b`.
    pub b: String,
    /// Domain size the weights were calibrated for.
    pub n: Option<usize>,
    /// The calibrated weight `w`.
    pub w: Option<ExactWeight>,
    /// `K(n) = Σ n^{k_i}` over the graph relations.
    pub k: Option<u64>,
    /// Ground atoms of the full signature (`L(n)`, or `M(n)` without equality).
    pub atoms: Option<u64>,
}

impl ReductionKB {
    /// The query `a()`.
    pub fn query(&self) -> Formula {
        Formula::nullary(&self.a)
    }

    pub fn b_atom(&self) -> Formula {
        Formula::nullary(&self.b)
    }

    /// Predicted weight of the unique `b()` model: `1`, `w^{K(n)}` or `w^{K(n)−n}`.
    pub fn predicted_b_weight(&self) -> ExactWeight {
        match (self.theorem, &self.w, self.k, self.n) {
            (Theorem::Three, Some(w), Some(k), _) => w.pow(k),
            (Theorem::Four, Some(w), Some(k), Some(n)) => {
                if k >= n as u64 {
                    w.pow(k - n as u64)
                } else {
                    w.recip().expect("w > 0").pow(n as u64 - k)
                }
            }
            _ => ExactWeight::one(),
        }
    }
}

impl fmt::Display for ReductionKB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# reduction {}", self.theorem)?;
        if let (Some(n), Some(_), Some(k), Some(l)) = (self.n, &self.w, self.k, self.atoms) {
            writeln!(f, "# n = {n}, ground atoms = {l}, K(n) = {k}, w = 10*2^{l}")?;
        }
        for (name, arity) in self.kb.signature().relations() {
            writeln!(f, "declare rel {name}/{arity}")?;
        }
        for (item, role) in self.kb.items().iter().zip(&self.roles) {
            writeln!(f, "{} : {}  # {}", item.formula, item.weight, role.describe())?;
        }
        Ok(())
    }
}

/// `l(w) = ⌈log₂(u+1)⌉ + ⌈log₂(v+1)⌉` for `w = u/v` in lowest terms.
pub fn weight_repr_size(w: &ExactWeight) -> u64 {
    w.repr_size()
}

/// `Σ_i l(w_i)`.
pub fn kb_weight_size(kb: &WeightedKB) -> u64 {
    kb.items().iter().map(|i| weight_repr_size(&i.weight)).sum()
}
