pub mod bench;
pub mod cli;
pub mod kb;
pub mod logic;
pub mod reductions;
pub mod semantics;
pub mod transforms;
pub mod weight;

pub use kb::{parse_kb, WeightedKB};
pub use logic::{parse_formula, Formula, Signature, Term};
pub use weight::{ExactWeight, Probability};
