//! Rewriting a knowledge base so that only literals carry weights, and
//! checking that probabilities over the original signature are unchanged.
//!
//! ```text
//! cargo run --release --example literal_weighted
//! ```

use wfm::kb::parse_kb;
use wfm::logic::parse_formula;
use wfm::semantics::{event_probability, partition_function, InferenceConfig};
use wfm::transforms::to_literal_weighted;

const KB: &str = "\
declare rel R/1
declare rel S/1
R(x) & S(x) : 3
R(x) | exists y. S(y) : 1/2
!S(x) : 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(KB)?;
    let lw = to_literal_weighted(&kb)?;
    println!("literal-weighted form:\n{lw}");

    let cfg = InferenceConfig::default();
    let n = 2;
    println!("Z original = {}, Z rewritten = {}", partition_function(&kb, n, &cfg)?, partition_function(&lw, n, &cfg)?);
    for q in ["R(1)", "R(1) & S(2)", "forall x. S(x)"] {
        let before = event_probability(&kb, n, &parse_formula(q, kb.signature())?, &cfg)?;
        let after = event_probability(&lw, n, &parse_formula(q, lw.signature())?, &cfg)?;
        println!("P({q}) = {before}  |  rewritten: {after}");
        assert_eq!(before, after);
    }
    Ok(())
}
