//! Skolemization, term-depth reduction and relational Skolemization, with
//! an exhaustive check that relational Skolemization preserves
//! satisfiability at each small domain size.
//!
//! ```text
//! cargo run --release --example skolemize
//! ```

use wfm::kb::parse_formula_file;
use wfm::logic::{parse_formula, Signature};
use wfm::semantics::{spectrum_member, InferenceConfig};
use wfm::transforms::{reduce_term_depth, relational_skolemize, skolemize};

const PAIRING: &str = include_str!("../data/pairing.fol");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::with_relations([("u", 2)]);
    let psi2 = parse_formula("forall x. exists y. (y != x & u(x,y))", &sig)?;

    let sk = skolemize(&psi2, &sig)?;
    println!("Skolem form:      {}", sk.sentence());
    let mut s = sk.signature.clone();
    let step = reduce_term_depth(&sk.matrix, &mut s)?;
    println!("depth reduced:    {}", step.formula);

    let rs = relational_skolemize(&psi2, &sig)?;
    println!("relational form:  {}", rs.sentence());

    // Nested Skolem terms need one reduction step per level.
    let mut nested = sig.clone();
    nested.add_function("f", 1)?;
    nested.add_relation("R", 1)?;
    let deep = parse_formula("R(f(f(x)))", &nested)?;
    let first = reduce_term_depth(&deep, &mut nested)?;
    let second = reduce_term_depth(&first.formula, &mut nested)?;
    println!("R(f(f(x))):       {}\n                  {}", first.formula, second.formula);

    let pairing = parse_formula_file(PAIRING)?;
    let cfg = InferenceConfig::default();
    for (name, phi, sig) in [("psi2", &psi2, &sig), ("pairing", &pairing.formula, &pairing.signature)] {
        let rs = relational_skolemize(phi, sig)?;
        for n in 1..=3 {
            let original = spectrum_member(phi, sig, n, &cfg)?;
            let relational = spectrum_member(&rs.sentence(), &rs.signature, n, &cfg)?;
            println!("{name:8} n={n}: satisfiable {original:5}  relational form {relational:5}");
            assert_eq!(original, relational);
        }
    }
    Ok(())
}
