//! Spectra of first-order sentences: the domain sizes with a model.
//! The pairing sentence has models exactly at even sizes.
//!
//! ```text
//! cargo run --release --example spectrum
//! ```

use std::time::Instant;

use wfm::kb::parse_formula_file;
use wfm::logic::{classify_fragment, parse_formula};
use wfm::semantics::{spectrum, Backend, InferenceConfig};

const PAIRING: &str = include_str!("../data/pairing.fol");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = parse_formula_file(PAIRING)?;
    println!("pairing sentence: {}", file.formula);
    println!("fragment: {}", classify_fragment(&file.formula).name());

    // Enumeration is exhaustive over 2^(n^2) interpretations, so it stops at n = 5;
    // model counting decides satisfiability at larger sizes.
    for (backend, n_max) in [(Backend::Enumerate, 5), (Backend::Wmc, 6)] {
        let start = Instant::now();
        let spec = spectrum(&file.formula, &file.signature, n_max, &InferenceConfig::with_backend(backend))?;
        println!("[{backend}] spec up to {n_max}: {spec:?} ({:.2?})", start.elapsed());
    }

    // Symmetry alone is satisfied by the empty relation at every size.
    let symmetric = parse_formula("forall x, y. (u(x,y) <-> u(y,x))", &file.signature)?;
    let spec = spectrum(&symmetric, &file.signature, 3, &InferenceConfig::default())?;
    println!("symmetry alone, up to 3: {spec:?}");
    Ok(())
}
