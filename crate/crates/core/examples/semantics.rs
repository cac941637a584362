//! Exact probabilities in a weighted feature model, computed by both
//! backends, plus conditioning through an added hard constraint.
//!
//! ```text
//! cargo run --release --example semantics
//! ```

use wfm::kb::parse_kb;
use wfm::logic::parse_formula;
use wfm::semantics::{
    conditional_probability, event_probability, interpretation_weight, partition_function, Backend,
    InferenceConfig, Interpretation,
};

const KB: &str = "\
declare rel R/1
declare rel S/2
R(x) : 2
R(x) & S(x,y) -> R(y) : 3/2
S(x,x) : 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(KB)?;
    let sig = kb.signature().clone();
    let n = 2;

    // W(I) for one interpretation: R = {1}, S = {(1,2)}.
    let i = Interpretation::with_true_atoms(&sig, n, &[("R", &[&[1]]), ("S", &[&[1, 2]])])?;
    println!("W({i:?}) = {}", interpretation_weight(&kb, &i)?);

    let query = parse_formula("R(2)", &sig)?;
    let evidence = parse_formula("exists x. S(x, 2)", &sig)?;
    for backend in [Backend::Enumerate, Backend::Wmc] {
        let cfg = InferenceConfig::with_backend(backend);
        println!("[{backend}] Z = {}", partition_function(&kb, n, &cfg)?);
        println!("[{backend}] P(R(2)) = {}", event_probability(&kb, n, &query, &cfg)?);
        println!(
            "[{backend}] P(R(2) | exists x. S(x,2)) = {}",
            conditional_probability(&kb, n, &query, &evidence, &cfg)?
        );
    }

    // A distribution with no interpretation of positive weight is reported, not guessed.
    let empty = parse_kb("declare rel R/1\nR(x) : 0\n!R(x) : 0\n")?;
    match event_probability(&empty, 1, &parse_formula("R(1)", empty.signature())?, &InferenceConfig::default()) {
        Ok(p) => println!("unexpected: {p}"),
        Err(e) => println!("zero-weight KB: {e}"),
    }
    Ok(())
}
