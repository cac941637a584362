//! Domain size vs. inference time for both backends, as CSV.
//!
//! ```text
//! cargo run --release --example bench_scaling > scaling.csv
//! ```

use wfm::bench::{run_bench, BenchRecord};
use wfm::kb::parse_kb;
use wfm::logic::parse_formula;
use wfm::semantics::{Backend, InferenceConfig};

const KB: &str = "\
declare rel R/1
declare rel S/1
R(x) : 2
R(x) -> S(x) : 3/2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(KB)?;
    let query = parse_formula("R(1) & S(1)", kb.signature())?;
    let records = run_bench(&kb, &query, 1..=12, &[Backend::Enumerate, Backend::Wmc], 3, &InferenceConfig::default())?;
    println!("{}", BenchRecord::HEADER);
    for r in &records {
        println!("{r}");
        if r.exceeded() {
            eprintln!("n = {}: {} backend over capacity ({} atoms)", r.n, r.backend, r.atoms);
        }
    }
    Ok(())
}
