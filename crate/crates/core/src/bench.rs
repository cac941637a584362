//! Domain size vs. inference time measurements, emitted as CSV.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::kb::WeightedKB;
use crate::logic::Formula;
use crate::semantics::{num_ground_atoms, query_weight, Backend, InferenceConfig, InferenceError};

/// One `(n, backend)` measurement. Times and sizes are `-1` when the
/// backend's capacity was exceeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub backend: Backend,
    /// Median over the repeats.
    pub wall_time_ms: i64,
    /// Representation size of `Z` in bits.
    pub z_bits: i64,
    /// Ground atoms of the signature at `n`.
    pub atoms: u64,
}

impl BenchRecord {
    pub const HEADER: &'static str = "n,backend,wall_time_ms,z_bits,atoms";

    pub fn exceeded(&self) -> bool {
        self.wall_time_ms < 0
    }
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.n, self.backend, self.wall_time_ms, self.z_bits, self.atoms
        )
    }
}

/// Parses an inclusive range written `a..b`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range `a..b`, found `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end in `{s}`"))?;
    if a == 0 || a > b {
        return Err(format!("range `{s}` must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Times `P(query)` (including grounding and `Z`) for every `n` and backend.
/// Rows come in ascending `n`, backends in the given order. Errors other
/// than exceeded capacity abort the run.
pub fn run_bench(
    kb: &WeightedKB,
    query: &Formula,
    ns: RangeInclusive<usize>,
    backends: &[Backend],
    repeats: usize,
    base: &InferenceConfig,
) -> Result<Vec<BenchRecord>, InferenceError> {
    let repeats = repeats.max(1);
    let mut out = Vec::new();
    for n in ns {
        let atoms = num_ground_atoms(kb.signature(), n).unwrap_or(u64::MAX);
        for &backend in backends {
            let cfg = InferenceConfig {
                backend,
                ..base.clone()
            };
            let mut times = Vec::with_capacity(repeats);
            let mut z_bits = -1;
            for _ in 0..repeats {
                let start = Instant::now();
                match query_weight(kb, n, query, &cfg) {
                    Ok((_, z)) => {
                        times.push(start.elapsed().as_millis());
                        z_bits = z.repr_size() as i64;
                    }
                    Err(InferenceError::CapacityExceeded { .. } | InferenceError::GroundingTooLarge { .. }) => {
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            let wall_time_ms = if times.len() == repeats {
                median(times) as i64
            } else {
                -1
            };
            out.push(BenchRecord {
                n,
                backend,
                wall_time_ms,
                z_bits: if wall_time_ms < 0 { -1 } else { z_bits },
                atoms,
            });
        }
    }
    Ok(out)
}
