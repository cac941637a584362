//! Command implementations behind the `wfm` binary. Each command takes file
//! contents rather than paths so it can be exercised without touching disk.

use std::ops::RangeInclusive;

use thiserror::Error;

use crate::bench::{run_bench, BenchRecord};
use crate::kb::{parse_formula_file, parse_kb, KbError};
use crate::logic::{parse_formula, ParseError};
use crate::reductions::{build_thm2_kb, build_thm3_kb, build_thm4_kb, verify_gap, GapReport, ReductionError, ReductionKB, Theorem};
use crate::semantics::{conditional_probability, event_probability, spectrum, Backend, InferenceConfig, InferenceError};
use crate::weight::Probability;

pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_UNDEFINED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error("{0}")]
    Query(#[from] ParseError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inference(e) | CliError::Reduction(ReductionError::Inference(e)) => match e {
                InferenceError::CapacityExceeded { .. } | InferenceError::GroundingTooLarge { .. } => EXIT_CAPACITY,
                InferenceError::ZeroPartition | InferenceError::ZeroEvidence => EXIT_UNDEFINED,
                _ => EXIT_PARSE,
            },
            _ => EXIT_PARSE,
        }
    }
}

/// Prints as `u/v ≈ d`, or the bare integer.
pub fn infer(
    kb_text: &str,
    n: usize,
    query: &str,
    evidence: Option<&str>,
    cfg: &InferenceConfig,
) -> Result<Probability, CliError> {
    let kb = parse_kb(kb_text)?;
    let q = parse_formula(query, kb.signature())?;
    match evidence {
        Some(e) => {
            let e = parse_formula(e, kb.signature())?;
            Ok(conditional_probability(&kb, n, &q, &e, cfg)?)
        }
        None => Ok(event_probability(&kb, n, &q, cfg)?),
    }
}

/// One line `n,member` per domain size, after a header.
pub fn spectrum_table(formula_text: &str, n_max: usize, cfg: &InferenceConfig) -> Result<String, CliError> {
    let file = parse_formula_file(formula_text)?;
    let members = spectrum(&file.formula, &file.signature, n_max, cfg)?;
    let mut out = String::from("n,member\n");
    for n in 1..=n_max {
        out.push_str(&format!("{n},{}\n", members.contains(&n)));
    }
    Ok(out)
}

pub fn reduce(theorem: Theorem, formula_text: &str, n: Option<usize>) -> Result<ReductionKB, CliError> {
    let file = parse_formula_file(formula_text)?;
    let (phi, sig) = (&file.formula, &file.signature);
    Ok(match (theorem, n) {
        (Theorem::Two, _) => build_thm2_kb(phi, sig)?,
        (_, None) => return Err(CliError::Usage(format!("construction {theorem} needs a domain size"))),
        (Theorem::Three, Some(n)) => build_thm3_kb(phi, sig, n)?,
        (Theorem::Four, Some(n)) => build_thm4_kb(phi, sig, n)?,
    })
}

pub fn verify(
    theorem: Theorem,
    formula_text: &str,
    range: RangeInclusive<usize>,
    cfg: &InferenceConfig,
) -> Result<GapReport, CliError> {
    let file = parse_formula_file(formula_text)?;
    Ok(verify_gap(theorem, &file.formula, &file.signature, range, cfg)?)
}

/// CSV text plus one warning per run that exceeded capacity.
pub fn bench(
    kb_text: &str,
    query: &str,
    range: RangeInclusive<usize>,
    backends: &[Backend],
    repeats: usize,
    cfg: &InferenceConfig,
) -> Result<(String, Vec<String>), CliError> {
    let kb = parse_kb(kb_text)?;
    let q = parse_formula(query, kb.signature())?;
    let records = run_bench(&kb, &q, range, backends, repeats, cfg)?;
    let mut csv = format!("{}\n", BenchRecord::HEADER);
    let mut warnings = Vec::new();
    for r in &records {
        csv.push_str(&format!("{r}\n"));
        if r.exceeded() {
            warnings.push(format!(
                "warning: n = {} exceeds the {} backend's capacity ({} ground atoms)",
                r.n, r.backend, r.atoms
            ));
        }
    }
    Ok((csv, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNARY: &str = "declare rel R/1\nR(x) : 2\n";

    #[test]
    fn infer_prints_exact_and_decimal() {
        let cfg = InferenceConfig::default();
        assert_eq!(infer(UNARY, 1, "R(1)", None, &cfg).unwrap().to_string(), "2/3 ≈ 0.666666666667");
        assert_eq!(infer(UNARY, 2, "true", None, &cfg).unwrap().to_string(), "1");
    }

    #[test]
    fn exit_codes() {
        let cfg = InferenceConfig::default();
        assert_eq!(infer("declare rel R/1\nR(x : 2\n", 1, "R(1)", None, &cfg).unwrap_err().exit_code(), EXIT_PARSE);
        assert_eq!(infer(UNARY, 1, "R(1", None, &cfg).unwrap_err().exit_code(), EXIT_PARSE);
        assert_eq!(
            infer(UNARY, 2, "R(1)", None, &cfg.clone().with_cap(1)).unwrap_err().exit_code(),
            EXIT_CAPACITY
        );
        assert_eq!(
            infer("declare rel R/1\nR(x) : 0\nforall x. !R(x) : 0\n", 1, "R(1)", None, &cfg)
                .unwrap_err()
                .exit_code(),
            EXIT_UNDEFINED
        );
        assert_eq!(
            infer("declare rel R/1\nR(x) : 0\n", 1, "R(1)", Some("R(1)"), &cfg)
                .unwrap_err()
                .exit_code(),
            EXIT_UNDEFINED
        );
    }
}
