use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::logic::{Formula, Signature};
use crate::semantics::{event_probability, spectrum_member, InferenceConfig};
use crate::weight::Probability;

use super::{build_thm2_kb, build_thm3_kb, build_thm4_kb, ReductionError, Theorem};

/// The bound a construction promises for `P(a())`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtLeastHalf,
    Zero,
    AtMostTenth,
}

impl Bound {
    pub fn expected(theorem: Theorem, member: bool) -> Bound {
        match (member, theorem) {
            (true, _) => Bound::AtLeastHalf,
            (false, Theorem::Two) => Bound::Zero,
            (false, _) => Bound::AtMostTenth,
        }
    }

    /// Exact rational comparison.
    pub fn holds(self, p: &Probability) -> bool {
        let v = p.value();
        match self {
            Bound::AtLeastHalf => *v >= BigRational::new(1.into(), 2.into()),
            Bound::Zero => p.is_zero(),
            Bound::AtMostTenth => *v <= BigRational::new(1.into(), 10.into()),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::AtLeastHalf => ">=1/2",
            Bound::Zero => "=0",
            Bound::AtMostTenth => "<=1/10",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRow {
    pub n: usize,
    /// Whether `n ∈ spec(φ)`, decided on `φ` itself.
    pub member: bool,
    pub probability: Probability,
    pub bound: Bound,
    pub pass: bool,
}

impl GapRow {
    /// `1/10 < P(a()) < 1/2`: outside both bounds, whatever the membership.
    pub fn in_gap(&self) -> bool {
        !Bound::AtLeastHalf.holds(&self.probability) && !Bound::AtMostTenth.holds(&self.probability)
    }
}

impl fmt::Display for GapRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.n,
            self.member,
            self.probability.exact(),
            self.probability.decimal(),
            self.bound,
            self.pass
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub theorem: Theorem,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    pub const HEADER: &'static str = "n,member,p_exact,p_decimal,bound,pass";

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::HEADER)?;
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Builds the construction for every `n` in the range, computes `P(a())`
/// exactly and checks it against the bound implied by membership of `n`
/// in the spectrum of `φ`. Domain sizes are processed concurrently; rows
/// come back in ascending `n`.
pub fn verify_gap(
    theorem: Theorem,
    phi: &Formula,
    sig: &Signature,
    ns: impl IntoIterator<Item = usize>,
    cfg: &InferenceConfig,
) -> Result<GapReport, ReductionError> {
    let ns: Vec<usize> = ns.into_iter().collect();
    let fixed = match theorem {
        Theorem::Two => Some(build_thm2_kb(phi, sig)?),
        _ => None,
    };
    let rows = ns
        .par_iter()
        .map(|&n| {
            let reduction = match (theorem, &fixed) {
                (Theorem::Two, Some(r)) => r.clone(),
                (Theorem::Three, _) => build_thm3_kb(phi, sig, n)?,
                _ => build_thm4_kb(phi, sig, n)?,
            };
            let member = spectrum_member(phi, sig, n, cfg)?;
            let probability = event_probability(&reduction.kb, n, &reduction.query(), cfg)?;
            let bound = Bound::expected(theorem, member);
            Ok(GapRow {
                n,
                member,
                pass: bound.holds(&probability),
                probability,
                bound,
            })
        })
        .collect::<Result<Vec<_>, ReductionError>>()?;
    Ok(GapReport { theorem, rows })
}
