//! Acceptance suite: one line per criterion, exact comparisons throughout.
//! Runs as a plain binary (`harness = false`) and exits non-zero on failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use wfm::kb::{parse_formula_file, parse_kb, WeightedKB};
use wfm::logic::{classify_fragment, parse_formula, Formula, Fragment, Signature};
use wfm::reductions::{build_thm2_kb, build_thm3_kb, build_thm4_kb, weight_repr_size, Bound, ReductionKB};
use wfm::semantics::{
    conditional_probability, event_probability, partition_function, query_weight, spectrum, spectrum_member,
    Backend, InferenceConfig, InferenceError,
};
use wfm::transforms::relational_skolemize;
use wfm::weight::{ExactWeight, Probability};

use common::{binary_signature, small_signature, Gen, PAIRING};

type Outcome = Result<String, String>;

fn enumerate() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Enumerate)
}

fn wmc() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Wmc)
}

fn pairing() -> (Formula, Signature) {
    let f = parse_formula_file(PAIRING).expect("pairing sentence parses");
    (f.formula, f.signature)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn a_probability(r: &ReductionKB, n: usize, cfg: &InferenceConfig) -> Result<Probability, String> {
    event_probability(&r.kb, n, &r.query(), cfg).map_err(err)
}

fn semantics_oracle() -> Outcome {
    let kb = parse_kb("declare rel R/1\nR(x) : 2\n").map_err(err)?;
    let q = parse_formula("R(1)", kb.signature()).map_err(err)?;
    let mut seen = Vec::new();
    for cfg in [enumerate(), wmc()] {
        let p = event_probability(&kb, 1, &q, &cfg).map_err(err)?;
        let z = partition_function(&kb, 2, &cfg).map_err(err)?;
        ensure(p.exact() == "2/3", format!("P_1(R(1)) = {} with {}", p.exact(), cfg.backend))?;
        ensure(z == ExactWeight::from_integer(9), format!("Z at n=2 is {z} with {}", cfg.backend))?;
        seen.push((p, z));
    }
    ensure(seen[0] == seen[1], "backends disagree")?;
    Ok("P_1(R(1)) = 2/3 and Z_2 = 9 on both backends".into())
}

fn spectrum_parity() -> Outcome {
    let (phi, sig) = pairing();
    let small = spectrum(&phi, &sig, 5, &enumerate()).map_err(err)?;
    ensure(small.iter().copied().eq([2, 4]), format!("enumeration up to 5 gave {small:?}"))?;
    let full = spectrum(&phi, &sig, 6, &wmc()).map_err(err)?;
    ensure(full.iter().copied().eq([2, 4, 6]), format!("model counting up to 6 gave {full:?}"))?;
    Ok("spec(pairing) ∩ [1,6] = {2, 4, 6}; enumeration agrees up to 5".into())
}

fn thm2_gap() -> Outcome {
    let (phi, sig) = pairing();
    let r = build_thm2_kb(&phi, &sig).map_err(err)?;
    let mut parts = Vec::new();
    for (n, cfg) in [(1, enumerate()), (2, enumerate()), (3, enumerate()), (4, wmc())] {
        let p = a_probability(&r, n, &cfg)?;
        let ok = if n % 2 == 1 { p.is_zero() } else { *p.value() >= half() };
        ensure(ok, format!("n={n}: P(a()) = {}", p.exact()))?;
        parts.push(format!("n={n}: {}", p.exact()));
    }
    let z3 = partition_function(&r.kb, 3, &enumerate()).map_err(err)?;
    ensure(z3.is_one(), format!("Z at n=3 is {z3}, expected 1"))?;
    Ok(format!("{}; Z_3 = 1", parts.join(", ")))
}

fn prop1_equivalence() -> Outcome {
    let (pair, sig) = pairing();
    let psi2 = parse_formula("forall x. exists y. (y != x & u(x,y))", &sig).map_err(err)?;
    let mut checked = 0;
    for phi in [&psi2, &pair] {
        let rs = relational_skolemize(phi, &sig).map_err(err)?;
        for n in 1..=3 {
            let original = spectrum_member(phi, &sig, n, &enumerate()).map_err(err)?;
            let relational = spectrum_member(&rs.sentence(), &rs.signature, n, &enumerate()).map_err(err)?;
            ensure(original == relational, format!("n={n}: {original} vs {relational} for {phi}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (sentence, n) pairs agree by exhaustive enumeration"))
}

fn calibrated_gap(construction: u8) -> Outcome {
    let (phi, sig) = pairing();
    let mut parts = Vec::new();
    for n in 1..=3 {
        let r = match construction {
            3 => build_thm3_kb(&phi, &sig, n),
            _ => build_thm4_kb(&phi, &sig, n),
        }
        .map_err(err)?;
        let atoms = r.atoms.unwrap();
        let w = r.w.clone().unwrap();
        let expected_w = ExactWeight::from_integer(10) * ExactWeight::from_integer(2).pow(atoms);
        ensure(w == expected_w, format!("n={n}: w = {w}"))?;
        if construction == 4 {
            for item in r.kb.items() {
                let frag = classify_fragment(&item.formula);
                ensure(frag == Fragment::ZeroRFOLNoEq, format!("{} is {}", item.formula, frag.name()))?;
            }
        }
        let (wb, _) = query_weight(&r.kb, n, &r.b_atom(), &wmc()).map_err(err)?;
        ensure(
            wb == r.predicted_b_weight(),
            format!("n={n}: W(b()) differs from the closed form"),
        )?;
        if n >= 2 {
            let p = a_probability(&r, n, &wmc())?;
            let bound = Bound::expected(r.theorem, n % 2 == 0);
            ensure(bound.holds(&p), format!("n={n}: P(a()) = {} violates {bound}", p.decimal()))?;
            parts.push(format!("n={n}: P(a()) ≈ {} ({bound})", p.decimal()));
        }
    }
    let closed = if construction == 3 { "w^K(n)" } else { "w^(K(n)-n)" };
    Ok(format!("W(b()) = {closed} for n=1..3; {}", parts.join(", ")))
}

fn oscillation() -> Outcome {
    let (phi, sig) = pairing();
    let r = build_thm2_kb(&phi, &sig).map_err(err)?;
    let mut seq = Vec::new();
    for n in 1..=4 {
        let p = a_probability(&r, n, &enumerate())?;
        let expected = if n % 2 == 1 { p.is_zero() } else { *p.value() >= half() };
        ensure(expected, format!("n={n}: {}", p.exact()))?;
        seq.push(p.exact());
    }
    Ok(format!("P(a()) for n=1..4: {}", seq.join(", ")))
}

fn conditional_identity() -> Outcome {
    let sig = small_signature();
    let mut defined = 0;
    for seed in 0..20u64 {
        let mut g = Gen::new(&sig, 2, 1000 + seed);
        let kb = g.kb(3);
        let chi = g.sentence(3);
        let eta = g.sentence(3);
        let cfg = enumerate();
        let cond = conditional_probability(&kb, 2, &chi, &eta, &cfg);
        let p_eta = event_probability(&kb, 2, &eta, &cfg);
        match p_eta {
            Ok(pe) if !pe.is_zero() => {
                let joint = event_probability(&kb, 2, &chi.clone().and(eta.clone()), &cfg).map_err(err)?;
                let ratio = joint.value() / pe.value();
                let c = cond.map_err(|e| format!("seed {seed}: {e}"))?;
                ensure(*c.value() == ratio, format!("seed {seed}: {} vs {ratio}", c.exact()))?;
                defined += 1;
            }
            Ok(_) => ensure(
                cond == Err(InferenceError::ZeroEvidence),
                format!("seed {seed}: expected zero-evidence error"),
            )?,
            Err(e) => ensure(cond == Err(e.clone()), format!("seed {seed}: {e}"))?,
        }
    }
    ensure(defined >= 10, format!("only {defined} of 20 cases had P(η) > 0"))?;
    Ok(format!("20 knowledge bases, {defined} with P(η) > 0, all identities exact"))
}

fn backend_equivalence() -> Outcome {
    let sigs = [small_signature(), binary_signature()];
    let mut total = 0;
    for seed in 0..100u64 {
        let sig = &sigs[(seed % 2) as usize];
        let n = if seed % 2 == 0 { 1 + (seed as usize / 2) % 3 } else { 1 + (seed as usize / 2) % 2 };
        let mut g = Gen::new(sig, n as u32, seed);
        let kb: WeightedKB = g.kb(1 + (seed as usize % 4));
        let queries: Vec<Formula> = (0..3).map(|_| g.sentence(3)).collect();
        let (e, w) = (enumerate(), wmc());
        ensure(
            partition_function(&kb, n, &e) == partition_function(&kb, n, &w),
            format!("seed {seed}: Z differs"),
        )?;
        for q in &queries {
            let (pe, pw) = (event_probability(&kb, n, q, &e), event_probability(&kb, n, q, &w));
            ensure(pe == pw, format!("seed {seed}: P({q}) differs: {pe:?} vs {pw:?}"))?;
        }
        total += 1;
    }
    Ok(format!("{total} knowledge bases × (Z + 3 queries) identical on both backends"))
}

fn representation_growth() -> Outcome {
    let (phi, sig) = pairing();
    let mut sizes = Vec::new();
    let mut max_arity = 0;
    for n in 1..=8 {
        let r = build_thm3_kb(&phi, &sig, n).map_err(err)?;
        max_arity = r
            .kb
            .signature()
            .relations()
            .iter()
            .filter(|(name, _)| name.starts_with("_Rsk"))
            .map(|(_, a)| *a)
            .max()
            .unwrap_or(0);
        sizes.push(weight_repr_size(r.w.as_ref().unwrap()) as i64);
    }
    // A sequence on 1..8 is a polynomial of degree ≤ d iff its (d+1)-th differences vanish.
    let mut diffs = sizes.clone();
    let mut degree = 0;
    while diffs.iter().any(|&d| d != 0) {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        degree += 1;
        if diffs.is_empty() {
            return Err(format!("no polynomial fit over 8 points: {sizes:?}"));
        }
    }
    let degree = degree - 1;
    ensure(degree <= max_arity + 1, format!("degree {degree} exceeds {}", max_arity + 1))?;
    Ok(format!("l(w(n)) for n=1..8 = {sizes:?}, exact degree {degree} ≤ {}", max_arity + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("semantics oracle", semantics_oracle, Duration::from_secs(1)),
        ("spectrum parity", spectrum_parity, Duration::from_secs(30)),
        ("construction 2 gap", thm2_gap, Duration::from_secs(60)),
        ("relational Skolemization equivalence", prop1_equivalence, Duration::from_secs(120)),
        ("construction 3 calibration and gap", || calibrated_gap(3), Duration::from_secs(600)),
        ("construction 4 calibration and gap", || calibrated_gap(4), Duration::from_secs(900)),
        ("oscillation", oscillation, Duration::from_secs(60)),
        ("conditional reduction identity", conditional_identity, Duration::from_secs(60)),
        ("backend equivalence", backend_equivalence, Duration::from_secs(300)),
        ("representation-size growth", representation_growth, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
