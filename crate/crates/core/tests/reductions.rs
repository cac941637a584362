mod common;

use wfm::kb::parse_formula_file;
use wfm::logic::{classify_fragment, parse_formula, Formula, Fragment, Signature};
use wfm::reductions::{
    build_thm2_kb, build_thm3_kb, build_thm4_kb, num_ground_atoms, verify_gap, weight_repr_size, GapReport,
    ReductionError, ReductionKB, Theorem,
};
use wfm::semantics::{event_probability, max_interpretation_weight, partition_function, query_weight, Backend, InferenceConfig};
use wfm::{parse_kb, ExactWeight};

use common::PAIRING;

fn pairing() -> (Formula, Signature) {
    let f = parse_formula_file(PAIRING).unwrap();
    (f.formula, f.signature)
}

fn wmc() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Wmc)
}

fn build(theorem: Theorem, n: usize) -> ReductionKB {
    let (phi, sig) = pairing();
    match theorem {
        Theorem::Two => build_thm2_kb(&phi, &sig),
        Theorem::Three => build_thm3_kb(&phi, &sig, n),
        Theorem::Four => build_thm4_kb(&phi, &sig, n),
    }
    .unwrap()
}

/// Replaces every non-zero weight by 1, so `W` counts models of the hard part.
fn uniform(r: &ReductionKB) -> wfm::WeightedKB {
    let ws: Vec<ExactWeight> = r
        .kb
        .weights()
        .into_iter()
        .map(|w| if w.is_zero() { w } else { ExactWeight::one() })
        .collect();
    r.kb.with_weights(&ws)
}

#[test]
fn construction_2_has_a_single_model_off_the_spectrum() {
    let r = build(Theorem::Two, 0);
    let z = partition_function(&r.kb, 3, &InferenceConfig::default()).unwrap();
    assert_eq!(z, ExactWeight::one());
    let p = event_probability(&r.kb, 3, &r.query(), &InferenceConfig::default()).unwrap();
    assert!(p.is_zero());
}

#[test]
fn b_models_are_unique() {
    for theorem in [Theorem::Three, Theorem::Four] {
        for n in 1..=2 {
            let r = build(theorem, n);
            let (count, _) = query_weight(&uniform(&r), n, &r.b_atom(), &wmc()).unwrap();
            assert_eq!(count, ExactWeight::one(), "construction {theorem}, n={n}");
        }
    }
}

#[test]
fn b_model_weight_matches_the_closed_form() {
    for theorem in [Theorem::Three, Theorem::Four] {
        for n in 1..=3 {
            let r = build(theorem, n);
            let (wb, _) = query_weight(&r.kb, n, &r.b_atom(), &wmc()).unwrap();
            assert_eq!(wb, r.predicted_b_weight(), "construction {theorem}, n={n}");
        }
    }
}

#[test]
fn off_spectrum_a_models_lose_a_factor_of_w() {
    let r = build(Theorem::Three, 3);
    let w = r.w.clone().unwrap();
    let k = r.k.unwrap();
    let best = max_interpretation_weight(&r.kb, 3, Some(&r.query()), &wmc()).unwrap();
    assert!(best <= w.pow(k - 1), "max a-weight exceeds w^(K-1)");
    assert!(!best.is_zero());
}

#[test]
fn constructions_stay_in_their_fragments() {
    for n in 1..=3 {
        for item in build(Theorem::Three, n).kb.items() {
            assert!(Fragment::ZeroRFOL.includes(classify_fragment(&item.formula)), "{}", item.formula);
        }
        for item in build(Theorem::Four, n).kb.items() {
            assert_eq!(classify_fragment(&item.formula), Fragment::ZeroRFOLNoEq, "{}", item.formula);
        }
    }
    for item in build(Theorem::Two, 0).kb.items() {
        assert!(Fragment::RFOL.includes(classify_fragment(&item.formula)), "{}", item.formula);
    }
}

#[test]
fn larger_w_never_raises_off_spectrum_probability() {
    let r = build(Theorem::Three, 3);
    let w = r.w.clone().unwrap();
    let mut last = None;
    for factor in [1u64, 2, 4, 16, 256] {
        let w2 = w.clone() * &ExactWeight::from_integer(factor);
        let ws: Vec<ExactWeight> = r.kb.weights().into_iter().map(|x| if x == w { w2.clone() } else { x }).collect();
        let p = event_probability(&r.kb.with_weights(&ws), 3, &r.query(), &wmc()).unwrap();
        if let Some(prev) = last.replace(p.clone()) {
            assert!(p.value() <= prev.value(), "factor {factor}: {} > {}", p.decimal(), prev.decimal());
        }
    }
}

#[test]
fn weight_size_is_atoms_plus_five_bits() {
    for n in 1..=8 {
        let r = build(Theorem::Three, n);
        let l = num_ground_atoms(r.kb.signature(), n).unwrap();
        assert_eq!(r.atoms, Some(l));
        // 10 · 2^L has L + 4 bits, the denominator 1 has one.
        assert_eq!(weight_repr_size(r.w.as_ref().unwrap()), l + 5);
    }
}

#[test]
fn printed_kb_parses_back() {
    for r in [build(Theorem::Two, 0), build(Theorem::Three, 2), build(Theorem::Four, 2)] {
        let text = r.to_string();
        let back = parse_kb(&text).unwrap();
        assert_eq!(back.items(), r.kb.items(), "construction {}", r.theorem);
        assert_eq!(r.roles.len(), r.kb.len());
    }
}

#[test]
fn gap_report_lists_every_domain_size() {
    let (phi, sig) = pairing();
    let report = verify_gap(Theorem::Two, &phi, &sig, 1..=4, &InferenceConfig::default()).unwrap();
    assert!(report.passed());
    let text = report.to_string();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(GapReport::HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("1,false,0,"), "{}", rows[0]);
    assert!(rows[3].starts_with("4,true,3/4,"), "{}", rows[3]);
}

#[test]
fn rejects_open_and_functional_inputs() {
    let sig = Signature::with_relations([("u", 2)]);
    let open = parse_formula("u(x, x)", &sig).unwrap();
    assert!(matches!(build_thm2_kb(&open, &sig), Err(ReductionError::NotASentence(_))));
    let mut fsig = sig.clone();
    fsig.add_function("f", 1).unwrap();
    let functional = parse_formula("forall x. u(x, f(x))", &fsig).unwrap();
    assert!(build_thm3_kb(&functional, &fsig, 2).is_err());
    let (phi, sig) = pairing();
    assert!(build_thm4_kb(&phi, &sig, 0).is_err());
}
