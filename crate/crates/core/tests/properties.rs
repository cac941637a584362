mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use wfm::logic::{classify_fragment, normalize_bound, parse_formula, parse_formula_raw, substitute, Formula, Signature, Term};
use wfm::semantics::{conditional_probability, event_probability, partition_function, Backend, InferenceConfig};
use wfm::transforms::{nnf, reduce_term_depth};
use wfm::Probability;

use common::{binary_signature, rng, Gen};

fn enumerate() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Enumerate)
}

fn wmc() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Wmc)
}

/// Quantifier-free formula over `R/1, S/2` with terms built from `f/1, g/2, c/0`.
fn functional_formula(seed: u64) -> (Formula, Signature) {
    let mut sig = Signature::with_relations([("R", 1), ("S", 2)]);
    sig.add_function("f", 1).unwrap();
    sig.add_function("g", 2).unwrap();
    sig.add_function("c", 0).unwrap();
    let mut r = rng(seed);
    fn term(r: &mut impl Rng, depth: usize) -> Term {
        if depth == 0 || r.gen_bool(0.3) {
            return Term::var(*["x", "y"].choose(r).unwrap());
        }
        match r.gen_range(0..3) {
            0 => Term::app("f", vec![term(r, depth - 1)]),
            1 => Term::app("g", vec![term(r, depth - 1), term(r, depth - 1)]),
            _ => Term::app("c", vec![]),
        }
    }
    fn formula(r: &mut impl Rng, depth: usize) -> Formula {
        if depth == 0 || r.gen_bool(0.3) {
            return if r.gen() {
                Formula::atom("R", vec![term(r, 3)])
            } else {
                Formula::atom("S", vec![term(r, 3), term(r, 3)])
            };
        }
        match r.gen_range(0..3) {
            0 => formula(r, depth - 1).not(),
            1 => formula(r, depth - 1).and(formula(r, depth - 1)),
            _ => formula(r, depth - 1).or(formula(r, depth - 1)),
        }
    }
    (formula(&mut r, 3), sig)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let sig = binary_signature();
        let phi = Gen::new(&sig, 3, seed).sentence(5);
        prop_assert_eq!(parse_formula_raw(&phi.to_string(), &sig).unwrap(), phi.clone());
        prop_assert_eq!(parse_formula(&phi.to_string(), &sig).unwrap(), normalize_bound(&phi));
    }

    #[test]
    fn backends_agree(seed in any::<u64>(), n in 1usize..=2) {
        let sig = binary_signature();
        let mut g = Gen::new(&sig, n as u32, seed);
        let kb = g.kb(3);
        let q = g.sentence(3);
        let e = g.sentence(2);
        prop_assert_eq!(partition_function(&kb, n, &enumerate()), partition_function(&kb, n, &wmc()));
        prop_assert_eq!(event_probability(&kb, n, &q, &enumerate()), event_probability(&kb, n, &q, &wmc()));
        prop_assert_eq!(
            conditional_probability(&kb, n, &q, &e, &enumerate()),
            conditional_probability(&kb, n, &q, &e, &wmc())
        );
    }

    #[test]
    fn probabilities_of_complements_sum_to_one(seed in any::<u64>()) {
        let sig = binary_signature();
        let mut g = Gen::new(&sig, 2, seed);
        let kb = g.kb(3);
        let q = g.sentence(3);
        if let (Ok(p), Ok(np)) = (
            event_probability(&kb, 2, &q, &wmc()),
            event_probability(&kb, 2, &q.clone().not(), &wmc()),
        ) {
            prop_assert!(*p.value() <= *Probability::one().value());
            prop_assert_eq!(p.value() + np.value(), Probability::one().value().clone());
        }
    }

    #[test]
    fn subformulas_are_no_less_restrictive(seed in any::<u64>()) {
        let sig = binary_signature();
        let phi = Gen::new(&sig, 2, seed).sentence(5);
        let whole = classify_fragment(&phi);
        phi.visit(&mut |g| assert!(whole.includes(classify_fragment(g)), "{g} inside {phi}"));
    }

    #[test]
    fn substitution_replaces_free_occurrences(seed in any::<u64>(), by_var in any::<bool>()) {
        let sig = binary_signature();
        let mut g = Gen::new(&sig, 2, seed);
        let phi = g.formula(4, &mut vec!["x".to_string(), "y".to_string()]);
        let t = if by_var { Term::var("y") } else { Term::Elem(1) };
        let out = substitute(&phi, &HashMap::from([("x".to_string(), t)]));
        let before: BTreeSet<String> = phi.free_variables().into_iter().collect();
        let mut expected: BTreeSet<String> = before.iter().filter(|v| *v != "x").cloned().collect();
        if by_var && before.contains("x") {
            expected.insert("y".to_string());
        }
        let after: BTreeSet<String> = out.free_variables().into_iter().collect();
        prop_assert_eq!(after, expected);
    }

    #[test]
    fn nnf_is_idempotent(seed in any::<u64>()) {
        let sig = binary_signature();
        let phi = Gen::new(&sig, 2, seed).sentence(5);
        let once = nnf(&phi);
        prop_assert_eq!(nnf(&once), once);
    }

    #[test]
    fn term_depth_reduction_lowers_depth_by_one(seed in any::<u64>()) {
        let (phi, mut sig) = functional_formula(seed);
        let depth = phi.term_depth();
        prop_assume!(depth > 0);
        let step = reduce_term_depth(&phi, &mut sig).unwrap();
        prop_assert_eq!(step.formula.term_depth(), depth - 1);
        for (rel, arity) in &step.new_relations {
            prop_assert_eq!(sig.relation_arity(rel), Some(*arity));
        }
    }
}
