mod common;

use wfm::logic::{parse_formula, Formula, Signature, Term};
use wfm::semantics::{
    event_probability, partition_function, spectrum_member, Backend, InferenceConfig, InferenceError,
};
use wfm::transforms::{eliminate_equality, nnf, reduce_term_depth, relational_skolemize, skolemize, to_literal_weighted};
use wfm::{ExactWeight, WeightedKB};

use common::{binary_signature, small_signature, Gen, PAIRING};

fn enumerate() -> InferenceConfig {
    InferenceConfig::with_backend(Backend::Enumerate)
}

/// Number of models of a sentence over `{1..n}`.
fn model_count(sentence: &Formula, sig: &Signature, n: usize) -> ExactWeight {
    let mut kb = WeightedKB::new(sig.clone());
    kb.push(sentence.clone().not(), ExactWeight::zero()).unwrap();
    partition_function(&kb, n, &enumerate()).unwrap()
}

#[test]
fn nnf_preserves_models() {
    let sig = binary_signature();
    for seed in 0..40 {
        let phi = Gen::new(&sig, 2, seed).sentence(4);
        let psi = nnf(&phi);
        psi.visit(&mut |g| {
            if let Formula::Not(inner) = g {
                assert!(matches!(**inner, Formula::Atom(..) | Formula::Eq(..)), "{psi}");
            }
            assert!(!matches!(g, Formula::Implies(..) | Formula::Iff(..)), "{psi}");
        });
        assert_eq!(model_count(&phi, &sig, 2), model_count(&psi, &sig, 2), "{phi}");
    }
}

#[test]
fn skolem_matrix_is_open_over_the_universals() {
    let sig = binary_signature();
    for seed in 0..40 {
        let phi = Gen::new(&sig, 2, 100 + seed).sentence(4);
        let sk = skolemize(&phi, &sig).unwrap();
        assert!(!sk.matrix.has_quantifier(), "{}", sk.matrix);
        for v in sk.matrix.free_variables() {
            assert!(sk.universal_vars.contains(&v), "{v} free in {}", sk.matrix);
        }
        assert!(sk.sentence().is_sentence());
        for (f, arity) in &sk.new_functions {
            assert_eq!(sk.signature.function_arity(f), Some(*arity));
        }
    }
}

#[test]
fn relational_skolemization_preserves_the_spectrum() {
    let sig = small_signature();
    let wmc = InferenceConfig::with_backend(Backend::Wmc);
    let mut checked = 0;
    for seed in 0..40 {
        let phi = Gen::new(&sig, 1, 200 + seed).sentence(4);
        let rs = relational_skolemize(&phi, &sig).unwrap();
        assert!(!rs.sentence().has_function());
        for n in 1..=2 {
            let before = spectrum_member(&phi, &sig, n, &enumerate()).unwrap();
            match spectrum_member(&rs.sentence(), &rs.signature, n, &wmc) {
                Ok(after) => {
                    assert_eq!(before, after, "n={n}: {phi}");
                    checked += 1;
                }
                Err(InferenceError::CapacityExceeded { .. }) => {}
                Err(e) => panic!("{phi}: {e}"),
            }
        }
    }
    assert!(checked >= 60, "only {checked} cases within capacity");
}

#[test]
fn relational_skolemization_of_pairing() {
    let file = wfm::kb::parse_formula_file(PAIRING).unwrap();
    let rs = relational_skolemize(&file.formula, &file.signature).unwrap();
    assert_eq!(rs.new_relations.len(), 1);
    assert_eq!(rs.func_axioms.len(), 2);
    for n in 1..=3 {
        assert_eq!(
            spectrum_member(&rs.sentence(), &rs.signature, n, &enumerate()).unwrap(),
            n % 2 == 0
        );
    }
}

#[test]
fn term_depth_drops_by_one_per_step() {
    let mut sig = Signature::with_relations([("R", 1), ("S", 2)]);
    sig.add_function("f", 1).unwrap();
    sig.add_function("g", 2).unwrap();
    sig.add_function("c", 0).unwrap();
    let phi = parse_formula("S(f(g(x, c())), y) | !R(g(f(y), f(f(x))))", &sig).unwrap();
    let mut current = phi.clone();
    let mut depth = current.term_depth();
    assert_eq!(depth, 3);
    while depth > 0 {
        let step = reduce_term_depth(&current, &mut sig).unwrap();
        assert_eq!(step.formula.term_depth(), depth - 1, "{}", step.formula);
        current = step.formula;
        depth -= 1;
    }
    assert!(!current.has_function());
    assert!(sig.functions().is_empty());
}

#[test]
fn equality_elimination_with_identity_restores_models() {
    let sig = Signature::with_relations([("u", 2)]);
    let identity = parse_formula("forall x, y. (E(x, y) <-> x = y)", &{
        let mut s = sig.clone();
        s.add_relation("E", 2).unwrap();
        s
    })
    .unwrap();
    for text in [
        "forall x. exists y. (y != x & u(x, y))",
        "forall x, y. (u(x, y) -> x = y)",
        "exists x, y. (x != y & !u(x, y))",
    ] {
        let phi = parse_formula(text, &sig).unwrap();
        let mut extended = sig.clone();
        let psi = eliminate_equality(&phi, "E", &mut extended).unwrap();
        assert!(!psi.has_equality());
        for n in 1..=3 {
            assert_eq!(
                model_count(&phi, &sig, n),
                model_count(&psi.clone().and(identity.clone()), &extended, n),
                "{text} at n={n}"
            );
        }
    }
}

#[test]
fn equality_elimination_rejects_clashing_names() {
    let mut sig = Signature::with_relations([("E", 1)]);
    let phi = Formula::eq(Term::var("x"), Term::var("x"));
    assert!(eliminate_equality(&Formula::forall("x", phi), "E", &mut sig).is_err());
}

#[test]
fn literal_weighted_form_preserves_the_distribution() {
    let sig = small_signature();
    for seed in 0..40 {
        let mut g = Gen::new(&sig, 2, 300 + seed);
        let kb = g.kb(3);
        let lit = to_literal_weighted(&kb).unwrap();
        for item in lit.items() {
            assert!(item.weight.is_zero() || item.formula.is_literal(), "{}", item.formula);
        }
        let z = partition_function(&kb, 2, &enumerate());
        assert_eq!(z, partition_function(&lit, 2, &enumerate()), "seed {seed}");
        for _ in 0..3 {
            let q = g.sentence(3);
            assert_eq!(
                event_probability(&kb, 2, &q, &enumerate()),
                event_probability(&lit, 2, &q, &enumerate()),
                "seed {seed}, query {q}"
            );
        }
    }
}
