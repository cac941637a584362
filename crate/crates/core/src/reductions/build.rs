//! The knowledge bases of the three spectrum reductions.
//!
//! Each construction takes a relational sentence `φ` over `S` and produces a
//! knowledge base with two fresh nullary atoms `a()`, `b()` such that
//! `P(a())` is large when `n ∈ spec(φ)` and zero / small otherwise.

use num_bigint::BigUint;
use num_traits::One;

use crate::kb::WeightedKB;
use crate::logic::{Formula, Signature, Term};
use crate::semantics::num_ground_atoms;
use crate::transforms::{eliminate_equality, relational_skolemize};
use crate::weight::ExactWeight;

use super::{ItemRole, ReductionError, ReductionKB, Theorem};

fn vars(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn atom(rel: &str, vars: &[String]) -> Formula {
    Formula::atom(rel, vars.iter().map(Term::var).collect())
}

fn check_input(phi: &Formula) -> Result<(), ReductionError> {
    let free = phi.free_variables();
    if !free.is_empty() {
        return Err(ReductionError::NotASentence(free.join(", ")));
    }
    if phi.has_function() {
        return Err(ReductionError::NotRelational);
    }
    Ok(())
}

/// Fresh nullary query atoms, `a` and `b` unless those names are taken.
fn query_atoms(sig: &mut Signature) -> (String, String) {
    let a = sig.fresh_like("a");
    sig.add_relation(&a, 0).expect("fresh name");
    let b = sig.fresh_like("b");
    sig.add_relation(&b, 0).expect("fresh name");
    (a, b)
}

struct Builder {
    kb: WeightedKB,
    roles: Vec<ItemRole>,
}

impl Builder {
    fn push(&mut self, role: ItemRole, f: Formula, w: ExactWeight) -> Result<(), ReductionError> {
        self.kb.push(f, w)?;
        self.roles.push(role);
        Ok(())
    }
}

/// `¬(φ ↔ a()) : 0`, `¬((⋀_R ∀x̄ ¬R(x̄)) ↔ b()) : 0`, `¬(a() ∨ b()) : 0`.
pub fn build_thm2_kb(phi: &Formula, sig: &Signature) -> Result<ReductionKB, ReductionError> {
    check_input(phi)?;
    let mut full = sig.clone();
    let (a, b) = query_atoms(&mut full);
    let all_empty = Formula::conjunction(sig.relations().iter().map(|(r, k)| {
        let xs = vars("x", *k);
        Formula::forall_many(&xs, atom(r, &xs).not())
    }));
    let mut builder = Builder {
        kb: WeightedKB::new(full),
        roles: Vec::new(),
    };
    let zero = ExactWeight::zero;
    builder.push(ItemRole::QueryIffSentence, phi.clone().iff(Formula::nullary(&a)).not(), zero())?;
    builder.push(ItemRole::EmptyIffB, all_empty.iff(Formula::nullary(&b)).not(), zero())?;
    builder.push(
        ItemRole::AOrB,
        Formula::nullary(&a).or(Formula::nullary(&b)).not(),
        zero(),
    )?;
    Ok(ReductionKB {
        theorem: Theorem::Two,
        kb: builder.kb,
        roles: builder.roles,
        a,
        b,
        n: None,
        w: None,
        k: None,
        atoms: None,
    })
}

/// `10 · 2^atoms`.
fn calibrated_weight(atoms: u64) -> ExactWeight {
    ExactWeight::from_biguint(BigUint::from(10u32) * (BigUint::one() << atoms as usize))
}

/// Knowledge base with equality (Theorem 3) or with equality replaced by a
/// penalized relation `E` (Theorem 4), calibrated for domain size `n`.
pub fn build_thm3_kb(phi: &Formula, sig: &Signature, n: usize) -> Result<ReductionKB, ReductionError> {
    build_weighted(phi, sig, n, false)
}

pub fn build_thm4_kb(phi: &Formula, sig: &Signature, n: usize) -> Result<ReductionKB, ReductionError> {
    build_weighted(phi, sig, n, true)
}

fn build_weighted(phi: &Formula, sig: &Signature, n: usize, no_equality: bool) -> Result<ReductionKB, ReductionError> {
    check_input(phi)?;
    if n == 0 {
        return Err(ReductionError::EmptyDomain);
    }
    let rs = relational_skolemize(phi, sig)?;
    let mut full = rs.signature.clone();
    let graphs = rs.new_relations.clone();
    let complements: Vec<(String, usize)> = graphs
        .iter()
        .map(|(r, k)| {
            let name = full.fresh_like(&format!("_pp{r}"));
            full.add_relation(&name, k - 1).expect("fresh name");
            (name, k - 1)
        })
        .collect();
    let equality = if no_equality {
        let e = full.fresh_like("_E");
        full.add_relation(&e, 2).expect("fresh name");
        let epp = full.fresh_like("_Epp");
        full.add_relation(&epp, 1).expect("fresh name");
        Some((e, epp))
    } else {
        None
    };
    let (a, b) = query_atoms(&mut full);

    let atoms = num_ground_atoms(&full, n).ok_or(ReductionError::TooLarge)?;
    let k_n: u64 = graphs
        .iter()
        .map(|(_, k)| (n as u64).checked_pow(*k as u32 - 1))
        .sum::<Option<u64>>()
        .ok_or(ReductionError::TooLarge)?;
    let w = calibrated_weight(atoms);
    let inv_w = w.recip().expect("w > 0");

    // Equalities become E-atoms in the Theorem 4 variant.
    let mut scratch = full.clone();
    let mut strip_eq = |f: Formula| -> Result<Formula, ReductionError> {
        match &equality {
            Some((e, _)) => Ok(eliminate_equality(&f, e, &mut scratch)?),
            None => Ok(f),
        }
    };

    let (fa, fb) = (Formula::nullary(&a), Formula::nullary(&b));
    let zero = ExactWeight::zero;
    let mut builder = Builder {
        kb: WeightedKB::new(full.clone()),
        roles: Vec::new(),
    };
    builder.push(
        ItemRole::SentenceUnderA,
        strip_eq(fa.clone().and(rs.matrix.clone().not()))?,
        zero(),
    )?;
    for (r, k) in &graphs {
        let xs = vars("x", k - 1);
        let mut first = xs.clone();
        first.push("y".into());
        let mut second = xs.clone();
        second.push("y'".into());
        let clash = atom(r, &first)
            .and(atom(r, &second))
            .and(Formula::neq(Term::var("y"), Term::var("y'")));
        builder.push(ItemRole::Functional, strip_eq(clash)?, zero())?;
    }
    for (r, k) in &graphs {
        let mut xs = vars("x", k - 1);
        xs.push("y".into());
        builder.push(ItemRole::GraphWeight, fa.clone().and(atom(r, &xs)), w.clone())?;
    }
    for (r, k) in sig.relations() {
        builder.push(ItemRole::EmptyUnderB, fb.clone().and(atom(r, &vars("x", *k))), zero())?;
    }
    for (r, k) in &graphs {
        let mut xs = vars("x", k - 1);
        xs.push("y".into());
        builder.push(ItemRole::GraphEmptyUnderB, fb.clone().and(atom(r, &xs)), zero())?;
    }
    for (r, k) in &complements {
        let xs = vars("x", *k);
        builder.push(ItemRole::ComplementWeight, fb.clone().and(atom(r, &xs)), w.clone())?;
        builder.push(ItemRole::ComplementFull, fb.clone().and(atom(r, &xs).not()), zero())?;
        builder.push(ItemRole::ComplementEmptyUnderA, fa.clone().and(atom(r, &xs)), zero())?;
    }
    if let Some((e, epp)) = &equality {
        let xx = [String::from("x"), String::from("x")];
        let xy = [String::from("x"), String::from("y")];
        let x = [String::from("x")];
        builder.push(ItemRole::IdentityReflexive, fa.clone().and(atom(e, &xx).not()), zero())?;
        builder.push(ItemRole::IdentityPenalty, fa.clone().and(atom(e, &xy)), inv_w.clone())?;
        builder.push(ItemRole::IdentityEmptyUnderB, fb.clone().and(atom(e, &xy)), zero())?;
        builder.push(ItemRole::IdentityComplementWeight, fb.clone().and(atom(epp, &x)), inv_w.clone())?;
        builder.push(ItemRole::IdentityComplementFull, fb.clone().and(atom(epp, &x).not()), zero())?;
        builder.push(ItemRole::IdentityComplementEmptyUnderA, fa.clone().and(atom(epp, &x)), zero())?;
    }
    builder.push(ItemRole::AOrB, fa.or(fb).not(), zero())?;

    Ok(ReductionKB {
        theorem: if no_equality { Theorem::Four } else { Theorem::Three },
        kb: builder.kb,
        roles: builder.roles,
        a,
        b,
        n: Some(n),
        w: Some(w),
        k: Some(k_n),
        atoms: Some(atoms),
    })
}
