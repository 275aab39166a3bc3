use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plausible::algebra::{alg_validates, FinitePlausibilityAlgebra};
use plausible::formula::{translate, Dialect, Formula};
use plausible::proof::{check_proof, translate_proof, ProofBuilder, SystemId};
use plausible::search::{find_countermodel, random_model, ModelClass, SearchBounds, SearchVerdict};
use plausible::semantics::{KripkeModel, Model, ModelFile, NeighborhoodModel, WorldSet};

/// Formulas over p0..p2 of depth at most 3 using `modal` as the only modality.
fn formula(modal: fn(Formula) -> Formula) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => (0u32..3).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(3, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            inner.prop_map(modal),
        ]
    })
}

fn boxed() -> impl Strategy<Value = Formula> {
    formula(Formula::necessarily)
}

fn nabla() -> impl Strategy<Value = Formula> {
    formula(Formula::plausibly)
}

fn neighborhood(class: ModelClass, seed: u64) -> NeighborhoodModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match random_model(class, 3, &[0, 1, 2], &mut rng) {
        ModelFile::Neighborhood(m) => m,
        other => panic!("expected a neighborhood model, got {}", other.kind()),
    }
}

fn erase_nabla(f: &Formula) -> Formula {
    match f {
        Formula::Nabla(a) => erase_nabla(a),
        Formula::Not(a) => Formula::not(erase_nabla(a)),
        Formula::And(a, b) => Formula::and(erase_nabla(a), erase_nabla(b)),
        Formula::Or(a, b) => Formula::or(erase_nabla(a), erase_nabla(b)),
        Formula::Implies(a, b) => Formula::implies(erase_nabla(a), erase_nabla(b)),
        Formula::Iff(a, b) => Formula::iff(erase_nabla(a), erase_nabla(b)),
        other => other.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lpbox_axiom_instances_hold_in_constrained_models(a in boxed(), b in boxed(), seed in any::<u64>()) {
        let m = neighborhood(ModelClass::ConstrainedNeighborhood, seed);
        for id in ["C", "H", "T", "N"] {
            let schema = SystemId::LPBox.schema(id).unwrap();
            let inst = schema.pattern().substitute(&|i| match i {
                0 => Some(a.clone()),
                1 => Some(b.clone()),
                _ => None,
            });
            prop_assert!(m.is_valid(&inst).unwrap(), "{} instance {} fails", id, inst);
        }
    }

    #[test]
    fn constrained_models_are_reflexive_kripke_models(f in boxed(), seed in any::<u64>()) {
        let m = neighborhood(ModelClass::ConstrainedNeighborhood, seed);
        let n = m.world_count();
        // The core at w is the least set in S(w); R(w) is that core.
        let relation: Vec<(usize, usize)> = (0..n)
            .flat_map(|w| {
                let core = m.neighborhoods(w).iter().fold(WorldSet::full(n), |acc, x| acc.intersection(*x));
                core.iter().map(move |v| (w, v))
            })
            .collect();
        let k = KripkeModel::new(n, relation, m.valuation().clone()).unwrap();
        prop_assert!(k.relation_properties().reflexive);
        prop_assert_eq!(m.truth_set(&f).unwrap(), k.truth_set(&f).unwrap());
    }

    #[test]
    fn supplement_fixes_constrained_models(seed in any::<u64>()) {
        let m = neighborhood(ModelClass::ConstrainedNeighborhood, seed);
        prop_assert_eq!(m.supplement(), m.clone());
        prop_assert!(m.check_conditions().all_hold());
    }

    #[test]
    fn countermodels_refute(f in boxed()) {
        let b = SearchBounds::new(ModelClass::RawNeighborhood, 2, f.atoms());
        let out = find_countermodel(&f, &b).unwrap();
        if let SearchVerdict::CountermodelFound { model: ModelFile::Neighborhood(m), world } = out.verdict {
            prop_assert!(!m.eval(world, &f).unwrap());
        }
    }

    #[test]
    fn nabla_translation_round_trips(f in nabla()) {
        let there = translate(&f, Dialect::NablaSystem, Dialect::BoxSystem).unwrap();
        prop_assert!(Dialect::BoxSystem.admits(&there));
        prop_assert_eq!(translate(&there, Dialect::BoxSystem, Dialect::NablaSystem).unwrap(), f);
    }

    /// With sharp the identity, `nabla` is inert, so validity is classical
    /// validity of the formula with every `nabla` erased.
    #[test]
    fn identity_algebra_is_classical(f in nabla()) {
        let alg = FinitePlausibilityAlgebra::identity(2).unwrap();
        let erased = erase_nabla(&f);
        let b = SearchBounds::new(ModelClass::Universal, 1, erased.atoms());
        let tautology = find_countermodel(&erased, &b).unwrap().verdict == SearchVerdict::ExhaustedValid;
        let valid_k2 = alg_validates(&alg, &f).unwrap();
        let valid_k1 = alg_validates(&FinitePlausibilityAlgebra::identity(1).unwrap(), &f).unwrap();
        prop_assert_eq!(valid_k1, tautology);
        prop_assert_eq!(valid_k2, tautology);
    }

    #[test]
    fn built_lpbox_proofs_are_accepted_sound_and_translate(a in boxed(), seed in any::<u64>()) {
        let mut pb = ProofBuilder::new(SystemId::LPBox);
        let em = pb.excluded_middle(&a);
        let id = pb.identity(&a);
        let iff = pb.iff_intro(id, id);
        pb.re(iff);
        let proof = pb.finish_with(em);
        prop_assert!(check_proof(&proof).unwrap().is_accepted());
        prop_assert_eq!(&proof.conclusion, &Formula::or(a.clone(), Formula::not(a.clone())));
        // Every line of a premise-free proof holds in every constrained model.
        let m = neighborhood(ModelClass::ConstrainedNeighborhood, seed);
        for line in &proof.lines {
            prop_assert!(m.is_valid(&line.formula).unwrap(), "line {} fails", line.formula);
        }
        let t = translate_proof(&proof, SystemId::LNabla).unwrap();
        prop_assert!(check_proof(&t.proof).unwrap().is_accepted());
        let back = translate_proof(&t.proof, SystemId::LPBox).unwrap();
        prop_assert_eq!(back.proof.conclusion, proof.conclusion);
    }

    #[test]
    fn built_lnabla_proofs_translate(a in nabla(), b in nabla()) {
        let mut pb = ProofBuilder::new(SystemId::LNabla);
        let ab = pb.axiom("PL1", &[a.clone(), b.clone()]);
        let lifted = pb.rnabla(ab);
        let proof = pb.finish_with(lifted);
        prop_assert!(check_proof(&proof).unwrap().is_accepted());
        let t = translate_proof(&proof, SystemId::LPBox).unwrap();
        prop_assert!(check_proof(&t.proof).unwrap().is_accepted());
        prop_assert_eq!(
            t.proof.conclusion,
            translate(&proof.conclusion, Dialect::NablaSystem, Dialect::BoxSystem).unwrap()
        );
    }

    #[test]
    fn s5_necessitation_of_theorems_is_valid(a in formula(Formula::necessarily), seed in any::<u64>()) {
        let mut pb = ProofBuilder::new(SystemId::S5);
        let id = pb.identity(&a);
        let nec = pb.rn(id);
        let proof = pb.finish_with(nec);
        prop_assert!(check_proof(&proof).unwrap().is_accepted());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_model(ModelClass::KripkeEquivalence, 3, &[0, 1, 2], &mut rng);
        let ModelFile::Kripke(k) = m else { panic!("expected a Kripke model") };
        prop_assert!(k.is_valid(&proof.conclusion).unwrap());
    }
}
