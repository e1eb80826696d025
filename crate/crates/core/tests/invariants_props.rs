mod common;

use std::collections::BTreeSet;

use gpd_core::action::{group_type_within, PartialAction};
use gpd_core::field::CoeffField;
use gpd_core::groupoid::{enumerate_subgroupoids, Subgroupoid};
use gpd_core::invariants::{
    fixer_criterion, fixer_set, global_case_decomposition, invariance_test_via_tau_within, invariants_of, invariants_via_phi, GlobalArg,
    GlobalDecomposition,
};
use gpd_core::ring::{BlockSubring, RingElement, SplitRing};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn action(seed: u64, field: &CoeffField, full: bool) -> PartialAction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_action(&mut rng, field, 6, full, !seed.is_multiple_of(3))
}

/// `α_g(v 1_{g⁻¹}) = v 1_g`, read directly off the map's entries.
fn fixed_by(a: &PartialAction, g: usize, v: &RingElement) -> bool {
    let f = a.ring().field();
    a.map(g).entries().iter().all(|&(i, j, phi)| f.apply(phi, v.coeff(i)) == *v.coeff(j))
}

fn all_elements(r: &SplitRing) -> Vec<RingElement> {
    let field_elems = r.field().elements().expect("finite");
    let mut out = vec![Vec::new()];
    for _ in 0..r.n() {
        out = out.into_iter().flat_map(|v: Vec<_>| field_elems.iter().map(move |x| [v.clone(), vec![x.clone()]].concat())).collect();
    }
    out.into_iter().map(RingElement::from_coeffs).collect()
}

fn members(r: &SplitRing, t: &BlockSubring) -> BTreeSet<RingElement> {
    all_elements(r).into_iter().filter(|v| t.contains(r, v)).collect()
}

fn group_type_subgroupoids(a: &PartialAction) -> Vec<Subgroupoid> {
    enumerate_subgroupoids(a.groupoid(), false).into_iter().filter(|h| group_type_within(a, h).is_group_type()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Brute force over every element of `S` (GF(2), n ≤ 6).
    #[test]
    fn invariants_match_brute_force(seed in any::<u64>(), full in any::<bool>()) {
        let a = action(seed, &CoeffField::finite(2, 1).unwrap(), full);
        let elements = all_elements(a.ring());
        for h in enumerate_subgroupoids(a.groupoid(), false).into_iter().take(24) {
            let t = invariants_of(&a, &h).unwrap();
            let oracle: BTreeSet<RingElement> =
                elements.iter().filter(|v| h.morphisms().into_iter().all(|g| fixed_by(&a, g, v))).cloned().collect();
            prop_assert_eq!(members(a.ring(), &t), oracle);
        }
    }

    #[test]
    fn fixer_matches_brute_force(seed in any::<u64>()) {
        let a = action(seed, &CoeffField::finite(2, 1).unwrap(), false);
        for h in enumerate_subgroupoids(a.groupoid(), false).into_iter().take(12) {
            let t = invariants_of(&a, &h).unwrap();
            let elems = members(a.ring(), &t);
            let fixer = fixer_set(&a, &t);
            let oracle: Vec<usize> = (0..a.groupoid().num_morphisms()).filter(|&g| elems.iter().all(|v| fixed_by(&a, g, v))).collect();
            prop_assert_eq!(&fixer.morphisms, &oracle);
            // H fixes its own invariants.
            prop_assert!(h.morphisms().into_iter().all(|g| fixer.contains(g)));
        }
    }

    #[test]
    fn phi_construction_agrees_with_definition(seed in any::<u64>(), f in 0usize..2) {
        let a = action(seed, &common::small_fields()[f], false);
        for h in group_type_subgroupoids(&a).into_iter().take(24) {
            prop_assert_eq!(invariants_via_phi(&a, &h).unwrap(), invariants_of(&a, &h).unwrap());
        }
    }

    #[test]
    fn tau_test_agrees_with_definition(seed in any::<u64>(), f in 0usize..2) {
        let a = action(seed, &common::small_fields()[f], false);
        let ring = a.ring();
        for h in group_type_subgroupoids(&a).into_iter().take(12) {
            let witness = group_type_within(&a, &h).witness().unwrap().to_vec();
            let t = invariants_of(&a, &h).unwrap();
            for v in ring.prime_basis().iter().chain(t.prime_basis(ring).iter()) {
                let mut by_tau = true;
                for tr in &witness {
                    by_tau &= invariance_test_via_tau_within(&a, &h, tr, v).unwrap();
                }
                let definitional = h.morphisms().into_iter().all(|g| fixed_by(&a, g, v));
                prop_assert_eq!(by_tau, definitional);
            }
        }
    }

    #[test]
    fn fixer_criterion_sides_agree(seed in any::<u64>(), f in 0usize..2) {
        let a = action(seed, &common::small_fields()[f], false);
        prop_assume!(a.vanishing_morphism().is_none());
        for h in group_type_subgroupoids(&a).into_iter().filter(|h| h.is_wide(a.groupoid())).take(16) {
            let c = fixer_criterion(&a, &h).unwrap();
            prop_assert!(c.consistent(), "{:?}", c);
            let fixer = fixer_set(&a, &invariants_of(&a, &h).unwrap());
            prop_assert_eq!(c.is_subgroupoid, fixer.is_subgroupoid());
        }
    }

    #[test]
    fn global_actions_have_subgroupoid_fixers(seed in any::<u64>(), f in 0usize..2) {
        let a = action(seed, &common::small_fields()[f], true);
        for h in enumerate_subgroupoids(a.groupoid(), true).into_iter().take(16) {
            let t = invariants_of(&a, &h).unwrap();
            prop_assert!(fixer_set(&a, &t).is_subgroupoid());
            match global_case_decomposition(&a, GlobalArg::Subgroupoid(&h)).unwrap() {
                GlobalDecomposition::Invariants { result, .. } => prop_assert_eq!(&result, &t),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
            match global_case_decomposition(&a, GlobalArg::Subring(&t)).unwrap() {
                GlobalDecomposition::Fixer { result, .. } => prop_assert_eq!(&result, &fixer_set(&a, &t).morphisms),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}

#[test]
fn non_wide_subgroupoids_are_rejected_by_the_fixer_lemma() {
    let m = common::model("exe1");
    let g = m.groupoid();
    let just_x = Subgroupoid::from_morphisms(g, &[g.morphism_by_name("x").unwrap()]).unwrap();
    assert!(fixer_criterion(&m.action, &just_x).is_err());
}

#[test]
fn vanishing_morphisms_are_outside_the_fixer_lemma() {
    // bg_b0_b1_0 has an empty domain, so it fixes everything vacuously.
    let mut rng = ChaCha8Rng::seed_from_u64(3121830611734919550);
    let a = common::random_action(&mut rng, &common::small_fields()[0], 6, false, true);
    assert!(a.vanishing_morphism().is_some());
    let g = a.groupoid();
    let h = enumerate_subgroupoids(g, true).into_iter().find(|h| group_type_within(&a, h).is_group_type()).unwrap();
    assert!(matches!(fixer_criterion(&a, &h), Err(gpd_core::Error::HypothesisUnmet(_))));
}

#[test]
fn ex_invariant_values() {
    let m = common::model("ex-invariant");
    let a = &m.action;
    assert_eq!(&invariants_of(a, m.subgroupoid("H8").unwrap()).unwrap(), m.subring("T8").unwrap());
    let t = m.subring("T").unwrap();
    let f = fixer_set(a, t);
    assert!(!f.is_subgroupoid());
    let names: Vec<&str> = f.morphisms.iter().map(|&g| a.groupoid().name(g)).collect();
    assert_eq!(names.len(), 6, "{names:?}");
}
