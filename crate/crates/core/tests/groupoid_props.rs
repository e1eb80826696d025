mod common;

use std::collections::BTreeSet;

use gpd_core::groupoid::{
    coarse_isomorphism, connected_components, enumerate_subgroupoids, enumerate_transversals, is_subgroupoid, subgroupoid_closure, tau_of,
    validate_groupoid, FiniteGroupoid, Subgroupoid,
};
use proptest::prelude::*;

/// Disjoint union of `Y_r² × C_k` pieces, named apart.
fn build(pieces: &[(usize, usize)]) -> FiniteGroupoid {
    let mut out: Option<FiniteGroupoid> = None;
    for (p, &(r, k)) in pieces.iter().enumerate() {
        let names: Vec<String> = (0..r).map(|y| format!("o{p}_{y}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = FiniteGroupoid::pair_cyclic(&refs, k).renamed(|s| if s.starts_with("g_") { format!("p{p}{s}") } else { s.to_string() });
        out = Some(match out {
            None => g,
            Some(h) => h.disjoint_union(&g).unwrap(),
        });
    }
    out.unwrap()
}

fn groupoid_strategy() -> impl Strategy<Value = FiniteGroupoid> {
    prop::collection::vec((1usize..=3, 1usize..=4), 1..=3)
        .prop_filter("at most 12 morphisms", |ps| ps.iter().map(|&(r, k)| r * r * k).sum::<usize>() <= 12)
        .prop_map(|ps| build(&ps))
}

/// Independent definition: a nonempty set closed under inverses and
/// defined products.
fn closed(g: &FiniteGroupoid, set: &BTreeSet<usize>) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| set.contains(&g.inverse(a)))
        && set.iter().all(|&a| set.iter().all(|&b| g.compose(a, b).is_none_or(|ab| set.contains(&ab))))
}

fn brute_force_subgroupoids(g: &FiniteGroupoid, wide_only: bool) -> BTreeSet<Vec<usize>> {
    let n = g.num_morphisms();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| closed(g, s))
        .filter(|s| !wide_only || (0..g.num_objects()).all(|x| s.contains(&g.identity(x))))
        .map(|s| s.into_iter().collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_groupoids_validate(g in groupoid_strategy()) {
        prop_assert!(validate_groupoid(&g).is_ok());
    }

    #[test]
    fn components_partition_objects_and_morphisms(g in groupoid_strategy()) {
        let comps = connected_components(&g);
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        for c in &comps {
            objects.extend_from_slice(c.objects());
            morphisms.extend(c.morphisms());
            // connected: every hom-set inside the component is nonempty
            for &x in c.objects() {
                for &y in c.objects() {
                    prop_assert!(!g.hom(x, y).is_empty());
                }
            }
        }
        objects.sort();
        morphisms.sort();
        prop_assert_eq!(objects, (0..g.num_objects()).collect::<Vec<_>>());
        prop_assert_eq!(morphisms, (0..g.num_morphisms()).collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_matches_brute_force(g in groupoid_strategy()) {
        for wide in [false, true] {
            let got: BTreeSet<Vec<usize>> = enumerate_subgroupoids(&g, wide).iter().map(Subgroupoid::morphisms).collect();
            prop_assert_eq!(got, brute_force_subgroupoids(&g, wide));
        }
    }

    #[test]
    fn subgroupoids_are_closure_fixed_points(g in groupoid_strategy()) {
        for h in enumerate_subgroupoids(&g, false) {
            prop_assert_eq!(&subgroupoid_closure(&g, &h.morphisms(), h.objects()), &h);
            prop_assert!(is_subgroupoid(&g, &h.morphisms()));
        }
    }

    #[test]
    fn closure_is_least(g in groupoid_strategy(), picks in prop::collection::vec(0usize..64, 0..4)) {
        let gens: Vec<usize> = picks.iter().map(|p| p % g.num_morphisms()).collect();
        let c = subgroupoid_closure(&g, &gens, &[0]);
        for h in enumerate_subgroupoids(&g, false) {
            if gens.iter().all(|&a| h.contains(a)) && h.contains_object(0) {
                prop_assert!(c.is_subset(&h));
            }
        }
    }

    #[test]
    fn tau_is_a_homomorphism_onto_the_isotropy_group(g in groupoid_strategy()) {
        for comp in connected_components(&g) {
            let x = comp.objects()[0];
            for t in enumerate_transversals(&g, x).take(3) {
                for a in comp.morphisms() {
                    let ta = tau_of(&g, &t, a).unwrap();
                    prop_assert_eq!((g.source(ta), g.target(ta)), (x, x));
                    if g.is_identity(a) {
                        prop_assert_eq!(ta, g.identity(x));
                    }
                    for b in comp.morphisms() {
                        if let Some(ab) = g.compose(a, b) {
                            let tb = tau_of(&g, &t, b).unwrap();
                            prop_assert_eq!(tau_of(&g, &t, ab).unwrap(), g.mul(ta, tb));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn connected_groupoids_are_coarsely_isomorphic_to_pair_times_isotropy(r in 1usize..=3, k in 1usize..=4) {
        prop_assume!(r * r * k <= 12);
        let g = build(&[(r, k)]);
        for t in enumerate_transversals(&g, 0).take(4) {
            let iso = coarse_isomorphism(&g, &t).unwrap();
            prop_assert_eq!(iso.isotropy_order, k);
            let images: BTreeSet<_> = iso.images.iter().collect();
            prop_assert_eq!(images.len(), r * r * k);
        }
    }
}

#[test]
fn disconnected_groupoids_have_no_coarse_isomorphism() {
    let g = build(&[(1, 2), (2, 1)]);
    let t = enumerate_transversals(&g, 0).next().unwrap();
    assert!(coarse_isomorphism(&g, &t).is_err());
}

#[test]
fn builtin_groupoids_enumerate_like_brute_force() {
    for name in common::BUILTIN_NAMES {
        let m = common::model(name);
        let g = m.groupoid();
        assert!(validate_groupoid(g).is_ok(), "{name}");
        let got: BTreeSet<Vec<usize>> = enumerate_subgroupoids(g, false).iter().map(Subgroupoid::morphisms).collect();
        assert_eq!(got, brute_force_subgroupoids(g, false), "{name}");
    }
}

#[test]
fn ex_invariant_has_eleven_subgroupoids() {
    let m = common::model("ex-invariant");
    assert_eq!(enumerate_subgroupoids(m.groupoid(), false).len(), 11);
    assert_eq!(enumerate_subgroupoids(m.groupoid(), true).len(), 7);
}

#[test]
fn inv_semigroup_is_pair_groupoid_times_c2() {
    let m = common::model("inv-semigroup");
    let g = m.groupoid();
    assert_eq!(connected_components(g).len(), 1);
    let t = enumerate_transversals(g, 0).next().unwrap();
    let iso = coarse_isomorphism(g, &t).unwrap();
    assert_eq!((g.num_objects(), iso.isotropy_order), (3, 2));
}
