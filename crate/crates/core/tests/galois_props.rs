mod common;

use std::collections::BTreeSet;

use gpd_core::action::{group_type_within, validate_action, PartialAction};
use gpd_core::error::Error;
use gpd_core::exec::Exec;
use gpd_core::field::CoeffField;
use gpd_core::galois::{
    alpha_strong_check, class_b, correspondence, correspondence_by_components, correspondence_with, find_coords, glue_coords, split_coords,
    verify_coords, GaloisCoords,
};
use gpd_core::groupoid::connected_components;
use gpd_core::ring::{BlockSubring, RingElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random actions satisfying the correspondence hypotheses: group-type,
/// `1_g ≠ 0`, with a coordinate system.
fn galois_samples(seed: u64, count: usize) -> Vec<PartialAction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = common::small_fields();
    let mut out = Vec::new();
    while out.len() < count {
        let f = &fields[rng.gen_range(0..2)];
        let (full, semi) = (rng.gen_bool(0.4), rng.gen_bool(0.6));
        let a = common::random_action(&mut rng, f, 6, full, semi);
        if group_type_within(&a, &a.groupoid().all()).is_group_type() && a.vanishing_morphism().is_none() && find_coords(&a).is_some() {
            out.push(a);
        }
    }
    out
}

fn rows(t: &gpd_core::galois::CorrespondenceTable) -> BTreeSet<(Vec<usize>, BlockSubring)> {
    t.rows.iter().map(|r| (r.subgroupoid.morphisms(), r.subring.clone())).collect()
}

#[test]
fn found_coordinates_verify() {
    for a in galois_samples(1, 30) {
        let c = find_coords(&a).unwrap();
        assert!(verify_coords(&a, &c).is_ok());
    }
    for name in ["exe1", "exe2-global", "groupoid-12"] {
        let a = common::model(name).action;
        assert_eq!(find_coords(&a), Some(GaloisCoords::idempotent_basis(&a)), "{name}");
    }
}

#[test]
fn split_and_glue_round_trip() {
    for a in galois_samples(2, 30) {
        let c = find_coords(&a).unwrap();
        let parts = split_coords(&a, &c).unwrap();
        assert_eq!(parts.len(), connected_components(a.groupoid()).len());
        let glued = glue_coords(&a, &parts).unwrap();
        assert!(verify_coords(&a, &glued).is_ok());
    }
}

#[test]
fn random_certificates_and_strong_agreement() {
    for a in galois_samples(3, 30) {
        let table = correspondence(&a).unwrap();
        let c = &table.certificate;
        assert!(c.fixer_of_invariants && c.invariants_of_fixer && c.covers_class_b);
        assert_eq!(c.class_b_size, table.rows.len());
        let b: BTreeSet<BlockSubring> = class_b(&a).unwrap().into_iter().collect();
        assert_eq!(b, table.rows.iter().map(|r| r.subring.clone()).collect());
        for row in &table.rows {
            let report = alpha_strong_check(&a, &row.subring);
            assert!(report.agree() && report.is_strong(), "{report:?}");
        }
    }
}

#[test]
fn component_gluing_matches_the_direct_table() {
    for a in galois_samples(4, 20) {
        let direct = correspondence(&a).unwrap();
        let glued = correspondence_by_components(&a).unwrap();
        assert_eq!(rows(&direct), rows(&glued));
        assert_eq!(direct.certificate.rejected_not_group_type, glued.certificate.rejected_not_group_type);
    }
}

#[test]
fn sequential_and_parallel_tables_are_identical() {
    for a in galois_samples(5, 12) {
        let s = correspondence_with(&a, Exec::Sequential).unwrap();
        let p = correspondence_with(&a, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }
}

#[test]
fn builtin_tables_have_the_expected_sizes() {
    for (name, n) in [("exe1", 2), ("exe2-global", 7), ("ex-invariant", 6), ("groupoid-12", 6)] {
        let t = correspondence(&common::model(name).action).unwrap();
        assert_eq!(t.rows.len(), n, "{name}");
    }
}

#[test]
fn hypotheses_are_enforced() {
    // Not a partial Galois extension: the trivial action of a group of order 2.
    let doc = "field: GF(3);
groupoid { objects: x; arrows: g: x -> x; compose: g g = x; }
ring { x: e1; }
action { g: e1 -> e1; }
";
    let m = gpd_core::dsl::parse_spec(doc).unwrap();
    assert!(validate_action(&m.action).is_ok());
    assert!(find_coords(&m.action).is_none());
    assert!(matches!(correspondence(&m.action), Err(Error::HypothesisUnmet(_))));
}

/// With no coordinate system found, an exhaustive search over short systems
/// in tiny rings finds none either.
#[test]
fn absent_coordinates_are_absent_among_short_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = CoeffField::finite(2, 1).unwrap();
    let mut checked = 0;
    while checked < 10 {
        let semiregular = rng.gen_bool(0.5);
        let a = common::random_action(&mut rng, &f, 3, false, semiregular);
        if find_coords(&a).is_some() {
            continue;
        }
        let n = a.ring().n();
        let elems: Vec<RingElement> =
            (0..1u32 << n).map(|mask| RingElement::from_coeffs((0..n).map(|i| f.from_i64((mask >> i & 1) as i64)).collect())).collect();
        for a1 in &elems {
            for b1 in &elems {
                for a2 in &elems {
                    for b2 in &elems {
                        let c = GaloisCoords { a: vec![a1.clone(), a2.clone()], b: vec![b1.clone(), b2.clone()] };
                        assert!(verify_coords(&a, &c).is_err());
                    }
                }
            }
        }
        checked += 1;
    }
}
