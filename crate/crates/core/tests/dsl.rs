mod common;

use gpd_core::action::PartialAction;
use gpd_core::dsl::{builtin, check_assertions, emit_spec, parse_document, parse_spec, Category, BUILTINS};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BASE: &str = "field: GF(5);
groupoid { objects: x, y; arrows: g: x -> y; }
ring { x: e1; y: e2; }
action { g: e1 -> e2; }
";

/// Every diagnostic for `text`, as `(line, column, category, message)`.
fn diagnose(text: &str) -> Vec<(usize, usize, Category, String)> {
    match parse_spec(text) {
        Ok(_) => Vec::new(),
        Err(ds) => ds.into_iter().map(|d| (d.line, d.column, d.category, d.message)).collect(),
    }
}

fn first(text: &str) -> (usize, usize, Category) {
    let ds = diagnose(text);
    assert!(!ds.is_empty(), "expected a diagnostic for:\n{text}");
    (ds[0].0, ds[0].1, ds[0].2)
}

#[test]
fn the_base_document_resolves() {
    assert!(diagnose(BASE).is_empty());
}

#[test]
fn syntax_errors_point_at_the_offending_token() {
    assert_eq!(first("field GF(5);"), (1, 7, Category::Syntax));
    assert_eq!(first(""), (1, 1, Category::Syntax));
    assert_eq!(first(&BASE.replace("g: e1 -> e2;", "g: e1 -> ;")), (4, 19, Category::Syntax));
    assert_eq!(first(&format!("{BASE}subring R = k(e1 + 2 e2);\n")), (5, 20, Category::Syntax));
    assert_eq!(first(&format!("{BASE}assert frobnicate;\n")).2, Category::Syntax);
}

#[test]
fn unknown_idempotent_is_reported_at_its_token() {
    let ds = diagnose(&BASE.replace("g: e1 -> e2;", "g: e1 -> e9;"));
    assert_eq!(ds.len(), 1);
    assert_eq!((ds[0].0, ds[0].1, ds[0].2), (4, 19, Category::UnknownName));
    assert!(ds[0].3.contains("e9"));
    assert_eq!(first(&BASE.replace("y: e2;", "z: e2;")), (3, 15, Category::UnknownName));
    assert_eq!(first(&BASE.replace("action { g:", "action { q:")).2, Category::UnknownName);
}

#[test]
fn duplicate_names() {
    assert_eq!(first(&BASE.replace("arrows: g: x -> y;", "arrows: g: x -> y, g: y -> x;")), (2, 46, Category::DuplicateName));
    assert_eq!(first(&BASE.replace("y: e2;", "y: e1;")).2, Category::DuplicateName);
}

#[test]
fn missing_sections() {
    assert_eq!(first("field: GF(5);\ngroupoid { objects: x; }\n"), (1, 1, Category::MissingSection));
    assert_eq!(first(&BASE.replace("field: GF(5);\n", "")).2, Category::MissingSection);
}

#[test]
fn invalid_fields() {
    let ds = diagnose(&BASE.replace("GF(5)", "GF(6)"));
    assert_eq!((ds[0].0, ds[0].1, ds[0].2), (1, 8, Category::InvalidField));
    assert_eq!(ds[0].3, "6 is not prime");
    assert_eq!(first(&BASE.replace("GF(5)", "Q(sqrt 4)")).2, Category::InvalidField);
}

#[test]
fn composition_problems() {
    let incomplete = "field: GF(5);
groupoid { objects: x; arrows: g: x -> x, h: x -> x; }
ring { x: e1, e2; }
action { g: e1 -> e2, e2 -> e1; h: e1 -> e1, e2 -> e2; }
";
    let ds = diagnose(incomplete);
    assert!(ds.iter().all(|d| d.2 == Category::IncompleteComposition));
    assert!(ds.len() <= 5);
    assert!(ds[0].3.contains("g g"));

    let inconsistent = "field: GF(5);
groupoid { objects: x; arrows: g: x -> x; compose: g g = x, g g = g; }
ring { x: e1, e2; }
action { g: e1 -> e2, e2 -> e1; }
";
    assert_eq!(first(inconsistent), (2, 52, Category::InconsistentComposition));
}

#[test]
fn map_problems() {
    let non_bijective = "field: GF(5);
groupoid { objects: x, y; arrows: g: x -> y; }
ring { x: e1, e3; y: e2; }
action { g: e1 -> e2, e3 -> e2; }
";
    assert_eq!(first(non_bijective), (4, 23, Category::NonBijectiveMap));
    assert_eq!(first(&BASE.replace("g: e1 -> e2;", "g: e1 -> e1;")), (4, 19, Category::DomainMismatch));
    let missing = "field: GF(5);
groupoid { objects: x; arrows: g: x -> x; compose: g g = x; }
ring { x: e1; }
action { }
";
    assert_eq!(first(missing), (2, 32, Category::MissingMap));
    let not_inverse = BASE.replace("g: e1 -> e2;", "g: e1 -> e2; g^-1: e2 -> conj e1;");
    assert!(!diagnose(&not_inverse).is_empty());
}

#[test]
fn declared_subobjects_are_checked() {
    assert_eq!(first(&format!("{BASE}subgroupoid H = {{x, g}};\n")), (5, 13, Category::NotASubgroupoid));
    assert_eq!(first(&format!("{BASE}subring R = k(e1);\n")), (5, 9, Category::InvalidSubring));
    assert_eq!(first(&format!("{BASE}subring T = GF(25)(e1) + k(e2);\n")).2, Category::InvalidSubring);
}

#[test]
fn builtins_parse_and_their_assertions_hold() {
    assert_eq!(BUILTINS.len(), common::BUILTIN_NAMES.len());
    for b in BUILTINS {
        let m = b.load().unwrap_or_else(|d| panic!("{}: {d:?}", b.name));
        for outcome in check_assertions(&m) {
            assert_eq!(outcome.holds, Ok(true), "{}: line {}: {}", b.name, outcome.line, outcome.text);
        }
    }
    assert!(builtin("nope").is_none());
}

#[test]
fn emitted_specs_are_fixed_points() {
    for b in BUILTINS {
        let doc = parse_document(b.source).unwrap();
        let once = emit_spec(&doc);
        let reparsed = parse_document(&once).unwrap_or_else(|d| panic!("{}: {d:?}\n{once}", b.name));
        assert_eq!(emit_spec(&reparsed), once, "{}", b.name);
        assert_eq!(parse_spec(&once).unwrap().action, parse_spec(b.source).unwrap().action, "{}", b.name);
    }
}

/// Writes a random action as a `.gpd` document with its full compose table.
fn to_source(a: &PartialAction) -> String {
    let g = a.groupoid();
    let ring = a.ring();
    let f = ring.field();
    let mut s = format!("field: {f};\ngroupoid {{\n  objects: {};\n", g.object_names().join(", "));
    let arrows: Vec<String> = (0..g.num_morphisms())
        .filter(|&m| !g.is_identity(m))
        .map(|m| format!("{}: {} -> {}", g.name(m), g.object_name(g.source(m)), g.object_name(g.target(m))))
        .collect();
    if !arrows.is_empty() {
        s += &format!("  arrows: {};\n", arrows.join(", "));
    }
    let products: Vec<String> = g
        .products()
        .into_iter()
        .filter(|&(a, b, _)| !g.is_identity(a) && !g.is_identity(b))
        .map(|(a, b, c)| format!("{} {} = {}", g.name(a), g.name(b), g.name(c)))
        .collect();
    if !products.is_empty() {
        s += &format!("  compose: {};\n", products.join(", "));
    }
    s += "}\nring {\n";
    for y in 0..g.num_objects() {
        let names: Vec<&str> = ring.support(y).iter().map(|&i| ring.name(i)).collect();
        s += &format!("  {}: {};\n", g.object_name(y), names.join(", "));
    }
    s += "}\naction {\n";
    for m in (0..g.num_morphisms()).filter(|&m| !g.is_identity(m)) {
        let entries: Vec<String> = a
            .map(m)
            .entries()
            .iter()
            .map(|&(i, j, p)| if p.is_identity() { format!("{} -> {}", ring.name(i), ring.name(j)) } else { format!("{} -> {} {}", ring.name(i), f.aut_name(p), ring.name(j)) })
            .collect();
        if !entries.is_empty() {
            s += &format!("  {}: {};\n", g.name(m), entries.join(", "));
        }
    }
    s + "}\n"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_documents_round_trip(seed in any::<u64>(), f in 0usize..2, full in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_action(&mut rng, &common::small_fields()[f], 6, full, seed % 2 == 0);
        prop_assume!(a.vanishing_morphism().is_none());
        let text = to_source(&a);
        let doc = parse_document(&text).unwrap();
        let once = emit_spec(&doc);
        prop_assert_eq!(emit_spec(&parse_document(&once).unwrap()), once.clone());
        let m1 = parse_spec(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        let m2 = parse_spec(&once).unwrap();
        prop_assert_eq!(&m1.action, &m2.action);
        prop_assert_eq!(m1.groupoid().num_morphisms(), a.groupoid().num_morphisms());
        prop_assert_eq!(m1.groupoid().products().len(), a.groupoid().products().len());
    }
}

#[test]
fn the_readme_sample_holds() {
    let readme = include_str!("../../../README.md");
    let start = readme.find("# '#' starts a comment").expect("sample present");
    let sample = &readme[start..start + readme[start..].find("```").unwrap()];
    let m = parse_spec(sample).unwrap_or_else(|d| panic!("{d:?}"));
    assert!(check_assertions(&m).iter().all(|a| a.holds == Ok(true)));
}
