//! Frozen emitter output. Run with `GPD_BLESS=1` to rewrite the files after
//! an intentional format change.

mod common;

use std::path::PathBuf;

use gpd_core::action::validate_action;
use gpd_core::dsl::emit::Components;
use gpd_core::dsl::{emit_to_string, Emit, Format};
use gpd_core::galois::{alpha_strong_check, correspondence, find_coords};
use gpd_core::groupoid::connected_components;
use gpd_core::invariants::{fixer_set, invariants_of};

fn check(file: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    if std::env::var_os("GPD_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e} (run with GPD_BLESS=1)", path.display()));
    assert_eq!(actual, expected, "{file} differs from the golden copy");
}

fn both(stem: &str, model: &str, item: impl Fn(&gpd_core::dsl::Model) -> Box<dyn Emit>) {
    let m = common::model(model);
    let it = item(&m);
    let text = emit_to_string(it.as_ref(), &m.action, Format::Text);
    let structured = emit_to_string(it.as_ref(), &m.action, Format::Structured);
    // Emission is deterministic.
    assert_eq!(text, emit_to_string(it.as_ref(), &m.action, Format::Text));
    assert_eq!(structured, emit_to_string(it.as_ref(), &m.action, Format::Structured));
    check(&format!("{stem}.txt"), &text);
    check(&format!("{stem}.json"), &structured);
}

#[test]
fn groupoid_12_correspondence() {
    both("groupoid-12-correspondence", "groupoid-12", |m| Box::new(correspondence(&m.action).unwrap()));
}

#[test]
fn exe2_correspondence() {
    both("exe2-correspondence", "exe2-global", |m| Box::new(correspondence(&m.action).unwrap()));
}

#[test]
fn validation_reports() {
    both("exe1-validate", "exe1", |m| Box::new(validate_action(&m.action)));
    both("inv-semigroup-validate", "inv-semigroup", |m| Box::new(validate_action(&m.action)));
}

#[test]
fn ex_invariant_subrings_and_fixers() {
    both("ex-invariant-t11", "ex-invariant", |m| Box::new(invariants_of(&m.action, m.subgroupoid("H11").unwrap()).unwrap()));
    both("ex-invariant-fixer", "ex-invariant", |m| Box::new(fixer_set(&m.action, m.subring("T").unwrap())));
    both("ex-invariant-components", "ex-invariant", |m| Box::new(Components(connected_components(m.groupoid()))));
}

#[test]
fn coordinates_and_strength() {
    both("exe2-coords", "exe2-global", |m| Box::new(find_coords(&m.action)));
    both("exe1-strong", "exe1", |m| Box::new(alpha_strong_check(&m.action, m.subring("R").unwrap())));
}
