use crate::action::{group_type_within, validate_action};
use crate::galois::{alpha_strong_check, correspondence, is_galois};
use crate::groupoid::validate_groupoid;
use crate::invariants::{fixer_set, invariants_of};
use crate::separability::separability_check;

use super::ast::Assertion;
use super::resolve::{words_text, Model};

/// The result of one `assert` line. `Err` means the assertion could not be
/// evaluated (for instance a failing precondition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionOutcome {
    pub line: usize,
    pub text: String,
    pub holds: Result<bool, String>,
}

pub fn check_assertions(model: &Model) -> Vec<AssertionOutcome> {
    model.document.assertions.iter().map(|a| check_one(model, a)).collect()
}

fn check_one(model: &Model, a: &Assertion) -> AssertionOutcome {
    let act = &model.action;
    let w: Vec<&str> = a.words.iter().map(|n| n.value.as_str()).collect();
    let h = |name: &str| model.subgroupoid(name).ok_or_else(|| format!("no subgroupoid named {name}"));
    let t = |name: &str| model.subring(name).ok_or_else(|| format!("no subring named {name}"));
    let holds: Result<bool, String> = match w.as_slice() {
        ["valid"] => Ok(validate_groupoid(act.groupoid()).is_ok() && validate_action(act).is_ok()),
        ["galois"] => Ok(is_galois(act)),
        ["grouptype", hn] => h(hn).map(|h| group_type_within(act, h).is_group_type()),
        ["not", "grouptype", hn] => h(hn).map(|h| !group_type_within(act, h).is_group_type()),
        ["invariants", hn, tn] => h(hn).and_then(|h| t(tn).and_then(|t| Ok(invariants_of(act, h).map_err(|e| e.to_string())? == *t))),
        ["fixer", tn, hn] => h(hn).and_then(|h| t(tn).map(|t| fixer_set(act, t).subgroupoid.as_ref() == Some(h))),
        ["strong", tn] => t(tn).map(|t| alpha_strong_check(act, t).is_strong()),
        ["separable", tn] => t(tn).and_then(|t| {
            let r = invariants_of(act, &act.groupoid().all()).map_err(|e| e.to_string())?;
            separability_check(act.ring(), t, &r).map(|s| s.is_separable()).map_err(|e| e.to_string())
        }),
        ["rows", n] => n
            .parse::<usize>()
            .map_err(|e| e.to_string())
            .and_then(|n| correspondence(act).map(|c| c.rows.len() == n).map_err(|e| e.to_string())),
        _ => Err("unrecognised assertion".into()),
    };
    AssertionOutcome { line: a.span.0.line, text: words_text(&a.words), holds }
}
