//! The example documents shipped with the library.

use super::diagnostic::Diagnostic;
use super::resolve::{parse_spec, Model};

#[derive(Debug, Clone, Copy)]
pub struct Builtin {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin { name: "exe1", summary: "one arrow x -> y on k e1 + k e2", source: include_str!("../../builtins/exe1.gpd") },
    Builtin {
        name: "exe2-global",
        summary: "global action of the 8-element groupoid on k^4",
        source: include_str!("../../builtins/exe2-global.gpd"),
    },
    Builtin {
        name: "ex-invariant",
        summary: "conjugation action over Q(i); eleven subgroupoids",
        source: include_str!("../../builtins/ex-invariant.gpd"),
    },
    Builtin {
        name: "groupoid-12",
        summary: "cyclic isotropy of order 3 on two objects, 12 morphisms",
        source: include_str!("../../builtins/groupoid-12.gpd"),
    },
    Builtin {
        name: "inv-semigroup",
        summary: "bijections between 2-subsets of {1,2,3}, 18 morphisms",
        source: include_str!("../../builtins/inv-semigroup.gpd"),
    },
];

pub fn builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

impl Builtin {
    pub fn load(&self) -> Result<Model, Vec<Diagnostic>> {
        parse_spec(self.source)
    }
}
