//! Deterministic emitters: the canonical `.gpd` text of a [`SpecDocument`],
//! and text-table / structured (JSON, sorted keys) renderings of results.
//! The structured schema is described in `docs/structured-output.md`.

use std::io::{self, Write};

use itertools::Itertools;
use serde_json::{json, Map, Value};

use crate::action::{GroupType, PartialAction};
use crate::galois::{CorrespondenceTable, GaloisCoords, StrongReport};
use crate::groupoid::{FiniteGroupoid, MorphismId, Subgroupoid};
use crate::invariants::FixerSet;
use crate::report::ValidationReport;
use crate::ring::{BlockSubring, SplitRing};

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Anything the CLI can print. `act` supplies names and the field.
pub trait Emit {
    fn text(&self, act: &PartialAction) -> String;
    fn structured(&self, act: &PartialAction) -> Value;
}

/// Writes `item` in the requested format, always ending with a newline.
pub fn emit<W: Write + ?Sized>(out: &mut W, item: &dyn Emit, act: &PartialAction, format: Format) -> io::Result<()> {
    out.write_all(emit_to_string(item, act, format).as_bytes())
}

pub fn emit_to_string(item: &dyn Emit, act: &PartialAction, format: Format) -> String {
    let mut s = match format {
        Format::Text => item.text(act),
        Format::Structured => serde_json::to_string_pretty(&sorted(item.structured(act))).expect("JSON values serialize"),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Rebuilds every object with lexicographically ordered keys, independent
/// of the map implementation serde_json was compiled with.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn names(g: &FiniteGroupoid, ids: impl IntoIterator<Item = MorphismId>) -> Vec<String> {
    let mut ids: Vec<MorphismId> = ids.into_iter().collect();
    ids.sort_by_key(|&i| (!g.is_identity(i), i));
    ids.into_iter().map(|i| g.name(i).to_string()).collect()
}

fn brace(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn subring_value(t: &BlockSubring, ring: &SplitRing) -> Value {
    let field = ring.field();
    let blocks: Vec<Value> = t
        .blocks()
        .iter()
        .map(|b| {
            let sub = if b.subfield == field.full_subfield() { "k".to_string() } else { field.subfield_name(b.subfield) };
            let members: Vec<Value> = b
                .indices
                .iter()
                .zip(&b.transports)
                .map(|(&i, &phi)| json!({ "idempotent": ring.name(i), "automorphism": field.aut_name(phi) }))
                .collect();
            json!({ "subfield": sub, "members": members })
        })
        .collect();
    json!({ "display": t.display(ring), "blocks": blocks })
}

impl Emit for CorrespondenceTable {
    fn text(&self, act: &PartialAction) -> String {
        let (g, ring) = (act.groupoid(), act.ring());
        let lefts: Vec<String> = self.rows.iter().map(|r| brace(&names(g, r.subgroupoid.morphisms()))).collect();
        let width = lefts.iter().map(|l| l.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (l, r) in lefts.iter().zip(&self.rows) {
            let pad = width - l.chars().count();
            out.push_str(&format!("{}{l}  <->  {}\n", " ".repeat(pad), r.subring.display(ring)));
        }
        let c = &self.certificate;
        let yn = |b: bool| if b { "verified" } else { "FAILED" };
        out.push_str(&format!(
            "rows: {}; fixer(invariants(H)) = H: {}; invariants(fixer(T)) = T: {}; class B covered: {} ({} subrings); wide subgroupoids rejected as not group-type: {}\n",
            self.rows.len(),
            yn(c.fixer_of_invariants),
            yn(c.invariants_of_fixer),
            yn(c.covers_class_b),
            c.class_b_size,
            c.rejected_not_group_type
        ));
        out
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let (g, ring) = (act.groupoid(), act.ring());
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({ "subgroupoid": names(g, r.subgroupoid.morphisms()), "subring": subring_value(&r.subring, ring) }))
            .collect();
        json!({ "kind": "correspondence", "rows": rows, "certificate": self.certificate })
    }
}

impl Emit for ValidationReport {
    fn text(&self, _: &PartialAction) -> String {
        if self.is_ok() {
            return "OK\n".into();
        }
        self.violations.iter().map(|v| format!("{} ({}): {}\n", v.rule, v.witness.join(", "), v.detail)).collect()
    }

    fn structured(&self, _: &PartialAction) -> Value {
        json!({ "kind": "validation", "ok": self.is_ok(), "violations": self.violations })
    }
}

impl Emit for BlockSubring {
    fn text(&self, act: &PartialAction) -> String {
        self.display(act.ring())
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let mut v = subring_value(self, act.ring());
        v["kind"] = json!("subring");
        v
    }
}

impl Emit for FixerSet {
    fn text(&self, act: &PartialAction) -> String {
        let g = act.groupoid();
        format!(
            "{}\nsubgroupoid: {}\n",
            brace(&names(g, self.morphisms.iter().copied())),
            if self.is_subgroupoid() { "yes" } else { "no" }
        )
    }

    fn structured(&self, act: &PartialAction) -> Value {
        json!({
            "kind": "fixer",
            "morphisms": names(act.groupoid(), self.morphisms.iter().copied()),
            "is_subgroupoid": self.is_subgroupoid(),
        })
    }
}

impl Emit for Option<GaloisCoords> {
    fn text(&self, act: &PartialAction) -> String {
        let ring = act.ring();
        match self {
            None => "no partial Galois coordinate system exists\n".into(),
            Some(c) => (0..c.m())
                .map(|i| format!("a{} = {}, b{} = {}\n", i + 1, ring.format_element(&c.a[i]), i + 1, ring.format_element(&c.b[i])))
                .collect(),
        }
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let ring = act.ring();
        match self {
            None => json!({ "kind": "coords", "found": false, "a": [], "b": [] }),
            Some(c) => json!({
                "kind": "coords",
                "found": true,
                "a": c.a.iter().map(|x| ring.format_element(x)).collect::<Vec<_>>(),
                "b": c.b.iter().map(|x| ring.format_element(x)).collect::<Vec<_>>(),
            }),
        }
    }
}

impl Emit for StrongReport {
    fn text(&self, act: &PartialAction) -> String {
        let g = act.groupoid();
        let mut out = format!(
            "{}\nall pairs: {}; base objects: {}; defining condition: {}\n",
            if self.is_strong() { "alpha-strong" } else { "not alpha-strong" },
            self.all_pairs,
            self.base_objects,
            self.definition
        );
        if let Some(f) = &self.failure {
            out.push_str(&format!("no element of T separates {} and {} at e{}\n", g.name(f.g), g.name(f.h), f.index + 1));
        }
        out
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let g = act.groupoid();
        let failure = self.failure.as_ref().map(|f| json!({ "g": g.name(f.g), "h": g.name(f.h), "idempotent": act.ring().name(f.index) }));
        json!({
            "kind": "strong",
            "strong": self.is_strong(),
            "all_pairs": self.all_pairs,
            "base_objects": self.base_objects,
            "definition": self.definition,
            "failure": failure,
        })
    }
}

impl Emit for GroupType {
    fn text(&self, act: &PartialAction) -> String {
        let g = act.groupoid();
        match self {
            GroupType::Witness(ts) => {
                let mut out = String::from("group-type\n");
                for t in ts {
                    let parts = t.choices().map(|(y, m)| format!("tau_{} = {}", g.object_name(y), g.name(m))).join(", ");
                    out.push_str(&format!("transversal for {}: {parts}\n", g.object_name(t.base())));
                }
                out
            }
            GroupType::No(o) => format!(
                "not group-type\nno morphism {} -> {} carries one ideal onto the other\n",
                g.object_name(o.base),
                g.object_name(o.object)
            ),
        }
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let g = act.groupoid();
        match self {
            GroupType::Witness(ts) => {
                let ts: Vec<Value> = ts
                    .iter()
                    .map(|t| {
                        let choice: Map<String, Value> = t.choices().map(|(y, m)| (g.object_name(y).to_string(), json!(g.name(m)))).collect();
                        json!({ "base": g.object_name(t.base()), "tau": choice })
                    })
                    .collect();
                json!({ "kind": "grouptype", "group_type": true, "transversals": ts })
            }
            GroupType::No(o) => json!({
                "kind": "grouptype",
                "group_type": false,
                "obstruction": { "base": g.object_name(o.base), "object": g.object_name(o.object) },
            }),
        }
    }
}

/// Connected components, each with its objects and morphisms.
pub struct Components(pub Vec<Subgroupoid>);

impl Emit for Components {
    fn text(&self, act: &PartialAction) -> String {
        let g = act.groupoid();
        self.0
            .iter()
            .enumerate()
            .map(|(k, c)| format!("component {}: objects {}; {} morphisms\n", k + 1, brace(&objects(g, c)), c.len()))
            .collect()
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let g = act.groupoid();
        let cs: Vec<Value> = self.0.iter().map(|c| json!({ "objects": objects(g, c), "morphisms": names(g, c.morphisms()) })).collect();
        json!({ "kind": "components", "components": cs })
    }
}

fn objects(g: &FiniteGroupoid, c: &Subgroupoid) -> Vec<String> {
    c.objects().iter().map(|&x| g.object_name(x).to_string()).collect()
}

/// Verdict of the separability test of `T` over `R`.
pub struct SeparabilityVerdict {
    pub subring: BlockSubring,
    pub base: BlockSubring,
    pub separable: bool,
}

impl Emit for SeparabilityVerdict {
    fn text(&self, act: &PartialAction) -> String {
        let ring = act.ring();
        format!(
            "{} is {}separable over {}\n",
            self.subring.display(ring),
            if self.separable { "" } else { "not " },
            self.base.display(ring)
        )
    }

    fn structured(&self, act: &PartialAction) -> Value {
        let ring = act.ring();
        json!({
            "kind": "separable",
            "separable": self.separable,
            "subring": subring_value(&self.subring, ring),
            "base": subring_value(&self.base, ring),
        })
    }
}

// ----- document serializer----------------------------------------------------------

fn join(names: &[Name], sep: &str) -> String {
    names.iter().map(|n| n.value.as_str()).join(sep)
}

/// Canonical `.gpd` text. Parsing the output yields a document equal to
/// `doc`, and emitting that again reproduces the same bytes.
pub fn emit_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    if let Some(f) = &doc.field {
        out.push_str(&format!("field: {};\n", f.value));
    }
    if let Some(g) = &doc.groupoid {
        out.push_str("groupoid {\n");
        out.push_str(&format!("  objects: {};\n", join(&g.objects, ", ")));
        if !g.arrows.is_empty() {
            let arrows = g.arrows.iter().map(|a| format!("{}: {} -> {}", a.name.value, a.source.value, a.target.value)).join(", ");
            out.push_str(&format!("  arrows: {arrows};\n"));
        }
        if !g.relations.is_empty() {
            let rels = g.relations.iter().map(|r| r.iter().map(|w| join(w, " ")).join(" = ")).join(",\n    ");
            out.push_str(&format!("  compose: {rels};\n"));
        }
        out.push_str("}\n");
    }
    if !doc.ring.is_empty() {
        out.push_str("ring {\n");
        for (obj, idems) in &doc.ring {
            out.push_str(&format!("  {}: {};\n", obj.value, join(idems, ", ")));
        }
        out.push_str("}\n");
    }
    if !doc.action.is_empty() {
        out.push_str("action {\n");
        for a in &doc.action {
            let body = if a.entries.is_empty() {
                "none".to_string()
            } else {
                a.entries
                    .iter()
                    .map(|e| match &e.automorphism {
                        Some(phi) => format!("{} -> {} {}", e.from.value, phi.value, e.to.value),
                        None => format!("{} -> {}", e.from.value, e.to.value),
                    })
                    .join(", ")
            };
            out.push_str(&format!("  {}: {body};\n", a.arrow.value));
        }
        out.push_str("}\n");
    }
    for h in &doc.subgroupoids {
        out.push_str(&format!("subgroupoid {} = {{{}}};\n", h.name.value, join(&h.members, ", ")));
    }
    for t in &doc.subrings {
        let blocks = t
            .blocks
            .iter()
            .map(|b| {
                let members = b
                    .members
                    .iter()
                    .map(|(phi, e)| match phi {
                        Some(phi) => format!("{} {}", phi.value, e.value),
                        None => e.value.clone(),
                    })
                    .join(" + ");
                format!("{}({members})", b.field.value)
            })
            .join(" + ");
        out.push_str(&format!("subring {} = {blocks};\n", t.name.value));
    }
    for a in &doc.assertions {
        out.push_str(&format!("assert {};\n", super::resolve::words_text(&a.words)));
    }
    out
}
