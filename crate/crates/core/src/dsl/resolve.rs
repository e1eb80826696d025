//! Name resolution and composition closure: turns a [`SpecDocument`] into a
//! field, groupoid, ring, partial action, and the named subgroupoids and
//! subrings, or a list of positioned diagnostics.
//!
//! The composition table is saturated from the given relations using
//! identities, inverses (an arrow `a` whose inverse is never determined gets
//! a fresh `a^-1`), associativity, and Latin-square completion of rows and
//! columns. Afterwards every composable pair must have a product.

use std::collections::{BTreeMap, HashMap};

use crate::action::{PartialAction, TwistedPartialMap};
use crate::field::{Automorphism, CoeffField};
use crate::error::Error;
use crate::groupoid::{validate_groupoid, FiniteGroupoid, Morphism, MorphismId, Subgroupoid};
use crate::ring::{BlockSubring, SplitRing};

use super::ast::*;
use super::diagnostic::{Category, Diagnostic};
use super::syntax::parse_document;

/// A resolved document.
#[derive(Debug, Clone)]
pub struct Model {
    pub document: SpecDocument,
    pub action: PartialAction,
    pub subgroupoids: Vec<(String, Subgroupoid)>,
    pub subrings: Vec<(String, BlockSubring)>,
}

impl Model {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        self.action.groupoid()
    }

    pub fn ring(&self) -> &SplitRing {
        self.action.ring()
    }

    pub fn field(&self) -> &CoeffField {
        self.action.ring().field()
    }

    pub fn subgroupoid(&self, name: &str) -> Option<&Subgroupoid> {
        self.subgroupoids.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }

    pub fn subring(&self, name: &str) -> Option<&BlockSubring> {
        self.subrings.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

/// Parses and resolves a document.
pub fn parse_spec(text: &str) -> Result<Model, Vec<Diagnostic>> {
    resolve(parse_document(text)?)
}

const ASSERTION_SHAPES: &[(&str, usize)] =
    &[("valid", 0), ("galois", 0), ("grouptype", 1), ("not", 2), ("invariants", 2), ("fixer", 2), ("strong", 1), ("separable", 1), ("rows", 1)];

pub fn resolve(doc: SpecDocument) -> Result<Model, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let origin = Span { line: 1, column: 1 };

    let field = match &doc.field {
        None => {
            diags.push(Diagnostic::new(origin, Category::MissingSection, "missing `field` section"));
            None
        }
        Some(f) => match CoeffField::parse(&f.value) {
            Ok(k) => Some(k),
            Err(e) => {
                let message = match e {
                    Error::InvalidField(m) => m,
                    other => other.to_string(),
                };
                diags.push(Diagnostic::new(f.span, Category::InvalidField, message));
                None
            }
        },
    };
    let Some(gsec) = &doc.groupoid else {
        diags.push(Diagnostic::new(origin, Category::MissingSection, "missing `groupoid` section"));
        return Err(diags);
    };
    let groupoid = match build_groupoid(gsec) {
        Ok(g) => g,
        Err(mut d) => {
            diags.append(&mut d);
            return Err(diags);
        }
    };
    let Some(field) = field else { return Err(diags) };

    let ring = match build_ring(&doc, &groupoid, field.clone()) {
        Ok(r) => r,
        Err(mut d) => {
            diags.append(&mut d);
            return Err(diags);
        }
    };
    let action = match build_action(&doc, &groupoid, &ring) {
        Ok(a) => a,
        Err(mut d) => {
            diags.append(&mut d);
            return Err(diags);
        }
    };

    let mut subgroupoids: Vec<(String, Subgroupoid)> = Vec::new();
    for decl in &doc.subgroupoids {
        if subgroupoids.iter().any(|(n, _)| *n == decl.name.value) {
            diags.push(Diagnostic::new(decl.name.span, Category::DuplicateName, format!("subgroupoid {} declared twice", decl.name.value)));
            continue;
        }
        let mut ids = Vec::new();
        for m in &decl.members {
            match lookup_morphism(&groupoid, &m.value) {
                Some(id) => ids.push(id),
                None => diags.push(Diagnostic::new(m.span, Category::UnknownName, format!("unknown arrow {}", m.value))),
            }
        }
        match Subgroupoid::from_morphisms(&groupoid, &ids) {
            Ok(h) => subgroupoids.push((decl.name.value.clone(), h)),
            Err(_) => diags.push(Diagnostic::new(
                decl.name.span,
                Category::NotASubgroupoid,
                format!("{} is not closed under composition, inverses and identities", decl.name.value),
            )),
        }
    }

    let mut subrings: Vec<(String, BlockSubring)> = Vec::new();
    for decl in &doc.subrings {
        if subrings.iter().any(|(n, _)| *n == decl.name.value) {
            diags.push(Diagnostic::new(decl.name.span, Category::DuplicateName, format!("subring {} declared twice", decl.name.value)));
            continue;
        }
        let mut blocks = Vec::new();
        let mut ok = true;
        for b in &decl.blocks {
            let Some(sub) = field.parse_subfield(&b.field.value) else {
                diags.push(Diagnostic::new(b.field.span, Category::InvalidSubring, format!("{} is not a subfield of {field}", b.field.value)));
                ok = false;
                continue;
            };
            let mut indices = Vec::new();
            let mut transports = Vec::new();
            for (aut, idem) in &b.members {
                match ring.index_by_name(&idem.value) {
                    Some(i) => indices.push(i),
                    None => {
                        diags.push(Diagnostic::new(idem.span, Category::UnknownName, format!("unknown idempotent {}", idem.value)));
                        ok = false;
                    }
                }
                match aut {
                    None => transports.push(Automorphism::IDENTITY),
                    Some(a) => match field.parse_aut(&a.value) {
                        Some(phi) => transports.push(phi),
                        None => {
                            diags.push(Diagnostic::new(a.span, Category::UnknownName, format!("unknown automorphism {} of {field}", a.value)));
                            ok = false;
                        }
                    },
                }
            }
            blocks.push((indices, transports, sub));
        }
        if !ok {
            continue;
        }
        match BlockSubring::new(&ring, blocks) {
            Ok(t) => subrings.push((decl.name.value.clone(), t)),
            Err(e) => diags.push(Diagnostic::new(decl.name.span, Category::InvalidSubring, format!("{}: {e}", decl.name.value))),
        }
    }

    for a in &doc.assertions {
        let kind = &a.words[0];
        let shape = ASSERTION_SHAPES.iter().find(|(k, _)| *k == kind.value);
        match shape {
            Some((k, arity)) if a.words.len() == arity + 1 && (*k != "not" || a.words[1].value == "grouptype") => {}
            _ => diags.push(Diagnostic::new(kind.span, Category::Syntax, format!("unrecognised assertion `{}`", words_text(&a.words)))),
        }
    }

    if diags.is_empty() {
        Ok(Model { document: doc, action, subgroupoids, subrings })
    } else {
        Err(diags)
    }
}

/// Canonical text of an assertion; `invariants H = T` and `fixer T = H`
/// get their `=` back.
pub(crate) fn words_text(words: &[Name]) -> String {
    let w: Vec<&str> = words.iter().map(|w| w.value.as_str()).collect();
    match w.as_slice() {
        [op @ ("invariants" | "fixer"), a, b] => format!("{op} {a} = {b}"),
        _ => w.join(" "),
    }
}

/// Arrow by name, or the identity of an object by the object's name.
pub fn lookup_morphism(g: &FiniteGroupoid, name: &str) -> Option<MorphismId> {
    g.morphism_by_name(name).or_else(|| g.object_by_name(name).map(|x| g.identity(x)))
}

// ----- groupoid ---------------------------------------------------------------

struct TableBuilder {
    names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    num_objects: usize,
    table: HashMap<(usize, usize), usize>,
    inverse: Vec<Option<usize>>,
}

impl TableBuilder {
    fn add_arrow(&mut self, name: String, s: usize, t: usize) -> usize {
        self.names.push(name);
        self.source.push(s);
        self.target.push(t);
        self.inverse.push(None);
        let a = self.names.len() - 1;
        self.table.insert((t, a), a);
        self.table.insert((a, s), a);
        a
    }

    fn is_identity(&self, a: usize) -> bool {
        a < self.num_objects
    }

    fn id_of(&self, x: usize) -> usize {
        x
    }

    fn by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Records `a b = c`; `Ok(true)` when new.
    fn set(&mut self, a: usize, b: usize, c: usize) -> Result<bool, String> {
        if self.source[a] != self.target[b] {
            return Err(format!("{} {} is not composable", self.names[a], self.names[b]));
        }
        if self.source[c] != self.source[b] || self.target[c] != self.target[a] {
            return Err(format!("{} {} = {} has the wrong endpoints", self.names[a], self.names[b], self.names[c]));
        }
        match self.table.get(&(a, b)) {
            Some(&old) if old == c => Ok(false),
            Some(&old) => Err(format!("{} {} is both {} and {}", self.names[a], self.names[b], self.names[old], self.names[c])),
            None => {
                self.table.insert((a, b), c);
                Ok(true)
            }
        }
    }

    fn set_inverse(&mut self, a: usize, b: usize) -> Result<bool, String> {
        let mut changed = false;
        for (x, y) in [(a, b), (b, a)] {
            match self.inverse[x] {
                Some(old) if old != y => {
                    return Err(format!("{} has two inverses, {} and {}", self.names[x], self.names[old], self.names[y]));
                }
                Some(_) => {}
                None => {
                    self.inverse[x] = Some(y);
                    changed = true;
                }
            }
        }
        changed |= self.set(a, b, self.id_of(self.target[a]))?;
        changed |= self.set(b, a, self.id_of(self.source[a]))?;
        Ok(changed)
    }

    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.table.get(&(a, b)).copied()
    }

    /// Multiplies out adjacent known products until none is left.
    fn reduce(&self, word: &[usize]) -> Vec<usize> {
        let mut w = word.to_vec();
        loop {
            let pos = (0..w.len().saturating_sub(1)).rev().find(|&k| self.get(w[k], w[k + 1]).is_some());
            match pos {
                Some(k) => {
                    let p = self.get(w[k], w[k + 1]).expect("found above");
                    w.splice(k..k + 2, [p]);
                }
                None => return w,
            }
        }
    }

    /// Uses `w = v` to derive a new product, peeling factors with known
    /// inverses until two remain.
    fn solve(&mut self, word: &[usize], mut v: usize) -> Result<bool, String> {
        let mut w = self.reduce(word);
        loop {
            match w.len() {
                1 if w[0] == v => return Ok(false),
                1 => return Err(format!("relation forces {} = {}", self.names[w[0]], self.names[v])),
                2 => return self.set(w[0], w[1], v),
                _ => {}
            }
            if let Some(nv) = self.inverse[w[0]].and_then(|i| self.get(i, v)) {
                v = nv;
                w.remove(0);
            } else if let Some(nv) = self.inverse[*w.last().expect("nonempty")].and_then(|i| self.get(v, i)) {
                v = nv;
                w.pop();
            } else {
                return Ok(false);
            }
            w = self.reduce(&w);
        }
    }

    fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.names.len()).filter(|&a| self.source[a] == x && self.target[a] == y).collect()
    }

    fn pass(&mut self, relations: &[Vec<Vec<usize>>]) -> Result<bool, String> {
        let mut changed = false;
        // inverses read off the table
        let entries: Vec<((usize, usize), usize)> = self.table.iter().map(|(&k, &v)| (k, v)).collect();
        for &((a, b), c) in &entries {
            if self.is_identity(c) && !self.is_identity(a) && self.source[b] == self.target[a] {
                changed |= self.set_inverse(a, b)?;
            }
        }
        for rel in relations {
            let values: Vec<usize> = rel.iter().map(|w| self.reduce(w)).filter(|r| r.len() == 1).map(|r| r[0]).collect();
            if let Some(&v) = values.first() {
                for w in rel {
                    changed |= self.solve(w, v)?;
                }
            }
        }
        // associativity: (ab)d = a(bd)
        let entries: Vec<((usize, usize), usize)> = self.table.iter().map(|(&k, &v)| (k, v)).collect();
        for &((a, b), c) in &entries {
            let ds: Vec<usize> = (0..self.names.len()).filter(|&d| self.target[d] == self.source[b]).collect();
            for d in ds {
                let Some(e) = self.get(b, d) else { continue };
                match (self.get(c, d), self.get(a, e)) {
                    (Some(l), None) => changed |= self.set(a, e, l)?,
                    (None, Some(r)) => changed |= self.set(c, d, r)?,
                    (Some(l), Some(r)) if l != r => {
                        return Err(format!(
                            "associativity fails for {} {} {}",
                            self.names[a],
                            self.names[b],
                            self.names[d]
                        ))
                    }
                    _ => {}
                }
            }
        }
        // Latin completion of rows (a fixed) and columns (b fixed)
        let n_obj = self.num_objects;
        for a in 0..self.names.len() {
            for z in 0..n_obj {
                let hs = self.hom(z, self.source[a]);
                let targets = self.hom(z, self.target[a]);
                changed |= self.latin(hs.iter().map(|&h| (a, h)).collect(), &targets)?;
            }
        }
        for b in 0..self.names.len() {
            for w in 0..n_obj {
                let gs = self.hom(self.target[b], w);
                let targets = self.hom(self.source[b], w);
                changed |= self.latin(gs.iter().map(|&g| (g, b)).collect(), &targets)?;
            }
        }
        Ok(changed)
    }

    fn latin(&mut self, pairs: Vec<(usize, usize)>, targets: &[usize]) -> Result<bool, String> {
        if pairs.len() != targets.len() {
            return Ok(false);
        }
        let mut hit = vec![false; targets.len()];
        let mut unknown = Vec::new();
        for &(a, b) in &pairs {
            match self.get(a, b) {
                Some(c) => {
                    let k = targets.iter().position(|&t| t == c).expect("typed product");
                    if std::mem::replace(&mut hit[k], true) {
                        return Err(format!("{} takes the value {} twice", self.names[a], self.names[c]));
                    }
                }
                None => unknown.push((a, b)),
            }
        }
        if unknown.len() == 1 {
            let k = hit.iter().position(|h| !h).expect("one value left");
            let (a, b) = unknown[0];
            return self.set(a, b, targets[k]);
        }
        Ok(false)
    }
}

fn build_groupoid(sec: &GroupoidSection) -> Result<FiniteGroupoid, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let anchor = sec.objects.first().map_or(Span { line: 1, column: 1 }, |o| o.span);
    if sec.objects.is_empty() {
        diags.push(Diagnostic::new(anchor, Category::MissingSection, "groupoid has no objects"));
        return Err(diags);
    }
    let mut b = TableBuilder {
        names: Vec::new(),
        source: Vec::new(),
        target: Vec::new(),
        num_objects: sec.objects.len(),
        table: HashMap::new(),
        inverse: Vec::new(),
    };
    for (x, o) in sec.objects.iter().enumerate() {
        if b.by_name(&o.value).is_some() {
            diags.push(Diagnostic::new(o.span, Category::DuplicateName, format!("object {} declared twice", o.value)));
        }
        b.add_arrow(o.value.clone(), x, x);
    }
    let obj = |n: &Name, diags: &mut Vec<Diagnostic>| {
        let r = sec.objects.iter().position(|o| o.value == n.value);
        if r.is_none() {
            diags.push(Diagnostic::new(n.span, Category::UnknownName, format!("unknown object {}", n.value)));
        }
        r
    };
    for a in &sec.arrows {
        let (s, t) = (obj(&a.source, &mut diags), obj(&a.target, &mut diags));
        if b.by_name(&a.name.value).is_some() {
            diags.push(Diagnostic::new(a.name.span, Category::DuplicateName, format!("{} declared twice", a.name.value)));
            continue;
        }
        if let (Some(s), Some(t)) = (s, t) {
            b.add_arrow(a.name.value.clone(), s, t);
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    for x in 0..b.num_objects {
        b.inverse[x] = Some(x);
    }
    // Declared `a^-1` is the inverse of `a` by convention.
    let declared: Vec<usize> = (b.num_objects..b.names.len()).collect();
    for &a in &declared {
        if let Some(base) = b.names[a].strip_suffix("^-1").and_then(|n| b.by_name(n)) {
            let span = sec.arrows[a - b.num_objects].name.span;
            if b.source[base] != b.target[a] || b.target[base] != b.source[a] {
                diags.push(Diagnostic::new(span, Category::InconsistentComposition, format!("{} does not reverse {}", b.names[a], b.names[base])));
            } else if let Err(e) = b.set_inverse(base, a) {
                diags.push(Diagnostic::new(span, Category::InconsistentComposition, e));
            }
        }
    }

    // Resolve relation words; unknown `a^-1` names create the inverse arrow.
    let mut relations: Vec<Vec<Vec<usize>>> = Vec::new();
    for rel in &sec.relations {
        let mut words = Vec::new();
        for word in rel {
            let mut w = Vec::new();
            for n in word {
                let id = match b.by_name(&n.value) {
                    Some(id) => Some(id),
                    None => match n.value.strip_suffix("^-1").and_then(|base| b.by_name(base)) {
                        Some(base) if !b.is_identity(base) => {
                            let inv = b.add_arrow(n.value.clone(), b.target[base], b.source[base]);
                            if let Err(e) = b.set_inverse(base, inv) {
                                diags.push(Diagnostic::new(n.span, Category::InconsistentComposition, e));
                            }
                            Some(inv)
                        }
                        _ => None,
                    },
                };
                match id {
                    Some(id) => w.push(id),
                    None => diags.push(Diagnostic::new(n.span, Category::UnknownName, format!("unknown arrow {}", n.value))),
                }
            }
            if w.len() == word.len() {
                if let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| b.source[w[k]] != b.target[w[k + 1]]) {
                    diags.push(Diagnostic::new(
                        word[k].span,
                        Category::InconsistentComposition,
                        format!("{} {} is not composable", b.names[w[k]], b.names[w[k + 1]]),
                    ));
                }
                words.push(w);
            }
        }
        if words.len() == rel.len() {
            let ends: Vec<(usize, usize)> = words.iter().map(|w| (b.source[*w.last().expect("word")], b.target[w[0]])).collect();
            if ends.windows(2).any(|p| p[0] != p[1]) {
                diags.push(Diagnostic::new(rel[0][0].span, Category::InconsistentComposition, "sides of the relation have different endpoints"));
            }
            relations.push(words);
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    let rel_span = sec.relations.first().map_or(anchor, |r| r[0][0].span);
    loop {
        match b.pass(&relations) {
            Err(e) => return Err(vec![Diagnostic::new(rel_span, Category::InconsistentComposition, e)]),
            Ok(true) => continue,
            Ok(false) => {}
        }
        // Stalled: give every arrow without a known inverse a fresh one.
        let missing: Vec<usize> = (0..b.names.len()).filter(|&a| b.inverse[a].is_none()).collect();
        if missing.is_empty() {
            break;
        }
        for a in missing {
            if b.inverse[a].is_some() {
                continue;
            }
            let name = format!("{}^-1", b.names[a]);
            if b.by_name(&name).is_some() {
                return Err(vec![Diagnostic::new(rel_span, Category::InconsistentComposition, format!("{name} exists but is not the inverse of {}", b.names[a]))]);
            }
            let inv = b.add_arrow(name, b.target[a], b.source[a]);
            if let Err(e) = b.set_inverse(a, inv) {
                return Err(vec![Diagnostic::new(rel_span, Category::InconsistentComposition, e)]);
            }
        }
    }

    for a in 0..b.names.len() {
        for c in (0..b.names.len()).filter(|&c| b.source[a] == b.target[c]) {
            if b.get(a, c).is_none() {
                diags.push(Diagnostic::new(
                    rel_span,
                    Category::IncompleteComposition,
                    format!("the relations do not determine {} {}", b.names[a], b.names[c]),
                ));
            }
        }
    }
    if !diags.is_empty() {
        diags.truncate(5);
        return Err(diags);
    }

    let objects = sec.objects.iter().map(|o| o.value.clone()).collect();
    let morphisms = (0..b.names.len()).map(|a| Morphism { name: b.names[a].clone(), source: b.source[a], target: b.target[a] }).collect();
    let products: Vec<(MorphismId, MorphismId, MorphismId)> = {
        let mut p: Vec<_> = b.table.iter().map(|(&(x, y), &z)| (x, y, z)).collect();
        p.sort_unstable();
        p
    };
    let inverse = b.inverse.iter().map(|i| i.expect("all inverses assigned")).collect();
    let identities = (0..b.num_objects).collect();
    let g = FiniteGroupoid::from_table(objects, morphisms, identities, &products, inverse)
        .map_err(|e| vec![Diagnostic::new(anchor, Category::InconsistentComposition, e.to_string())])?;
    let report = validate_groupoid(&g);
    if !report.is_ok() {
        return Err(report
            .violations
            .iter()
            .take(5)
            .map(|v| Diagnostic::new(rel_span, Category::InconsistentComposition, format!("{} at ({}): {}", v.rule, v.witness.join(", "), v.detail)))
            .collect());
    }
    Ok(g)
}

// ----- ring and action -----------------------------------------------------------

fn build_ring(doc: &SpecDocument, g: &FiniteGroupoid, field: CoeffField) -> Result<SplitRing, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    if doc.ring.is_empty() {
        return Err(vec![Diagnostic::new(Span { line: 1, column: 1 }, Category::MissingSection, "missing `ring` section")]);
    }
    let mut names = Vec::new();
    let mut owner = Vec::new();
    let mut seen_obj = BTreeMap::new();
    for (obj, idems) in &doc.ring {
        let Some(x) = g.object_by_name(&obj.value) else {
            diags.push(Diagnostic::new(obj.span, Category::UnknownName, format!("unknown object {}", obj.value)));
            continue;
        };
        if seen_obj.insert(x, obj.span).is_some() {
            diags.push(Diagnostic::new(obj.span, Category::DuplicateName, format!("object {} listed twice in the ring", obj.value)));
        }
        for e in idems {
            if names.contains(&e.value) {
                diags.push(Diagnostic::new(e.span, Category::DuplicateName, format!("idempotent {} declared twice", e.value)));
                continue;
            }
            names.push(e.value.clone());
            owner.push(x);
        }
    }
    for x in 0..g.num_objects() {
        if !owner.contains(&x) {
            let span = doc.ring.first().map_or(Span::default(), |r| r.0.span);
            diags.push(Diagnostic::new(span, Category::DomainMismatch, format!("object {} has no idempotents", g.object_name(x))));
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    SplitRing::new(field, names, owner, g.num_objects()).map_err(|e| vec![Diagnostic::new(doc.ring[0].0.span, Category::DomainMismatch, e.to_string())])
}

fn build_action(doc: &SpecDocument, g: &FiniteGroupoid, ring: &SplitRing) -> Result<PartialAction, Vec<Diagnostic>> {
    let field = ring.field();
    let mut diags = Vec::new();
    let mut maps: Vec<Option<(Vec<(usize, usize, Automorphism)>, Span)>> = vec![None; g.num_morphisms()];
    for decl in &doc.action {
        let Some(m) = lookup_morphism(g, &decl.arrow.value) else {
            diags.push(Diagnostic::new(decl.arrow.span, Category::UnknownName, format!("unknown arrow {}", decl.arrow.value)));
            continue;
        };
        if maps[m].is_some() {
            diags.push(Diagnostic::new(decl.arrow.span, Category::DuplicateName, format!("second map for {}", decl.arrow.value)));
            continue;
        }
        let mut entries = Vec::new();
        for e in &decl.entries {
            let from = ring.index_by_name(&e.from.value);
            let to = ring.index_by_name(&e.to.value);
            for (idx, n) in [(from, &e.from), (to, &e.to)] {
                if idx.is_none() {
                    diags.push(Diagnostic::new(n.span, Category::UnknownName, format!("unknown idempotent {}", n.value)));
                }
            }
            let phi = match &e.automorphism {
                None => Some(Automorphism::IDENTITY),
                Some(a) => {
                    let p = field.parse_aut(&a.value);
                    if p.is_none() {
                        diags.push(Diagnostic::new(a.span, Category::UnknownName, format!("unknown automorphism {} of {field}", a.value)));
                    }
                    p
                }
            };
            let (Some(i), Some(j), Some(phi)) = (from, to, phi) else { continue };
            if ring.owner(i) != g.source(m) {
                diags.push(Diagnostic::new(
                    e.from.span,
                    Category::DomainMismatch,
                    format!("{} does not belong to {}, the source of {}", e.from.value, g.object_name(g.source(m)), decl.arrow.value),
                ));
            }
            if ring.owner(j) != g.target(m) {
                diags.push(Diagnostic::new(
                    e.to.span,
                    Category::DomainMismatch,
                    format!("{} does not belong to {}, the target of {}", e.to.value, g.object_name(g.target(m)), decl.arrow.value),
                ));
            }
            if entries.iter().any(|&(a, _, _)| a == i) || entries.iter().any(|&(_, b, _)| b == j) {
                diags.push(Diagnostic::new(e.from.span, Category::NonBijectiveMap, format!("map for {} is not injective at {}", decl.arrow.value, e.from.value)));
            }
            entries.push((i, j, phi));
        }
        maps[m] = Some((entries, decl.arrow.span));
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let inverse_of = |entries: &[(usize, usize, Automorphism)]| -> Vec<(usize, usize, Automorphism)> {
        let mut v: Vec<_> = entries.iter().map(|&(i, j, p)| (j, i, field.aut_inverse(p))).collect();
        v.sort();
        v
    };
    let mut out = Vec::with_capacity(g.num_morphisms());
    for m in 0..g.num_morphisms() {
        let inv = g.inverse(m);
        let entries = if g.is_identity(m) {
            let id = TwistedPartialMap::identity(ring.support(g.source(m)));
            if let Some((given, span)) = &maps[m] {
                if TwistedPartialMap::new(given.clone()) != id {
                    diags.push(Diagnostic::new(*span, Category::DomainMismatch, format!("{} must act as the identity of its object", g.name(m))));
                }
            }
            id.entries().to_vec()
        } else {
            match (&maps[m], &maps[inv]) {
                (Some((mine, span)), Some((theirs, _))) => {
                    let mut sorted = mine.clone();
                    sorted.sort();
                    if inverse_of(theirs) != sorted {
                        diags.push(Diagnostic::new(*span, Category::DomainMismatch, format!("maps for {} and {} are not mutually inverse", g.name(m), g.name(inv))));
                    }
                    mine.clone()
                }
                (Some((mine, _)), None) => mine.clone(),
                (None, Some((theirs, _))) => inverse_of(theirs),
                (None, None) => {
                    let declared = doc.groupoid.as_ref().and_then(|gs| gs.arrows.iter().find(|a| a.name.value == g.name(m) || a.name.value == g.name(inv)));
                    let span = declared.map(|a| a.name.span).or(doc.action.first().map(|d| d.arrow.span)).unwrap_or(Span { line: 1, column: 1 });
                    diags.push(Diagnostic::new(span, Category::MissingMap, format!("no map given for {} or its inverse", g.name(m))));
                    Vec::new()
                }
            }
        };
        out.push(TwistedPartialMap::new(entries));
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    PartialAction::new(g.clone(), ring.clone(), out).map_err(|e| vec![Diagnostic::new(Span::default(), Category::DomainMismatch, e.to_string())])
}
