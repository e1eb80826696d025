//! Finite groupoids given by explicit composition tables.
//!
//! Composition follows the usual right-to-left convention: `compose(g, h)` is
//! `gh`, "first `h`, then `g`", defined exactly when `s(g) = t(h)`. Objects
//! and morphisms carry stable integer ids; every enumeration order below is
//! derived from those ids, so all output is deterministic.

use std::collections::{BTreeMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::report::ValidationReport;

pub type ObjectId = usize;
pub type MorphismId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    /// `table[g * n + h] = gh` when defined.
    table: Vec<Option<MorphismId>>,
    inverse: Vec<MorphismId>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from raw tables. Only index ranges are checked
    /// here; the groupoid axioms are checked by [`validate_groupoid`].
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        products: &[(MorphismId, MorphismId, MorphismId)],
        inverse: Vec<MorphismId>,
    ) -> Result<Self> {
        let n = morphisms.len();
        let bad = |what: &str| Err(Error::Precondition(format!("groupoid table: {what}")));
        if identities.len() != objects.len() || inverse.len() != n {
            return bad("identity or inverse map has the wrong length");
        }
        if morphisms.iter().any(|m| m.source >= objects.len() || m.target >= objects.len())
            || identities.iter().chain(&inverse).any(|&g| g >= n)
        {
            return bad("id out of range");
        }
        let mut table = vec![None; n * n];
        for &(g, h, gh) in products {
            if g >= n || h >= n || gh >= n {
                return bad("product id out of range");
            }
            table[g * n + h] = Some(gh);
        }
        Ok(FiniteGroupoid { objects, morphisms, identities, table, inverse })
    }

    /// The connected groupoid `Y² × C_k` on the given object names: the
    /// morphism `(s, t, c)` goes from `s` to `t` and `(u, v, c)(s, u, c') =
    /// (s, v, c + c')`. Identities are named after their objects, every other
    /// morphism `g_{s}_{t}_{c}`.
    pub fn pair_cyclic(objects: &[&str], k: usize) -> Self {
        assert!(k >= 1 && !objects.is_empty());
        let r = objects.len();
        let idx = |s: usize, t: usize, c: usize| (s * r + t) * k + c;
        let mut morphisms = Vec::with_capacity(r * r * k);
        for s in 0..r {
            for t in 0..r {
                for c in 0..k {
                    let name = if s == t && c == 0 {
                        objects[s].to_string()
                    } else {
                        format!("g_{}_{}_{}", objects[s], objects[t], c)
                    };
                    morphisms.push(Morphism { name, source: s, target: t });
                }
            }
        }
        let mut products = Vec::new();
        for (s, u, v) in itertools::iproduct!(0..r, 0..r, 0..r) {
            for (c, d) in itertools::iproduct!(0..k, 0..k) {
                products.push((idx(u, v, d), idx(s, u, c), idx(s, v, (c + d) % k)));
            }
        }
        let identities = (0..r).map(|s| idx(s, s, 0)).collect();
        let inverse = itertools::iproduct!(0..r, 0..r, 0..k).map(|(s, t, c)| idx(t, s, (k - c) % k)).collect();
        Self::from_table(objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, &products, inverse)
            .expect("well-formed by construction")
    }

    /// Disjoint union; object and morphism names must not clash.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let names: HashSet<&str> = self.objects.iter().chain(self.morphisms.iter().map(|m| &m.name)).map(String::as_str).collect();
        if let Some(clash) = other
            .objects
            .iter()
            .chain(other.morphisms.iter().map(|m| &m.name))
            .find(|s| names.contains(s.as_str()))
        {
            return Err(Error::Precondition(format!("name `{clash}` occurs in both groupoids")));
        }
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        let mut objects = self.objects.clone();
        objects.extend(other.objects.iter().cloned());
        let mut morphisms = self.morphisms.clone();
        morphisms.extend(other.morphisms.iter().map(|m| Morphism { name: m.name.clone(), source: m.source + no, target: m.target + no }));
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|i| i + nm));
        let mut inverse = self.inverse.clone();
        inverse.extend(other.inverse.iter().map(|i| i + nm));
        let mut products = self.products();
        products.extend(other.products().into_iter().map(|(g, h, gh)| (g + nm, h + nm, gh + nm)));
        Self::from_table(objects, morphisms, identities, &products, inverse)
    }

    /// Same groupoid with every object and morphism name passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Self {
        let mut out = self.clone();
        for o in &mut out.objects {
            *o = f(o);
        }
        for m in &mut out.morphisms {
            m.name = f(&m.name);
        }
        out
    }

    /// All defined products `(g, h, gh)`.
    pub fn products(&self) -> Vec<(MorphismId, MorphismId, MorphismId)> {
        let n = self.morphisms.len();
        self.table.iter().enumerate().filter_map(|(i, p)| p.map(|gh| (i / n, i % n, gh))).collect()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, g: MorphismId) -> &Morphism {
        &self.morphisms[g]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn name(&self, g: MorphismId) -> &str {
        &self.morphisms[g].name
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphismId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn source(&self, g: MorphismId) -> ObjectId {
        self.morphisms[g].source
    }

    pub fn target(&self, g: MorphismId) -> ObjectId {
        self.morphisms[g].target
    }

    pub fn identity(&self, x: ObjectId) -> MorphismId {
        self.identities[x]
    }

    pub fn is_identity(&self, g: MorphismId) -> bool {
        self.identities[self.source(g)] == g
    }

    pub fn inverse(&self, g: MorphismId) -> MorphismId {
        self.inverse[g]
    }

    /// `gh`, when `s(g) = t(h)` and the table defines it.
    pub fn compose(&self, g: MorphismId, h: MorphismId) -> Option<MorphismId> {
        self.table[g * self.morphisms.len() + h]
    }

    pub fn composable(&self, g: MorphismId, h: MorphismId) -> bool {
        self.source(g) == self.target(h)
    }

    /// `gh`; panics if undefined. For use on validated groupoids only.
    pub fn mul(&self, g: MorphismId, h: MorphismId) -> MorphismId {
        self.compose(g, h).unwrap_or_else(|| panic!("product {} {} undefined", self.name(g), self.name(h)))
    }

    /// The hom-set `𝔾(x, y)`, in id order.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> Vec<MorphismId> {
        (0..self.morphisms.len()).filter(|&g| self.source(g) == x && self.target(g) == y).collect()
    }

    pub fn all(&self) -> Subgroupoid {
        let mut set = FixedBitSet::with_capacity(self.morphisms.len());
        set.insert_range(..);
        Subgroupoid::from_closed_set(self, set)
    }

    pub fn identities_only(&self) -> Subgroupoid {
        let mut set = FixedBitSet::with_capacity(self.morphisms.len());
        for &i in &self.identities {
            set.insert(i);
        }
        Subgroupoid::from_closed_set(self, set)
    }
}

/// Checks every groupoid axiom, reporting each failure with its witnesses.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.num_morphisms();
    let nm = |id: MorphismId| g.name(id).to_string();
    for (x, &i) in g.identities.iter().enumerate() {
        if g.source(i) != x || g.target(i) != x {
            report.push("identity", vec![nm(i)], format!("identity of {} is not a loop at it", g.object_name(x)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            match (g.composable(a, b), g.compose(a, b)) {
                (true, None) => report.push("composition-defined", vec![nm(a), nm(b)], "composable pair has no product"),
                (false, Some(_)) => report.push("composition-defined", vec![nm(a), nm(b)], "product defined on a non-composable pair"),
                (true, Some(ab)) => {
                    if g.source(ab) != g.source(b) || g.target(ab) != g.target(a) {
                        report.push("source-target", vec![nm(a), nm(b)], format!("s/t of {} do not match", nm(ab)));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for a in 0..n {
        let (s, t) = (g.source(a), g.target(a));
        if g.compose(g.identity(t), a) != Some(a) || g.compose(a, g.identity(s)) != Some(a) {
            report.push("unit", vec![nm(a)], "identities do not act as units");
        }
        let inv = g.inverse(a);
        if g.compose(inv, a) != Some(g.identity(s)) {
            report.push("inverse", vec![nm(inv), nm(a)], format!("product is not {}", g.object_name(s)));
        }
        if g.compose(a, inv) != Some(g.identity(t)) {
            report.push("inverse", vec![nm(a), nm(inv)], format!("product is not {}", g.object_name(t)));
        }
    }
    for a in 0..n {
        for b in (0..n).filter(|&b| g.composable(a, b)) {
            for c in (0..n).filter(|&c| g.composable(b, c)) {
                let left = g.compose(a, b).and_then(|ab| g.compose(ab, c));
                let right = g.compose(b, c).and_then(|bc| g.compose(a, bc));
                if left.is_some() && right.is_some() && left != right {
                    report.push("associativity", vec![nm(a), nm(b), nm(c)], "(ab)c != a(bc)");
                }
            }
        }
    }
    report
}

/// A subgroupoid, stored as a set of morphism ids. Its objects are those
/// whose identities it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroupoid {
    set: FixedBitSet,
    objects: Vec<ObjectId>,
}

impl Subgroupoid {
    fn from_closed_set(g: &FiniteGroupoid, set: FixedBitSet) -> Self {
        let objects = (0..g.num_objects()).filter(|&x| set.contains(g.identity(x))).collect();
        Subgroupoid { set, objects }
    }

    /// Wraps a morphism set, verifying that it is a subgroupoid.
    pub fn from_morphisms(g: &FiniteGroupoid, ids: &[MorphismId]) -> Result<Self> {
        let mut set = FixedBitSet::with_capacity(g.num_morphisms());
        for &i in ids {
            if i >= g.num_morphisms() {
                return Err(Error::Precondition(format!("morphism id {i} out of range")));
            }
            set.insert(i);
        }
        if !is_closed(g, &set) {
            return Err(Error::Precondition("morphism set is not a subgroupoid".into()));
        }
        Ok(Self::from_closed_set(g, set))
    }

    pub fn contains(&self, g: MorphismId) -> bool {
        self.set.contains(g)
    }

    pub fn morphisms(&self) -> Vec<MorphismId> {
        self.set.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn contains_object(&self, x: ObjectId) -> bool {
        self.objects.binary_search(&x).is_ok()
    }

    pub fn is_wide(&self, g: &FiniteGroupoid) -> bool {
        self.objects.len() == g.num_objects()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn is_subset(&self, other: &Subgroupoid) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Canonical order: by size, then lexicographically by sorted ids.
    pub fn canonical_key(&self) -> (usize, Vec<MorphismId>) {
        (self.len(), self.morphisms())
    }

    /// `H ∩ K`.
    pub fn intersection(&self, g: &FiniteGroupoid, other: &Subgroupoid) -> Subgroupoid {
        let mut set = self.set.clone();
        set.intersect_with(&other.set);
        Self::from_closed_set(g, set)
    }

    /// Union of subgroupoids with disjoint object sets (still a subgroupoid).
    pub fn disjoint_union(g: &FiniteGroupoid, parts: &[Subgroupoid]) -> Subgroupoid {
        let mut set = FixedBitSet::with_capacity(g.num_morphisms());
        for p in parts {
            set.union_with(&p.set);
        }
        Self::from_closed_set(g, set)
    }

    /// Connected components, ordered by least object id.
    pub fn components(&self, g: &FiniteGroupoid) -> Vec<Subgroupoid> {
        let mut parent: Vec<ObjectId> = (0..g.num_objects()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in self.set.ones() {
            let (s, t) = (find(&mut parent, g.source(a)), find(&mut parent, g.target(a)));
            if s != t {
                parent[s.max(t)] = s.min(t);
            }
        }
        let mut groups: BTreeMap<ObjectId, FixedBitSet> = BTreeMap::new();
        for &x in &self.objects {
            let root = find(&mut parent, x);
            groups.entry(root).or_insert_with(|| FixedBitSet::with_capacity(g.num_morphisms()));
        }
        for a in self.set.ones() {
            let root = find(&mut parent, g.source(a));
            groups.get_mut(&root).expect("object of a member morphism").insert(a);
        }
        groups.into_values().map(|set| Self::from_closed_set(g, set)).collect()
    }

    /// Sorted morphism names, e.g. `{x, y, l, l^-1}` (objects first).
    pub fn display(&self, g: &FiniteGroupoid) -> String {
        let mut ids = self.morphisms();
        ids.sort_by_key(|&i| (!g.is_identity(i), i));
        format!("{{{}}}", ids.iter().map(|&i| g.name(i)).join(", "))
    }
}

fn is_closed(g: &FiniteGroupoid, set: &FixedBitSet) -> bool {
    set.ones().all(|a| {
        set.contains(g.inverse(a))
            && set.contains(g.identity(g.source(a)))
            && set.contains(g.identity(g.target(a)))
            && set
                .ones()
                .filter(|&b| g.composable(a, b))
                .all(|b| g.compose(a, b).is_some_and(|ab| set.contains(ab)))
    })
}

/// Whether an arbitrary morphism set is closed under products, inverses and
/// the identities of its endpoints.
pub fn is_subgroupoid(g: &FiniteGroupoid, ids: &[MorphismId]) -> bool {
    let mut set = FixedBitSet::with_capacity(g.num_morphisms());
    for &i in ids {
        set.insert(i);
    }
    is_closed(g, &set)
}

/// Grows `set` in place to the least subgroupoid containing it.
fn close_in_place(g: &FiniteGroupoid, set: &mut FixedBitSet) {
    let mut queue: VecDeque<MorphismId> = set.ones().collect();
    let add = |set: &mut FixedBitSet, queue: &mut VecDeque<MorphismId>, m: MorphismId| {
        if !set.put(m) {
            queue.push_back(m);
        }
    };
    while let Some(a) = queue.pop_front() {
        add(set, &mut queue, g.inverse(a));
        add(set, &mut queue, g.identity(g.source(a)));
        add(set, &mut queue, g.identity(g.target(a)));
        let members: Vec<MorphismId> = set.ones().collect();
        for b in members {
            if let Some(ab) = g.compose(a, b) {
                add(set, &mut queue, ab);
            }
            if let Some(ba) = g.compose(b, a) {
                add(set, &mut queue, ba);
            }
        }
    }
}

/// Least subgroupoid containing the generators, the identities at their
/// endpoints, and the identities of the seed objects.
pub fn subgroupoid_closure(g: &FiniteGroupoid, generators: &[MorphismId], seed_objects: &[ObjectId]) -> Subgroupoid {
    let mut set = FixedBitSet::with_capacity(g.num_morphisms());
    for &a in generators {
        set.insert(a);
    }
    for &x in seed_objects {
        set.insert(g.identity(x));
    }
    close_in_place(g, &mut set);
    Subgroupoid::from_closed_set(g, set)
}

pub fn connected_components(g: &FiniteGroupoid) -> Vec<Subgroupoid> {
    g.all().components(g)
}

/// The isotropy group `𝔾(x)` with its induced multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub object: ObjectId,
    pub elements: Vec<MorphismId>,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn isotropy_group(g: &FiniteGroupoid, x: ObjectId) -> Result<IsotropyGroup> {
    let elements = g.hom(x, x);
    if !is_subgroupoid(g, &elements) {
        return Err(Error::Inconsistency(format!("isotropy group at {} is not closed", g.object_name(x))));
    }
    Ok(IsotropyGroup { object: x, elements })
}

/// A choice of morphism `τ_y : x → y` for every object `y` in the component
/// of the base `x`, with `τ_x = id_x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal {
    base: ObjectId,
    choice: BTreeMap<ObjectId, MorphismId>,
}

impl Transversal {
    pub fn new(g: &FiniteGroupoid, base: ObjectId, choice: BTreeMap<ObjectId, MorphismId>) -> Result<Self> {
        for (&y, &t) in &choice {
            if g.source(t) != base || g.target(t) != y {
                return Err(Error::Precondition(format!("{} is not a morphism {} -> {}", g.name(t), g.object_name(base), g.object_name(y))));
            }
        }
        if choice.get(&base) != Some(&g.identity(base)) {
            return Err(Error::Precondition("transversal must choose the identity at its base".into()));
        }
        Ok(Transversal { base, choice })
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn get(&self, y: ObjectId) -> Option<MorphismId> {
        self.choice.get(&y).copied()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.choice.keys().copied()
    }

    pub fn choices(&self) -> impl Iterator<Item = (ObjectId, MorphismId)> + '_ {
        self.choice.iter().map(|(&y, &t)| (y, t))
    }
}

/// All transversals for `x` within the subgroupoid `h` (restricted to the
/// component of `x`), in lexicographic order of the chosen ids.
pub fn enumerate_transversals_in(g: &FiniteGroupoid, h: &Subgroupoid, x: ObjectId) -> impl Iterator<Item = Transversal> {
    let component = h.components(g).into_iter().find(|c| c.contains_object(x));
    let others: Vec<ObjectId> = component
        .as_ref()
        .map(|c| c.objects().iter().copied().filter(|&y| y != x).collect())
        .unwrap_or_default();
    let choices: Vec<Vec<MorphismId>> =
        others.iter().map(|&y| g.hom(x, y).into_iter().filter(|&m| h.contains(m)).collect()).collect();
    let product: Box<dyn Iterator<Item = Vec<MorphismId>>> = if component.is_none() {
        Box::new(std::iter::empty())
    } else if choices.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(choices.into_iter().multi_cartesian_product())
    };
    let id_x = g.identity(x);
    product.map(move |pick| {
        let mut choice: BTreeMap<ObjectId, MorphismId> = others.iter().copied().zip(pick).collect();
        choice.insert(x, id_x);
        Transversal { base: x, choice }
    })
}

pub fn enumerate_transversals(g: &FiniteGroupoid, x: ObjectId) -> impl Iterator<Item = Transversal> {
    enumerate_transversals_in(g, &g.all(), x)
}

/// `τ(g) = τ_{t(g)}⁻¹ g τ_{s(g)}`, an element of the isotropy group at the base.
pub fn tau_of(g: &FiniteGroupoid, t: &Transversal, m: MorphismId) -> Result<MorphismId> {
    let (Some(ts), Some(tt)) = (t.get(g.source(m)), t.get(g.target(m))) else {
        return Err(Error::Precondition(format!("{} is outside the transversal's component", g.name(m))));
    };
    let inner = g.compose(m, ts).ok_or_else(|| Error::Inconsistency("missing product".into()))?;
    g.compose(g.inverse(tt), inner).ok_or_else(|| Error::Inconsistency("missing product".into()))
}

/// The verified map `g ↦ ((s(g), t(g)), τ(g))` onto `𝔾₀² × 𝔾(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub base: ObjectId,
    pub isotropy_order: usize,
    /// Image of each morphism, indexed by morphism id.
    pub images: Vec<(ObjectId, ObjectId, MorphismId)>,
}

pub fn coarse_isomorphism(g: &FiniteGroupoid, t: &Transversal) -> Result<IsoWitness> {
    if connected_components(g).len() != 1 {
        return Err(Error::Precondition("groupoid is not connected".into()));
    }
    let x = t.base();
    let isotropy = isotropy_group(g, x)?;
    let images: Vec<(ObjectId, ObjectId, MorphismId)> =
        (0..g.num_morphisms()).map(|m| Ok((g.source(m), g.target(m), tau_of(g, t, m)?))).collect::<Result<_>>()?;
    let distinct: HashSet<_> = images.iter().collect();
    let expected = g.num_objects().pow(2) * isotropy.order();
    if distinct.len() != images.len() || images.len() != expected {
        return Err(Error::Inconsistency(format!(
            "psi is not a bijection: {} morphisms, {} distinct images, |G0|^2 |G(x)| = {expected}",
            images.len(),
            distinct.len()
        )));
    }
    for (a, b, ab) in g.products() {
        let (ia, ib, iab) = (images[a], images[b], images[ab]);
        if (ib.0, ia.1) != (iab.0, iab.1) || g.compose(ia.2, ib.2) != Some(iab.2) {
            return Err(Error::Inconsistency(format!("psi is not a functor at ({}, {})", g.name(a), g.name(b))));
        }
    }
    Ok(IsoWitness { base: x, isotropy_order: isotropy.order(), images })
}

/// Every subgroupoid (or every wide one), in canonical order.
pub fn enumerate_subgroupoids(g: &FiniteGroupoid, wide_only: bool) -> Vec<Subgroupoid> {
    enumerate_subgroupoids_with(g, wide_only, Exec::default())
}

/// Enumeration by closure: starting from the minimal subgroupoids, repeatedly
/// adjoin one morphism (or, unless `wide_only`, one object) and close. Every
/// subgroupoid `K` is reached, because any chain of single additions from a
/// minimal member of `K` stays inside `K`.
pub fn enumerate_subgroupoids_with(g: &FiniteGroupoid, wide_only: bool, exec: Exec) -> Vec<Subgroupoid> {
    let n = g.num_morphisms();
    let start: Vec<FixedBitSet> = if wide_only {
        vec![g.identities_only().set]
    } else {
        (0..g.num_objects()).map(|x| subgroupoid_closure(g, &[], &[x]).set).collect()
    };
    let mut seen: HashSet<FixedBitSet> = start.iter().cloned().collect();
    let mut frontier = start;
    while !frontier.is_empty() {
        let grown = exec.flat_map(&frontier, |set| {
            let mut out = Vec::new();
            for m in (0..n).filter(|&m| !set.contains(m)) {
                let mut next = set.clone();
                next.insert(m);
                close_in_place(g, &mut next);
                out.push(next);
            }
            out
        });
        let mut next: Vec<FixedBitSet> = grown.into_iter().filter(|s| !seen.contains(s)).collect();
        next.sort_by(|a, b| a.ones().cmp(b.ones()));
        next.dedup();
        seen.extend(next.iter().cloned());
        frontier = next;
    }
    let mut all: Vec<Subgroupoid> = seen.into_iter().map(|s| Subgroupoid::from_closed_set(g, s)).collect();
    all.sort_by_key(|s| s.canonical_key());
    all
}
