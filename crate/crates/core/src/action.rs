//! Partial actions of a finite groupoid on a split ring, stored as twisted
//! partial bijections of the primitive idempotents:
//! `α_g(Σ a_i e_i) = Σ φ_{g,i}(a_i) e_{σ_g(i)}` for `i ∈ D(g⁻¹)`.
//!
//! With this representation `S_g = ⊕_{i ∈ D(g)} K e_i`, `1_g` is the
//! indicator of `D(g)`, and the partial-action axioms reduce to finite checks
//! on index sets and automorphism labels.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Automorphism;
use crate::groupoid::{FiniteGroupoid, Morphism, MorphismId, ObjectId, Subgroupoid, Transversal};
use crate::report::ValidationReport;
use crate::ring::{RingElement, SplitRing};

/// `σ_g` with its automorphism labels, as sorted triples `(i, σ_g(i), φ_{g,i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistedPartialMap {
    entries: Vec<(usize, usize, Automorphism)>,
}

impl TwistedPartialMap {
    pub fn new(mut entries: Vec<(usize, usize, Automorphism)>) -> Self {
        entries.sort();
        TwistedPartialMap { entries }
    }

    /// The identity on the given indices.
    pub fn identity(indices: &[usize]) -> Self {
        Self::new(indices.iter().map(|&i| (i, i, Automorphism::IDENTITY)).collect())
    }

    pub fn entries(&self) -> &[(usize, usize, Automorphism)] {
        &self.entries
    }

    /// `D(g⁻¹)`, sorted.
    pub fn domain(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// `D(g)`, sorted.
    pub fn codomain(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.entries.iter().map(|e| e.1).collect();
        c.sort_unstable();
        c
    }

    pub fn image(&self, i: usize) -> Option<(usize, Automorphism)> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| (self.entries[k].1, self.entries[k].2))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    groupoid: FiniteGroupoid,
    ring: SplitRing,
    maps: Vec<TwistedPartialMap>,
}

impl PartialAction {
    /// Checks only index ranges; the axioms are checked by [`validate_action`].
    pub fn new(groupoid: FiniteGroupoid, ring: SplitRing, maps: Vec<TwistedPartialMap>) -> Result<Self> {
        if maps.len() != groupoid.num_morphisms() {
            return Err(Error::Precondition("one map per morphism required".into()));
        }
        if ring.num_objects() != groupoid.num_objects() {
            return Err(Error::Precondition("ring and groupoid have different object sets".into()));
        }
        if maps.iter().flat_map(|m| &m.entries).any(|&(i, j, _)| i >= ring.n() || j >= ring.n()) {
            return Err(Error::Precondition("idempotent index out of range".into()));
        }
        Ok(PartialAction { groupoid, ring, maps })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn ring(&self) -> &SplitRing {
        &self.ring
    }

    pub fn map(&self, g: MorphismId) -> &TwistedPartialMap {
        &self.maps[g]
    }

    /// `D(g)`: the indices spanning `S_g`.
    pub fn d(&self, g: MorphismId) -> Vec<usize> {
        self.maps[g].codomain()
    }

    /// `1_g`.
    pub fn unit(&self, g: MorphismId) -> RingElement {
        self.ring.indicator(&self.d(g))
    }

    /// Some morphism with `1_g = 0`, if any. The correspondence theory
    /// assumes there is none.
    pub fn vanishing_morphism(&self) -> Option<MorphismId> {
        (0..self.maps.len()).find(|&g| self.maps[g].entries.is_empty())
    }

    /// `α_g(v · 1_{g⁻¹})`.
    pub fn apply(&self, g: MorphismId, v: &RingElement) -> RingElement {
        let field = self.ring.field();
        let mut coeffs = self.ring.zero().coeffs().to_vec();
        for &(i, j, phi) in &self.maps[g].entries {
            coeffs[j] = field.apply(phi, v.coeff(i));
        }
        RingElement::from_coeffs(coeffs)
    }

    /// Same action with object, morphism and idempotent names passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> PartialAction {
        PartialAction { groupoid: self.groupoid.renamed(&f), ring: self.ring.renamed(&f), maps: self.maps.clone() }
    }

    /// Disjoint union with another action over the same field.
    pub fn disjoint_union(&self, other: &PartialAction) -> Result<PartialAction> {
        let groupoid = self.groupoid.disjoint_union(&other.groupoid)?;
        let ring = self.ring.disjoint_union(&other.ring)?;
        let shift = self.ring.n();
        let mut maps = self.maps.clone();
        maps.extend(other.maps.iter().map(|m| TwistedPartialMap::new(m.entries.iter().map(|&(i, j, p)| (i + shift, j + shift, p)).collect())));
        PartialAction::new(groupoid, ring, maps)
    }
}

/// Checks the partial-action axioms together with the derived
/// identities `α_g(S_{g⁻¹} ∩ S_h) = S_g ∩ S_{gh}` and
/// `α_g(α_h(a1_{h⁻¹})1_{g⁻¹}) = α_{gh}(a1_{(gh)⁻¹})1_g` (on a prime basis of `S`).
pub fn validate_action(a: &PartialAction) -> ValidationReport {
    validate_action_with(a, Exec::default())
}

pub fn validate_action_with(a: &PartialAction, exec: Exec) -> ValidationReport {
    let g = a.groupoid();
    let ring = a.ring();
    let field = ring.field();
    let nm = |m: MorphismId| g.name(m).to_string();
    let morphisms: Vec<MorphismId> = (0..g.num_morphisms()).collect();

    let per_morphism = exec.map(&morphisms, |&m| {
        let mut r = ValidationReport::default();
        let map = a.map(m);
        let (s, t) = (g.source(m), g.target(m));
        if map.domain().iter().any(|i| ring.owner(*i) != s) {
            r.push("map-domain", vec![nm(m)], format!("domain leaves supp({})", g.object_name(s)));
        }
        if map.codomain().iter().any(|i| ring.owner(*i) != t) {
            r.push("map-domain", vec![nm(m)], format!("image leaves supp({})", g.object_name(t)));
        }
        let dom = map.domain();
        let mut dedup = dom.clone();
        dedup.dedup();
        let cod = map.codomain();
        let mut cdedup = cod.clone();
        cdedup.dedup();
        if dedup.len() != dom.len() || cdedup.len() != cod.len() {
            r.push("map-bijective", vec![nm(m)], "index map is not a bijection");
        }
        if g.is_identity(m) && *map != TwistedPartialMap::identity(ring.support(s)) {
            r.push("identity-map", vec![nm(m)], "identity does not act as the identity of S_x");
        }
        let inv = a.map(g.inverse(m));
        for &(i, j, phi) in map.entries() {
            match inv.image(j) {
                Some((back, psi)) if back == i && field.compose(psi, phi).is_identity() => {}
                _ => r.push("inverse-compatibility", vec![nm(m), nm(g.inverse(m))], format!("alpha of the inverse does not undo {} at {}", nm(m), ring.name(i))),
            }
        }
        if inv.entries().len() != map.entries().len() {
            r.push("inverse-compatibility", vec![nm(m), nm(g.inverse(m))], "domains of g and its inverse differ in size");
        }
        r
    });

    let per_pair = exec.map(&morphisms, |&x| {
        let mut r = ValidationReport::default();
        for y in (0..g.num_morphisms()).filter(|&y| g.composable(x, y)) {
            let Some(xy) = g.compose(x, y) else { continue };
            let (mx, my, mxy) = (a.map(x), a.map(y), a.map(xy));
            let dom_x = mx.domain();
            // (iii) α_y⁻¹(S_{x⁻¹} ∩ S_y) ⊆ S_{(xy)⁻¹}; (iv) α_x α_y = α_{xy} there.
            for &(i, j, phi) in my.entries() {
                if !dom_x.contains(&j) {
                    continue;
                }
                let (k, psi) = mx.image(j).expect("j in domain of x");
                match mxy.image(i) {
                    None => r.push(
                        "domain-containment",
                        vec![nm(x), nm(y)],
                        format!("{} lies in the domain of the composite but not of {}", ring.name(i), nm(xy)),
                    ),
                    Some((k2, chi)) => {
                        if k2 != k || field.compose(psi, phi) != chi {
                            r.push("composition-extension", vec![nm(x), nm(y)], format!("alpha_{} alpha_{} differs from alpha_{} at {}", nm(x), nm(y), nm(xy), ring.name(i)));
                        }
                    }
                }
            }
            // α_x(S_{x⁻¹} ∩ S_y) = S_x ∩ S_{xy}
            let d_y = my.codomain();
            let mut lhs: Vec<usize> = mx.entries().iter().filter(|e| d_y.contains(&e.0)).map(|e| e.1).collect();
            lhs.sort_unstable();
            let d_xy = mxy.codomain();
            let rhs: Vec<usize> = mx.codomain().into_iter().filter(|j| d_xy.contains(j)).collect();
            if lhs != rhs {
                r.push("intersection-identity", vec![nm(x), nm(y)], "alpha_g(S_{g^-1} ∩ S_h) != S_g ∩ S_gh");
            }
            // α_x(α_y(a 1_{y⁻¹}) 1_{x⁻¹}) = α_{xy}(a 1_{(xy)⁻¹}) 1_x on a prime basis of S.
            let ux = a.unit(x);
            for basis_el in ring.prime_basis() {
                let left = a.apply(x, &a.apply(y, &basis_el));
                let right = ring.mul(&a.apply(xy, &basis_el), &ux);
                if left != right {
                    r.push("product-identity", vec![nm(x), nm(y)], format!("fails on {}", ring.format_element(&basis_el)));
                    break;
                }
            }
        }
        r
    });

    let mut report = ValidationReport::default();
    for r in per_morphism.into_iter().chain(per_pair) {
        report.extend(r);
    }
    report
}

/// Whether `S_g = S_{t(g)}` for every `g`.
pub fn is_global(a: &PartialAction) -> bool {
    let g = a.groupoid();
    (0..g.num_morphisms()).all(|m| a.d(m) == a.ring().support(g.target(m)))
}

/// A restricted action with the index maps back into the original.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub action: PartialAction,
    /// New morphism id → original morphism id.
    pub morphism_map: Vec<MorphismId>,
    /// New object id → original object id.
    pub object_map: Vec<ObjectId>,
    /// New idempotent index → original index.
    pub index_map: Vec<usize>,
}

/// Restriction to a subgroupoid: the same maps on its morphisms, acting on
/// `S_ℋ = ⊕_{z ∈ ℋ₀} S_z`.
pub fn restrict_to_subgroupoid(a: &PartialAction, h: &Subgroupoid) -> Result<Restriction> {
    let g = a.groupoid();
    let object_map: Vec<ObjectId> = h.objects().to_vec();
    let morphism_map: Vec<MorphismId> = h.morphisms();
    let obj_new: BTreeMap<ObjectId, ObjectId> = object_map.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let mor_new: BTreeMap<MorphismId, MorphismId> = morphism_map.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let index_map: Vec<usize> = (0..a.ring().n()).filter(|&i| obj_new.contains_key(&a.ring().owner(i))).collect();
    let idx_new: BTreeMap<usize, usize> = index_map.iter().enumerate().map(|(k, &i)| (i, k)).collect();

    let objects = object_map.iter().map(|&x| g.object_name(x).to_string()).collect();
    let morphisms = morphism_map
        .iter()
        .map(|&m| Morphism { name: g.name(m).to_string(), source: obj_new[&g.source(m)], target: obj_new[&g.target(m)] })
        .collect();
    let identities = object_map.iter().map(|&x| mor_new[&g.identity(x)]).collect();
    let products: Vec<_> = g
        .products()
        .into_iter()
        .filter_map(|(x, y, xy)| Some((*mor_new.get(&x)?, *mor_new.get(&y)?, *mor_new.get(&xy)?)))
        .collect();
    let inverse = morphism_map.iter().map(|&m| mor_new[&g.inverse(m)]).collect();
    let groupoid = FiniteGroupoid::from_table(objects, morphisms, identities, &products, inverse)?;
    let ring = a.ring().sub_ring(&index_map, &object_map)?;
    let maps = morphism_map
        .iter()
        .map(|&m| TwistedPartialMap::new(a.map(m).entries().iter().map(|&(i, j, p)| (idx_new[&i], idx_new[&j], p)).collect()))
        .collect();
    Ok(Restriction { action: PartialAction::new(groupoid, ring, maps)?, morphism_map, object_map, index_map })
}

/// Restriction of a global action `β` to the ideal `⊕_{i ∈ D} K e_i`:
/// `S_g = S_{t(g)} ∩ β_g(S_{s(g)})`, `α_g = β_g` restricted to `S_{g⁻¹}`.
pub fn restrict_to_ideal(a: &PartialAction, ideal: &[usize]) -> Result<Restriction> {
    if !is_global(a) {
        return Err(Error::Precondition("ideal restriction needs a global action".into()));
    }
    let g = a.groupoid();
    let mut index_map: Vec<usize> = ideal.to_vec();
    index_map.sort_unstable();
    index_map.dedup();
    if index_map.iter().any(|&i| i >= a.ring().n()) {
        return Err(Error::Precondition("ideal index out of range".into()));
    }
    let idx_new: BTreeMap<usize, usize> = index_map.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let object_map: Vec<ObjectId> = (0..g.num_objects()).collect();
    let ring = a.ring().sub_ring(&index_map, &object_map)?;
    let maps = (0..g.num_morphisms())
        .map(|m| {
            TwistedPartialMap::new(
                a.map(m)
                    .entries()
                    .iter()
                    .filter_map(|&(i, j, p)| Some((*idx_new.get(&i)?, *idx_new.get(&j)?, p)))
                    .collect(),
            )
        })
        .collect();
    Ok(Restriction {
        action: PartialAction::new(g.clone(), ring, maps)?,
        morphism_map: (0..g.num_morphisms()).collect(),
        object_map,
        index_map,
    })
}

/// Why an action is not group-type: no morphism `τ : x → y` of the component
/// satisfies `D(τ⁻¹) = supp(x)` and `D(τ) = supp(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub base: ObjectId,
    pub object: ObjectId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupType {
    /// One transversal per component of the subgroupoid, by least object.
    Witness(Vec<Transversal>),
    No(Obstruction),
}

impl GroupType {
    pub fn is_group_type(&self) -> bool {
        matches!(self, GroupType::Witness(_))
    }

    pub fn witness(&self) -> Option<&[Transversal]> {
        match self {
            GroupType::Witness(w) => Some(w),
            GroupType::No(_) => None,
        }
    }
}

/// Whether `τ : x → y` carries `S_x` onto `S_y`.
pub fn is_total(a: &PartialAction, tau: MorphismId) -> bool {
    let g = a.groupoid();
    let map = a.map(tau);
    map.domain() == a.ring().support(g.source(tau)) && map.codomain() == a.ring().support(g.target(tau))
}

/// Group-type test for the restriction of `a` to `h`; transversals use ids of
/// the ambient groupoid. Each component is based at its least object, and the
/// least admissible morphism is chosen for every other object (the choices
/// are independent, so this is the lexicographically least witness).
pub fn group_type_within(a: &PartialAction, h: &Subgroupoid) -> GroupType {
    let g = a.groupoid();
    let mut witnesses = Vec::new();
    for comp in h.components(g) {
        let x = comp.objects()[0];
        let mut choice = BTreeMap::new();
        choice.insert(x, g.identity(x));
        for &y in comp.objects().iter().skip(1) {
            match g.hom(x, y).into_iter().find(|&t| comp.contains(t) && is_total(a, t)) {
                Some(t) => {
                    choice.insert(y, t);
                }
                None => return GroupType::No(Obstruction { base: x, object: y }),
            }
        }
        witnesses.push(Transversal::new(g, x, choice).expect("hom-set members"));
    }
    GroupType::Witness(witnesses)
}

pub fn is_group_type(a: &PartialAction) -> GroupType {
    group_type_within(a, &a.groupoid().all())
}

/// Checks `S_g = S_{gτ_{y,z}}` for every `g ∈ h` with `s(g) = z`, where
/// `τ_{y,z} = τ_z τ_y⁻¹` for objects `y, z` of the transversal's component.
pub fn idempotent_translation_check_within(a: &PartialAction, h: &Subgroupoid, t: &Transversal) -> ValidationReport {
    let g = a.groupoid();
    let mut report = ValidationReport::default();
    let objects: Vec<ObjectId> = t.objects().collect();
    for &y in &objects {
        for &z in &objects {
            let (ty, tz) = (t.get(y).expect("object of t"), t.get(z).expect("object of t"));
            let Some(tyz) = g.compose(tz, g.inverse(ty)) else { continue };
            for m in (0..g.num_morphisms()).filter(|&m| h.contains(m) && g.source(m) == z) {
                let Some(mt) = g.compose(m, tyz) else { continue };
                if a.d(m) != a.d(mt) {
                    report.push("idempotent-translation", vec![g.name(m).to_string(), g.name(tyz).to_string()], format!("S_{} != S_{}", g.name(m), g.name(mt)));
                }
            }
        }
    }
    report
}

pub fn idempotent_translation_check(a: &PartialAction, t: &Transversal) -> ValidationReport {
    idempotent_translation_check_within(a, &a.groupoid().all(), t)
}
