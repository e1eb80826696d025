//! Invariant subrings `S^{α_ℋ}` and fixer sets `𝔾_T`.
//!
//! The definitional solver ([`invariants_of`]) is the source of truth. The
//! transversal-based constructions ([`invariants_via_phi`],
//! [`invariance_test_via_tau`], [`fixer_characterization_check`]) need a
//! group-type witness and serve as independent cross-checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{group_type_within, is_global, PartialAction};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::groupoid::{is_subgroupoid, tau_of, MorphismId, ObjectId, Subgroupoid, Transversal};
use crate::ring::{subring_from_solution_space, subring_from_span, BlockSubring, LinearCondition, RingElement};

/// The equations `v_{σ_g(i)} = φ_{g,i}(v_i)` for `g ∈ h`, `i ∈ D(g⁻¹)`.
pub fn invariance_conditions(a: &PartialAction, h: &Subgroupoid) -> Vec<LinearCondition> {
    let ring = a.ring();
    h.morphisms()
        .into_iter()
        .filter(|&g| !a.groupoid().is_identity(g))
        .flat_map(|g| a.map(g).entries().to_vec())
        .flat_map(|(i, j, phi)| LinearCondition::transport(ring, i, j, phi))
        .collect()
}

/// `S^{α_h}`, by solving the invariance equations. Indices over objects
/// outside `h` stay unconstrained.
pub fn invariants_of(a: &PartialAction, h: &Subgroupoid) -> Result<BlockSubring> {
    subring_from_solution_space(a.ring(), &invariance_conditions(a, h))
        .map_err(|e| Error::Inconsistency(format!("invariance system not block-expressible: {e}")))
}

/// Definitional test: `α_g(v1_{g⁻¹}) = v1_g` for every `g ∈ h`.
pub fn is_invariant(a: &PartialAction, h: &Subgroupoid, v: &RingElement) -> bool {
    h.morphisms().into_iter().all(|g| fixes(a, g, std::slice::from_ref(v)))
}

/// Whether `g` fixes every listed element: `α_g(t1_{g⁻¹}) = t1_g`.
pub fn fixes(a: &PartialAction, g: MorphismId, elements: &[RingElement]) -> bool {
    let ring = a.ring();
    let unit = a.unit(g);
    elements.iter().all(|t| a.apply(g, t) == ring.mul(t, &unit))
}

/// A prime-field basis of `S_y^{α_{ℋ(y)}}` (as elements of `S` supported on `supp(y)`).
pub fn isotropy_invariants(a: &PartialAction, h: &Subgroupoid, y: ObjectId) -> Result<Vec<RingElement>> {
    let g = a.groupoid();
    let local: Vec<MorphismId> = g.hom(y, y).into_iter().filter(|&m| h.contains(m)).collect();
    let iso = Subgroupoid::from_morphisms(g, &local)?;
    let t = invariants_of(a, &iso)?;
    Ok(t.restricted_basis(a.ring(), a.ring().support(y)))
}

/// `Φ_τ(v) = Σ_y α_{τ_y}(v)` over the objects of the transversal.
pub fn phi(a: &PartialAction, t: &Transversal, v: &RingElement) -> RingElement {
    let ring = a.ring();
    t.choices().fold(ring.zero(), |acc, (_, tau)| ring.add(&acc, &a.apply(tau, v)))
}

/// `S^{α_h}` assembled from the isotropy invariants at each component's base
/// object, pushed along `Φ_τ`, plus `S_z` for objects `z` outside `h`.
pub fn invariants_via_phi(a: &PartialAction, h: &Subgroupoid) -> Result<BlockSubring> {
    let g = a.groupoid();
    let ring = a.ring();
    let gt = group_type_within(a, h);
    let Some(witness) = gt.witness() else {
        return Err(Error::GroupTypeWitnessRequired(h.display(g)));
    };
    let mut span = Vec::new();
    for t in witness {
        for v in isotropy_invariants(a, h, t.base())? {
            span.push(phi(a, t, &v));
        }
    }
    for z in (0..g.num_objects()).filter(|&z| !h.contains_object(z)) {
        span.extend(ring.prime_basis().into_iter().filter(|v| ring.support_of(v).iter().all(|&i| ring.owner(i) == z)));
    }
    subring_from_span(ring, &span).map_err(|e| Error::Inconsistency(format!("Φ image not block-expressible: {e}")))
}

/// The transversal test for invariance on one component of `h`: decompose
/// `v1_Y = Σ_y α_{τ_y}(a_{x,y})` with `a_{x,y} = α_{τ_y⁻¹}(v1_y)`, then check
/// `α_{τ(g)}(a_{x,s(g)}1_{τ(g)⁻¹}) = a_{x,t(g)}1_{τ(g)}` for all `g ∈ h` in
/// the component.
pub fn invariance_test_via_tau_within(a: &PartialAction, h: &Subgroupoid, t: &Transversal, v: &RingElement) -> Result<bool> {
    let g = a.groupoid();
    let ring = a.ring();
    let mut parts: BTreeMap<ObjectId, RingElement> = BTreeMap::new();
    for (y, tau) in t.choices() {
        let vy = ring.mul(v, &ring.unit_of(y));
        let ay = a.apply(g.inverse(tau), &vy);
        if a.apply(tau, &ay) != vy {
            return Err(Error::Inconsistency(format!(
                "component of {} at {} is outside the image of alpha_{}",
                ring.format_element(v),
                g.object_name(y),
                g.name(tau)
            )));
        }
        parts.insert(y, ay);
    }
    for m in h.morphisms().into_iter().filter(|&m| parts.contains_key(&g.source(m))) {
        let l = tau_of(g, t, m)?;
        let lhs = a.apply(l, &parts[&g.source(m)]);
        let rhs = ring.mul(&parts[&g.target(m)], &a.unit(l));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`invariance_test_via_tau_within`] for the whole groupoid.
pub fn invariance_test_via_tau(a: &PartialAction, t: &Transversal, v: &RingElement) -> Result<bool> {
    invariance_test_via_tau_within(a, &a.groupoid().all(), t, v)
}

/// `𝔾_T`, with the subgroupoid it forms when it is closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixerSet {
    pub morphisms: Vec<MorphismId>,
    #[serde(skip)]
    pub subgroupoid: Option<Subgroupoid>,
}

impl FixerSet {
    pub fn is_subgroupoid(&self) -> bool {
        self.subgroupoid.is_some()
    }

    pub fn contains(&self, g: MorphismId) -> bool {
        self.morphisms.binary_search(&g).is_ok()
    }
}

pub fn fixer_set(a: &PartialAction, t: &BlockSubring) -> FixerSet {
    fixer_set_with(a, t, Exec::default())
}

/// Morphisms fixing a prime basis of `T` (equivalent to fixing all of `T`,
/// since the condition is linear over the prime field).
pub fn fixer_set_with(a: &PartialAction, t: &BlockSubring, exec: Exec) -> FixerSet {
    let g = a.groupoid();
    let basis = t.prime_basis(a.ring());
    let all: Vec<MorphismId> = (0..g.num_morphisms()).collect();
    let morphisms = exec.filter_map(&all, |&m| fixes(a, m, &basis).then_some(m));
    let subgroupoid = if is_subgroupoid(g, &morphisms) { Subgroupoid::from_morphisms(g, &morphisms).ok() } else { None };
    FixerSet { morphisms, subgroupoid }
}

/// `𝔾(y)_{T_y}`: isotropy elements at `y` fixing `T·1_y`.
pub fn isotropy_fixer(a: &PartialAction, t: &BlockSubring, y: ObjectId) -> Vec<MorphismId> {
    let basis = t.restricted_basis(a.ring(), a.ring().support(y));
    a.groupoid().hom(y, y).into_iter().filter(|&l| fixes(a, l, &basis)).collect()
}

/// Both sides of the transversal characterisation of `𝔾_T` for one morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub morphism: MorphismId,
    /// `g ∈ 𝔾_T`, evaluated directly.
    pub lhs: bool,
    /// `s(g), t(g)` share an `ℋ`-component `Y_k` and `τ_k(g)` fixes `T_{y_k}`.
    pub rhs: bool,
}

impl AgreementReport {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The fixer lemma speaks about wide `h` and actions with every `1_g ≠ 0`;
/// a morphism acting on nothing fixes every subring vacuously.
fn lemma_hypotheses(a: &PartialAction, h: &Subgroupoid) -> Result<()> {
    let g = a.groupoid();
    if !h.is_wide(g) {
        return Err(Error::Precondition(format!("{} is not a wide subgroupoid", h.display(g))));
    }
    if let Some(m) = a.vanishing_morphism() {
        return Err(Error::HypothesisUnmet(format!("1_g = 0 for g = {}", g.name(m))));
    }
    Ok(())
}

/// Evaluates the characterisation for every morphism, with `T = S^{α_h}`.
/// Only meaningful for wide `h`; anything else is a precondition error.
pub fn fixer_characterization_all(a: &PartialAction, h: &Subgroupoid) -> Result<Vec<AgreementReport>> {
    let g = a.groupoid();
    lemma_hypotheses(a, h)?;
    let t = invariants_of(a, h)?;
    let gt = group_type_within(a, h);
    let Some(witness) = gt.witness() else {
        return Err(Error::GroupTypeWitnessRequired(h.display(g)));
    };
    let basis = t.prime_basis(a.ring());
    let local: Vec<(Vec<RingElement>, &Transversal)> =
        witness.iter().map(|tr| (t.restricted_basis(a.ring(), a.ring().support(tr.base())), tr)).collect();
    (0..g.num_morphisms())
        .map(|m| {
            let lhs = fixes(a, m, &basis);
            let mut rhs = false;
            for (tb, tr) in &local {
                if tr.get(g.source(m)).is_some() && tr.get(g.target(m)).is_some() {
                    rhs = fixes(a, tau_of(g, tr, m)?, tb);
                }
            }
            Ok(AgreementReport { morphism: m, lhs, rhs })
        })
        .collect()
}

pub fn fixer_characterization_check(a: &PartialAction, h: &Subgroupoid, m: MorphismId) -> Result<AgreementReport> {
    Ok(fixer_characterization_all(a, h)?[m])
}

/// The two equivalences about `𝔾_T` for `T = S^{α_h}`, each side computed
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixerCriterion {
    /// `𝔾_T` is a wide subgroupoid.
    pub is_subgroupoid: bool,
    /// Every base fixer `𝔾(y_j)_{T_{y_j}}` is a subgroup.
    pub base_fixers_are_groups: bool,
    /// `𝔾_T = h`.
    pub equals_h: bool,
    /// Every base fixer equals `ℋ_j(y_j)`.
    pub base_fixers_match: bool,
}

impl FixerCriterion {
    pub fn consistent(&self) -> bool {
        self.is_subgroupoid == self.base_fixers_are_groups && self.equals_h == self.base_fixers_match
    }
}

pub fn fixer_criterion(a: &PartialAction, h: &Subgroupoid) -> Result<FixerCriterion> {
    let g = a.groupoid();
    lemma_hypotheses(a, h)?;
    let t = invariants_of(a, h)?;
    let gt = group_type_within(a, h);
    let Some(witness) = gt.witness() else {
        return Err(Error::GroupTypeWitnessRequired(h.display(g)));
    };
    let fixer = fixer_set(a, &t);
    let mut groups = true;
    let mut matches = true;
    for tr in witness {
        let y = tr.base();
        let k = isotropy_fixer(a, &t, y);
        let closed = k.iter().all(|&p| k.iter().all(|&q| k.contains(&g.mul(p, q))));
        groups &= closed;
        let hy: Vec<MorphismId> = g.hom(y, y).into_iter().filter(|&l| h.contains(l)).collect();
        matches &= k == hy;
    }
    Ok(FixerCriterion {
        is_subgroupoid: fixer.is_subgroupoid(),
        base_fixers_are_groups: groups,
        equals_h: fixer.morphisms == h.morphisms(),
        base_fixers_match: matches,
    })
}

/// One connected piece of a decomposition over a global action: the piece's
/// objects, its base object, the transversal used for gluing, and the
/// isotropy data at the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalPiece {
    pub objects: Vec<ObjectId>,
    pub base: ObjectId,
    pub transversal: Transversal,
    /// Isotropy invariants at the base (subgroupoid mode) or the base fixer
    /// group (subring mode).
    pub isotropy_invariants: Vec<RingElement>,
    pub isotropy_fixer: Vec<MorphismId>,
}

/// A decomposition of `S^{α_ℋ}` or of `𝔾_T` for a global action, grouped by
/// connected component of `𝔾`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalDecomposition {
    Invariants { components: Vec<Vec<GlobalPiece>>, result: BlockSubring },
    Fixer { components: Vec<Vec<GlobalPiece>>, result: Vec<MorphismId> },
}

pub enum GlobalArg<'a> {
    Subgroupoid(&'a Subgroupoid),
    Subring(&'a BlockSubring),
}

/// For a global action: `S^{α_ℋ}` as the glued sum of isotropy invariants
/// over the components of `ℋ` inside each component of `𝔾`, or `𝔾_T` as the
/// union of conjugates `τ_w 𝔾(y)_{T_y} τ_z⁻¹` over the classes of objects
/// joined by `T`-fixing morphisms. Both results are cross-checked against
/// the definitional computation.
pub fn global_case_decomposition(a: &PartialAction, arg: GlobalArg<'_>) -> Result<GlobalDecomposition> {
    if !is_global(a) {
        return Err(Error::Precondition("decomposition requires a global action".into()));
    }
    let g = a.groupoid();
    let ring = a.ring();
    let components = crate::groupoid::connected_components(g);
    match arg {
        GlobalArg::Subgroupoid(h) => {
            let mut out = Vec::new();
            let mut span = Vec::new();
            for comp in &components {
                let hj = h.intersection(g, comp);
                let mut pieces = Vec::new();
                let gt = group_type_within(a, &hj);
                let witness = gt.witness().ok_or_else(|| Error::Inconsistency("global action with a non-group-type restriction".into()))?;
                for (piece, tr) in hj.components(g).iter().zip(witness) {
                    let inv = isotropy_invariants(a, h, tr.base())?;
                    span.extend(inv.iter().map(|v| phi(a, tr, v)));
                    pieces.push(GlobalPiece {
                        objects: piece.objects().to_vec(),
                        base: tr.base(),
                        transversal: tr.clone(),
                        isotropy_invariants: inv,
                        isotropy_fixer: g.hom(tr.base(), tr.base()).into_iter().filter(|&l| h.contains(l)).collect(),
                    });
                }
                out.push(pieces);
            }
            for z in (0..g.num_objects()).filter(|&z| !h.contains_object(z)) {
                span.extend(ring.support(z).iter().flat_map(|&i| ring.field().basis().into_iter().map(move |b| (i, b))).map(|(i, b)| ring.monomial(i, b)));
            }
            let result = subring_from_span(ring, &span)?;
            if result != invariants_of(a, h)? {
                return Err(Error::Inconsistency("glued isotropy invariants differ from the invariant subring".into()));
            }
            Ok(GlobalDecomposition::Invariants { components: out, result })
        }
        GlobalArg::Subring(t) => {
            let basis = t.prime_basis(ring);
            let fixing: Vec<MorphismId> = (0..g.num_morphisms()).filter(|&m| fixes(a, m, &basis)).collect();
            let mut out = Vec::new();
            let mut result = Vec::new();
            for comp in &components {
                // Classes of objects joined by T-fixing morphisms.
                let mut class_of: BTreeMap<ObjectId, ObjectId> = BTreeMap::new();
                for &y in comp.objects() {
                    if class_of.contains_key(&y) {
                        continue;
                    }
                    for &z in comp.objects() {
                        if !class_of.contains_key(&z) && g.hom(y, z).iter().any(|m| fixing.contains(m)) {
                            class_of.insert(z, y);
                        }
                    }
                    class_of.entry(y).or_insert(y);
                }
                let mut pieces = Vec::new();
                let bases: Vec<ObjectId> = comp.objects().iter().copied().filter(|y| class_of[y] == *y).collect();
                for base in bases {
                    let objects: Vec<ObjectId> = comp.objects().iter().copied().filter(|y| class_of[y] == base).collect();
                    let choice: BTreeMap<ObjectId, MorphismId> = objects
                        .iter()
                        .map(|&y| {
                            let tau = if y == base { g.identity(base) } else { *g.hom(base, y).iter().find(|m| fixing.contains(m)).expect("class member") };
                            (y, tau)
                        })
                        .collect();
                    let tr = Transversal::new(g, base, choice)?;
                    let k = isotropy_fixer(a, t, base);
                    for (_, tw) in tr.choices() {
                        for (_, tz) in tr.choices() {
                            for &l in &k {
                                result.push(g.mul(g.mul(tw, l), g.inverse(tz)));
                            }
                        }
                    }
                    pieces.push(GlobalPiece {
                        objects,
                        base,
                        transversal: tr,
                        isotropy_invariants: t.restricted_basis(ring, ring.support(base)),
                        isotropy_fixer: k,
                    });
                }
                out.push(pieces);
            }
            result.sort_unstable();
            result.dedup();
            if result != fixing {
                return Err(Error::Inconsistency("conjugated fixer groups differ from the fixer set".into()));
            }
            Ok(GlobalDecomposition::Fixer { components: out, result })
        }
    }
}
