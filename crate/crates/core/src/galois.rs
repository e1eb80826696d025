//! Galois coordinate systems, α-strong subrings, the admissible class
//! `𝔅(S)`, and the certified correspondence `ℋ ↦ S^{α_ℋ}`, `T ↦ 𝔾_T`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::action::{group_type_within, restrict_to_subgroupoid, validate_action, PartialAction, Restriction};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::groupoid::{connected_components, enumerate_subgroupoids_with, MorphismId, ObjectId, Subgroupoid};
use crate::invariants::{fixer_set, fixes, invariants_of};
use crate::linalg;
use crate::ring::{enumerate_block_subrings, BlockSubring, RingElement};
use crate::separability::separability_check;

/// A partial Galois coordinate system `{a_i, b_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisCoords {
    pub a: Vec<RingElement>,
    pub b: Vec<RingElement>,
}

impl GaloisCoords {
    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// `a_i = b_i = e_i` for every primitive idempotent.
    pub fn idempotent_basis(act: &PartialAction) -> Self {
        let ring = act.ring();
        let e: Vec<RingElement> = (0..ring.n()).map(|i| ring.e(i)).collect();
        GaloisCoords { a: e.clone(), b: e }
    }
}

/// `Σ_i a_i α_g(b_i 1_{g⁻¹})`.
fn coordinate_sum(act: &PartialAction, c: &GaloisCoords, g: MorphismId) -> RingElement {
    let ring = act.ring();
    c.a.iter().zip(&c.b).fold(ring.zero(), |acc, (ai, bi)| ring.add(&acc, &ring.mul(ai, &act.apply(g, bi))))
}

/// The required value of the coordinate sum at `g`: `1_z` if `g = id_z`,
/// zero otherwise.
fn coordinate_target(act: &PartialAction, g: MorphismId) -> RingElement {
    let gr = act.groupoid();
    if gr.is_identity(g) {
        act.ring().unit_of(gr.target(g))
    } else {
        act.ring().zero()
    }
}

/// Checks the coordinate identity for every pair `(z, g)` with `t(g) = z`
/// (for `t(g) ≠ z` both sides vanish after multiplying by `1_z`). Returns the
/// first failure, scanning objects in order, then morphisms.
pub fn verify_coords(act: &PartialAction, c: &GaloisCoords) -> std::result::Result<(), (ObjectId, MorphismId)> {
    verify_coords_on(act, c, &act.groupoid().all())
}

/// [`verify_coords`] restricted to the morphisms of `h`.
pub fn verify_coords_on(act: &PartialAction, c: &GaloisCoords, h: &Subgroupoid) -> std::result::Result<(), (ObjectId, MorphismId)> {
    let g = act.groupoid();
    for z in 0..g.num_objects() {
        for m in (0..g.num_morphisms()).filter(|&m| g.target(m) == z && h.contains(m)) {
            if coordinate_sum(act, c, m) != coordinate_target(act, m) {
                return Err((z, m));
            }
        }
    }
    Ok(())
}

/// Finds a coordinate system: first `a_i = b_i = e_i`, then with `a` fixed to
/// a prime-field basis of `S`, solving the (linear) system for `b`.
///
/// The second step is complete: if `{a_i, b_i}` is any coordinate system and
/// `a_i = Σ_k c_{ik} p_k` over the prime basis `p_k`, then
/// `b'_k = Σ_i c_{ik} b_i` solves the system for `a = (p_k)` because each
/// `α_g` is additive, hence prime-field linear. So `None` means that no
/// coordinate system exists.
pub fn find_coords(act: &PartialAction) -> Option<GaloisCoords> {
    let simple = GaloisCoords::idempotent_basis(act);
    if verify_coords(act, &simple).is_ok() {
        return Some(simple);
    }
    let ring = act.ring();
    let pf = ring.prime_field();
    let g = act.groupoid();
    let basis = ring.prime_basis();
    let dim = ring.prime_dim();
    let unknowns = basis.len() * dim;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for m in 0..g.num_morphisms() {
        // Column (k, c): contribution of b_k = basis[c] to the sum at m.
        let images: Vec<RingElement> = basis.iter().map(|u| act.apply(m, u)).collect();
        let mut block = vec![vec![pf.zero(); unknowns]; dim];
        for (k, pk) in basis.iter().enumerate() {
            for (c, img) in images.iter().enumerate() {
                let coords = ring.prime_coords(&ring.mul(pk, img));
                for (r, v) in coords.into_iter().enumerate() {
                    block[r][k * dim + c] = v;
                }
            }
        }
        rows.extend(block);
        rhs.extend(ring.prime_coords(&coordinate_target(act, m)));
    }
    let x = linalg::solve(pf, &rows, &rhs, unknowns)?;
    let b = (0..basis.len()).map(|k| ring.from_prime_coords(&x[k * dim..(k + 1) * dim])).collect();
    let found = GaloisCoords { a: basis, b };
    debug_assert!(verify_coords(act, &found).is_ok());
    Some(found)
}

fn lift(r: &Restriction, v: &RingElement, full: &PartialAction) -> RingElement {
    let ring = full.ring();
    let mut out = ring.zero().coeffs().to_vec();
    for (k, &i) in r.index_map.iter().enumerate() {
        out[i] = v.coeff(k).clone();
    }
    RingElement::from_coeffs(out)
}

fn project(r: &Restriction, v: &RingElement) -> RingElement {
    RingElement::from_coeffs(r.index_map.iter().map(|&i| v.coeff(i).clone()).collect())
}

/// Splits coordinates along the connected components: `ã_i = a_i 1_{S_j}`,
/// expressed in each component's ring, each verified.
pub fn split_coords(act: &PartialAction, c: &GaloisCoords) -> Result<Vec<(Restriction, GaloisCoords)>> {
    connected_components(act.groupoid())
        .iter()
        .map(|comp| {
            let r = restrict_to_subgroupoid(act, comp)?;
            let local = GaloisCoords { a: c.a.iter().map(|v| project(&r, v)).collect(), b: c.b.iter().map(|v| project(&r, v)).collect() };
            verify_coords(&r.action, &local)
                .map_err(|(z, m)| Error::Inconsistency(format!("split coordinates fail at ({}, {})", r.action.groupoid().object_name(z), r.action.groupoid().name(m))))?;
            Ok((r, local))
        })
        .collect()
}

/// Glues per-component coordinates: pad with zeros to a common length and
/// sum the lifted elements; the result is verified.
pub fn glue_coords(act: &PartialAction, parts: &[(Restriction, GaloisCoords)]) -> Result<GaloisCoords> {
    let ring = act.ring();
    let m = parts.iter().map(|(_, c)| c.m()).max().unwrap_or(0);
    let mut a = vec![ring.zero(); m];
    let mut b = vec![ring.zero(); m];
    for (r, c) in parts {
        for i in 0..c.m() {
            a[i] = ring.add(&a[i], &lift(r, &c.a[i], act));
            b[i] = ring.add(&b[i], &lift(r, &c.b[i], act));
        }
    }
    let glued = GaloisCoords { a, b };
    verify_coords(act, &glued)
        .map_err(|(z, g)| Error::Inconsistency(format!("glued coordinates fail at ({}, {})", act.groupoid().object_name(z), act.groupoid().name(g))))?;
    Ok(glued)
}

/// Coordinates `a_i 1_y, b_i 1_y` for the isotropy group at `y` acting on
/// `S_y`, verified on that restriction.
pub fn object_coords(act: &PartialAction, c: &GaloisCoords, y: ObjectId) -> Result<(Restriction, GaloisCoords)> {
    let g = act.groupoid();
    let iso = Subgroupoid::from_morphisms(g, &g.hom(y, y))?;
    let r = restrict_to_subgroupoid(act, &iso)?;
    let local = GaloisCoords { a: c.a.iter().map(|v| project(&r, v)).collect(), b: c.b.iter().map(|v| project(&r, v)).collect() };
    verify_coords(&r.action, &local)
        .map_err(|(_, m)| Error::Inconsistency(format!("isotropy coordinates fail at {}", r.action.groupoid().name(m))))?;
    Ok((r, local))
}

// ----- α-strong -----------------------------------------------------------

/// A pair `(g, h)` and a primitive idempotent `e_i` of `S_g ∪ S_h` on which
/// every `t` of the relevant subring acts the same through `g` and `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrongFailure {
    pub g: MorphismId,
    pub h: MorphismId,
    pub index: usize,
}

/// The three evaluations of α-strength. `all_pairs` is the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongReport {
    /// Every `T_y` separates pairs in `𝔾(y, z)` outside `𝔾(y)_{T_y}`.
    pub definition: bool,
    /// Every pair with `t(g) = t(h)` and `g⁻¹h ∉ 𝔾_T` is separated by `T`.
    pub all_pairs: bool,
    /// `T_{y_j}` separates pairs in `𝔾(y_j)` for each base object `y_j`.
    pub base_objects: bool,
    pub failure: Option<StrongFailure>,
}

impl StrongReport {
    pub fn is_strong(&self) -> bool {
        self.all_pairs
    }

    pub fn agree(&self) -> bool {
        self.definition == self.all_pairs && self.all_pairs == self.base_objects
    }
}

/// Whether some `t` in `basis` has `α_g(t1_{g⁻¹})e ≠ α_h(t1_{h⁻¹})e` for every
/// nonzero idempotent `e ∈ S_g ∪ S_h`. Because `K` has no idempotents besides
/// 0 and 1, those `e` are the nonempty 0/1 vectors on `D(g)` or `D(h)`, and it
/// suffices to test the primitive ones: a sum of idempotents is separated as
/// soon as one of its summands is. Returns the first unseparated index.
pub fn separates(act: &PartialAction, basis: &[RingElement], g: MorphismId, h: MorphismId) -> Option<usize> {
    let ring = act.ring();
    let diffs: Vec<RingElement> = basis.iter().map(|t| ring.sub(&act.apply(g, t), &act.apply(h, t))).collect();
    let covered: BTreeSet<usize> = diffs.iter().flat_map(|d| ring.support_of(d)).collect();
    let idx: BTreeSet<usize> = act.d(g).into_iter().chain(act.d(h)).collect();
    idx.into_iter().find(|i| !covered.contains(i))
}

/// Objects grouped by `T`-fixing morphisms, each class keyed by its least
/// object. For `T = S^{α_ℋ}` with `𝔾_T = ℋ` these are the components of `ℋ`.
pub fn fixer_object_classes(act: &PartialAction, t: &BlockSubring) -> Vec<Vec<ObjectId>> {
    let g = act.groupoid();
    let basis = t.prime_basis(act.ring());
    let mut class_of: Vec<Option<ObjectId>> = vec![None; g.num_objects()];
    for y in 0..g.num_objects() {
        if class_of[y].is_some() {
            continue;
        }
        class_of[y] = Some(y);
        for z in y + 1..g.num_objects() {
            if class_of[z].is_none() && g.hom(y, z).into_iter().any(|m| fixes(act, m, &basis)) {
                class_of[z] = Some(y);
            }
        }
    }
    let mut classes: BTreeMap<ObjectId, Vec<ObjectId>> = BTreeMap::new();
    for (z, c) in class_of.into_iter().enumerate() {
        classes.entry(c.expect("assigned")).or_default().push(z);
    }
    classes.into_values().collect()
}

pub fn alpha_strong_check(act: &PartialAction, t: &BlockSubring) -> StrongReport {
    let g = act.groupoid();
    let ring = act.ring();
    let n_obj = g.num_objects();
    let local: Vec<Vec<RingElement>> = (0..n_obj).map(|y| t.restricted_basis(ring, ring.support(y))).collect();
    let local_fixer = |y: ObjectId, l: MorphismId| fixes(act, l, &local[y]);
    let mut failure = None;

    // Per-object form over all hom-sets 𝔾(y, z).
    let per_object = |y: ObjectId, targets: &mut dyn Iterator<Item = ObjectId>| -> Option<StrongFailure> {
        for z in targets {
            let hom = g.hom(y, z);
            for &p in &hom {
                for &q in &hom {
                    let l = g.mul(g.inverse(p), q);
                    if local_fixer(y, l) {
                        continue;
                    }
                    if let Some(index) = separates(act, &local[y], p, q) {
                        return Some(StrongFailure { g: p, h: q, index });
                    }
                }
            }
        }
        None
    };

    let mut definition = true;
    for y in 0..n_obj {
        if let Some(f) = per_object(y, &mut (0..n_obj)) {
            definition = false;
            failure.get_or_insert(f);
            break;
        }
    }

    let fixer = fixer_set(act, t);
    let basis = t.prime_basis(ring);
    let mut all_pairs = true;
    'outer: for p in 0..g.num_morphisms() {
        for q in (0..g.num_morphisms()).filter(|&q| g.target(q) == g.target(p)) {
            if fixer.contains(g.mul(g.inverse(p), q)) {
                continue;
            }
            if let Some(index) = separates(act, &basis, p, q) {
                all_pairs = false;
                failure = Some(StrongFailure { g: p, h: q, index });
                break 'outer;
            }
        }
    }

    let base_objects = fixer_object_classes(act, t).iter().all(|class| per_object(class[0], &mut std::iter::once(class[0])).is_none());

    StrongReport { definition, all_pairs, base_objects, failure }
}

// ----- 𝔅(S) and the correspondence ------------------------------------------

fn require_galois(act: &PartialAction) -> Result<GaloisCoords> {
    find_coords(act).ok_or_else(|| Error::HypothesisUnmet("S has no Galois coordinate system over its invariants".into()))
}

/// The subrings `T ⊇ R` that are `R`-separable, α-strong, and whose fixer is
/// a wide subgroupoid with group-type restriction.
pub fn class_b(act: &PartialAction) -> Result<Vec<BlockSubring>> {
    class_b_with(act, Exec::default())
}

pub fn class_b_with(act: &PartialAction, exec: Exec) -> Result<Vec<BlockSubring>> {
    require_galois(act)?;
    let g = act.groupoid();
    let ring = act.ring();
    let r = invariants_of(act, &g.all())?;
    let candidates = enumerate_block_subrings(ring, true, false)?;
    let kept = exec.map(&candidates, |t| -> Result<bool> {
        if !t.contains_subring(ring, &r) {
            return Ok(false);
        }
        let fixer = fixer_set(act, t);
        let Some(h) = fixer.subgroupoid else { return Ok(false) };
        if !h.is_wide(g) || !group_type_within(act, &h).is_group_type() {
            return Ok(false);
        }
        if !alpha_strong_check(act, t).is_strong() {
            return Ok(false);
        }
        Ok(separability_check(ring, t, &r)?.is_separable())
    });
    let mut out = Vec::new();
    for (t, keep) in candidates.into_iter().zip(kept) {
        if keep? {
            out.push(t);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceRow {
    pub subgroupoid: Subgroupoid,
    pub subring: BlockSubring,
}

/// What was verified for the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `𝔾_{S^{α_ℋ}} = ℋ` for every row.
    pub fixer_of_invariants: bool,
    /// `S^{α_{𝔾_T}} = T` for every row.
    pub invariants_of_fixer: bool,
    /// Every row's subring lies in `𝔅(S)`, and every member of `𝔅(S)` is a row.
    pub covers_class_b: bool,
    pub class_b_size: usize,
    /// Wide subgroupoids rejected because their restriction is not group-type.
    pub rejected_not_group_type: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceTable {
    pub rows: Vec<CorrespondenceRow>,
    pub certificate: Certificate,
}

pub fn correspondence(act: &PartialAction) -> Result<CorrespondenceTable> {
    correspondence_with(act, Exec::default())
}

/// Rows `ℋ ↦ S^{α_ℋ}` over the wide group-type subgroupoids, in canonical
/// order of `ℋ`, certified in both directions and against `𝔅(S)`.
pub fn correspondence_with(act: &PartialAction, exec: Exec) -> Result<CorrespondenceTable> {
    require_galois(act)?;
    let g = act.groupoid();
    if !group_type_within(act, &g.all()).is_group_type() {
        return Err(Error::HypothesisUnmet("the action is not group-type".into()));
    }
    if let Some(m) = act.vanishing_morphism() {
        return Err(Error::HypothesisUnmet(format!("1_g = 0 for g = {}", g.name(m))));
    }
    let wide = enumerate_subgroupoids_with(g, true, exec);
    let gt: Vec<Subgroupoid> = wide.iter().filter(|h| group_type_within(act, h).is_group_type()).cloned().collect();
    let rejected = wide.len() - gt.len();
    let rows: Vec<CorrespondenceRow> = exec
        .try_map(&gt, |h| invariants_of(act, h).map(|t| CorrespondenceRow { subgroupoid: h.clone(), subring: t }))?;
    let class = class_b_with(act, exec)?;

    for row in &rows {
        let fixer = fixer_set(act, &row.subring);
        if fixer.subgroupoid.as_ref() != Some(&row.subgroupoid) {
            return Err(Error::Counterexample(format!(
                "fixer of {} is not {}",
                row.subring.display(act.ring()),
                row.subgroupoid.display(g)
            )));
        }
        if invariants_of(act, &row.subgroupoid)? != row.subring {
            return Err(Error::Counterexample(format!("invariants of the fixer of {} differ from it", row.subring.display(act.ring()))));
        }
    }
    let row_rings: BTreeSet<&BlockSubring> = rows.iter().map(|r| &r.subring).collect();
    let class_set: BTreeSet<&BlockSubring> = class.iter().collect();
    if row_rings.len() != rows.len() {
        return Err(Error::Counterexample("two subgroupoids share an invariant subring".into()));
    }
    if let Some(extra) = class_set.difference(&row_rings).next() {
        return Err(Error::Counterexample(format!("{} is admissible but no row reaches it", extra.display(act.ring()))));
    }
    if let Some(missing) = row_rings.difference(&class_set).next() {
        return Err(Error::Counterexample(format!("{} is a row but fails the admissibility filters", missing.display(act.ring()))));
    }
    Ok(CorrespondenceTable {
        rows,
        certificate: Certificate {
            fixer_of_invariants: true,
            invariants_of_fixer: true,
            covers_class_b: true,
            class_b_size: class.len(),
            rejected_not_group_type: rejected,
        },
    })
}

fn lift_subring(act: &PartialAction, parts: &[(&Restriction, &BlockSubring)]) -> Result<BlockSubring> {
    let mut blocks = Vec::new();
    for (r, t) in parts {
        for b in t.blocks() {
            blocks.push((b.indices.iter().map(|&i| r.index_map[i]).collect(), b.transports.clone(), b.subfield));
        }
    }
    BlockSubring::new(act.ring(), blocks)
}

fn lift_subgroupoid(act: &PartialAction, parts: &[(&Restriction, &Subgroupoid)]) -> Result<Subgroupoid> {
    let ids: Vec<MorphismId> = parts.iter().flat_map(|(r, h)| h.morphisms().into_iter().map(|m| r.morphism_map[m])).collect();
    Subgroupoid::from_morphisms(act.groupoid(), &ids)
}

/// The correspondence of a possibly disconnected groupoid, computed per
/// connected component and glued: rows are the products of component rows,
/// `(ℋ_1 ∪ … ∪ ℋ_r, T_1 ⊕ … ⊕ T_r)`, each re-verified on the whole action.
pub fn correspondence_by_components(act: &PartialAction) -> Result<CorrespondenceTable> {
    correspondence_by_components_with(act, Exec::default())
}

pub fn correspondence_by_components_with(act: &PartialAction, exec: Exec) -> Result<CorrespondenceTable> {
    let g = act.groupoid();
    let pieces: Vec<(Restriction, CorrespondenceTable)> = connected_components(g)
        .iter()
        .map(|comp| {
            let r = restrict_to_subgroupoid(act, comp)?;
            let table = correspondence_with(&r.action, exec)?;
            Ok((r, table))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut class_b_size = 1;
    let mut gt_total = 1;
    let mut wide_total = 1;
    for (_, t) in &pieces {
        class_b_size *= t.certificate.class_b_size;
        wide_total *= t.rows.len() + t.certificate.rejected_not_group_type;
        gt_total *= t.rows.len();
    }
    let choices: Vec<Vec<usize>> = pieces.iter().map(|(_, t)| (0..t.rows.len()).collect()).collect();
    for pick in itertools::Itertools::multi_cartesian_product(choices.into_iter().map(|c| c.into_iter())) {
        let hs: Vec<(&Restriction, &Subgroupoid)> = pieces.iter().zip(&pick).map(|((r, t), &k)| (r, &t.rows[k].subgroupoid)).collect();
        let ts: Vec<(&Restriction, &BlockSubring)> = pieces.iter().zip(&pick).map(|((r, t), &k)| (r, &t.rows[k].subring)).collect();
        let h = lift_subgroupoid(act, &hs)?;
        let t = lift_subring(act, &ts)?;
        if invariants_of(act, &h)? != t {
            return Err(Error::Counterexample(format!("glued row {} does not have invariants {}", h.display(g), t.display(act.ring()))));
        }
        if fixer_set(act, &t).subgroupoid.as_ref() != Some(&h) {
            return Err(Error::Counterexample(format!("glued row {} is not the fixer of its subring", h.display(g))));
        }
        rows.push(CorrespondenceRow { subgroupoid: h, subring: t });
    }
    rows.sort_by_key(|r| r.subgroupoid.canonical_key());
    Ok(CorrespondenceTable {
        rows,
        certificate: Certificate {
            fixer_of_invariants: true,
            invariants_of_fixer: true,
            covers_class_b: pieces.iter().all(|(_, t)| t.certificate.covers_class_b),
            class_b_size,
            rejected_not_group_type: wide_total - gt_total,
        },
    })
}

/// Whether the action passes validation and is a partial Galois extension of
/// its invariants; convenience for callers that gate on both.
pub fn is_galois(act: &PartialAction) -> bool {
    validate_action(act).is_ok() && find_coords(act).is_some()
}
