//! Split rings `S = ⊕ K·e_i` graded by the objects of a groupoid, and their
//! twisted block subrings.
//!
//! A [`BlockSubring`] is described by a partition of the idempotent indices
//! into blocks; each block carries a subfield `F ⊆ K` and, for every index
//! `i` in the block, a transport automorphism `ψ_i` (with `ψ = id` at the
//! block's least index). Its elements are the `v` with `v_i = ψ_i(a)` for a
//! single `a ∈ F` per block. Invariant rings of twisted-permutation actions
//! always have this shape.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Automorphism, CoeffField, FieldElement, Subfield};
use crate::groupoid::ObjectId;
use crate::linalg;
use crate::scalar::{PrimeField, Scalar};

/// Largest `n` accepted by [`enumerate_block_subrings`] without an override.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRing {
    field: CoeffField,
    names: Vec<String>,
    owner: Vec<ObjectId>,
    supports: Vec<Vec<usize>>,
}

/// An element of a [`SplitRing`]: one coefficient per primitive idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(Vec<FieldElement>);

impl RingElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        RingElement(coeffs)
    }
}

impl SplitRing {
    /// `owner[i]` is the object whose support contains index `i`.
    pub fn new(field: CoeffField, names: Vec<String>, owner: Vec<ObjectId>, num_objects: usize) -> Result<Self> {
        if names.len() != owner.len() {
            return Err(Error::Precondition("one owner per idempotent required".into()));
        }
        if names.iter().duplicates().next().is_some() {
            return Err(Error::Precondition("idempotent names must be distinct".into()));
        }
        let mut supports = vec![Vec::new(); num_objects];
        for (i, &x) in owner.iter().enumerate() {
            if x >= num_objects {
                return Err(Error::Precondition(format!("idempotent {} assigned to unknown object", names[i])));
            }
            supports[x].push(i);
        }
        if let Some(x) = supports.iter().position(Vec::is_empty) {
            return Err(Error::Precondition(format!("object #{x} has empty support")));
        }
        Ok(SplitRing { field, names, owner, supports })
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field.prime_field()
    }

    /// Number of primitive idempotents.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Dimension of `S` over the prime field.
    pub fn prime_dim(&self) -> usize {
        self.n() * self.field.degree()
    }

    pub fn num_objects(&self) -> usize {
        self.supports.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn owner(&self, i: usize) -> ObjectId {
        self.owner[i]
    }

    /// `supp(x)`, sorted.
    pub fn support(&self, x: ObjectId) -> &[usize] {
        &self.supports[x]
    }

    /// Same field, with `other`'s objects numbered after this ring's.
    pub fn disjoint_union(&self, other: &SplitRing) -> Result<SplitRing> {
        if self.field != other.field {
            return Err(Error::Precondition("rings over different fields".into()));
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut owner = self.owner.clone();
        owner.extend(other.owner.iter().map(|x| x + self.num_objects()));
        SplitRing::new(self.field.clone(), names, owner, self.num_objects() + other.num_objects())
    }

    /// Same ring with every idempotent name passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> SplitRing {
        let mut out = self.clone();
        for n in &mut out.names {
            *n = f(n);
        }
        out
    }

    /// Restriction to a subset of indices (kept in order) and of objects.
    pub(crate) fn sub_ring(&self, indices: &[usize], objects: &[ObjectId]) -> Result<SplitRing> {
        let names = indices.iter().map(|&i| self.names[i].clone()).collect();
        let owner = indices
            .iter()
            .map(|&i| objects.iter().position(|&x| x == self.owner[i]).ok_or_else(|| Error::Precondition("index outside the kept objects".into())))
            .collect::<Result<Vec<_>>>()?;
        SplitRing::new(self.field.clone(), names, owner, objects.len())
    }

    // ----- elements -------------------------------------------------------

    pub fn zero(&self) -> RingElement {
        RingElement(vec![self.field.zero(); self.n()])
    }

    pub fn one(&self) -> RingElement {
        RingElement(vec![self.field.one(); self.n()])
    }

    /// The primitive idempotent `e_i`.
    pub fn e(&self, i: usize) -> RingElement {
        self.indicator(&[i])
    }

    /// `Σ_{i ∈ D} e_i`.
    pub fn indicator(&self, d: &[usize]) -> RingElement {
        let mut v = self.zero();
        for &i in d {
            v.0[i] = self.field.one();
        }
        v
    }

    /// The central idempotent `1_x`.
    pub fn unit_of(&self, x: ObjectId) -> RingElement {
        self.indicator(self.support(x))
    }

    /// `c·e_i`.
    pub fn monomial(&self, i: usize, c: FieldElement) -> RingElement {
        let mut v = self.zero();
        v.0[i] = c;
        v
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.mul(x, y)).collect())
    }

    pub fn scale(&self, s: &Scalar, a: &RingElement) -> RingElement {
        RingElement(a.0.iter().map(|x| self.field.scale(s, x)).collect())
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        a.0.iter().all(|x| self.field.is_zero(x))
    }

    /// Support of the element (indices with nonzero coefficient).
    pub fn support_of(&self, a: &RingElement) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.field.is_zero(&a.0[i])).collect()
    }

    /// Flattened prime-field coordinates (index-major).
    pub fn prime_coords(&self, a: &RingElement) -> Vec<Scalar> {
        a.0.iter().flat_map(|x| x.coords().iter().cloned()).collect()
    }

    pub fn from_prime_coords(&self, v: &[Scalar]) -> RingElement {
        let d = self.field.degree();
        RingElement(v.chunks(d).map(|c| FieldElement::from_coords(c.to_vec())).collect())
    }

    /// The prime-field basis `{β e_i}` of `S`, with `β` running over the
    /// canonical basis of `K`.
    pub fn prime_basis(&self) -> Vec<RingElement> {
        let kb = self.field.basis();
        (0..self.n()).flat_map(|i| kb.iter().map(move |b| (i, b.clone()))).map(|(i, b)| self.monomial(i, b)).collect()
    }

    /// Renders an element as a combination of idempotent names.
    pub fn format_element(&self, a: &RingElement) -> String {
        let terms: Vec<String> = (0..self.n())
            .filter(|&i| !self.field.is_zero(&a.0[i]))
            .map(|i| {
                let c = self.field.format_element(&a.0[i]);
                match c.as_str() {
                    "1" => self.names[i].clone(),
                    "-1" => format!("-{}", self.names[i]),
                    _ if c.contains(' ') => format!("({c}){}", self.names[i]),
                    _ => format!("{c}*{}", self.names[i]),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

/// One block of a [`BlockSubring`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    /// Sorted indices; the first is the representative.
    pub indices: Vec<usize>,
    /// Transport for each index, relative to the representative.
    pub transports: Vec<Automorphism>,
    pub subfield: Subfield,
}

impl Block {
    pub fn rep(&self) -> usize {
        self.indices[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSubring {
    blocks: Vec<Block>,
}

impl BlockSubring {
    /// Builds the canonical form from blocks `(indices, transports, subfield)`,
    /// where `transports[k]` belongs to `indices[k]`. Transports may be given
    /// relative to any member; they are re-based on the least index and
    /// reduced modulo the subfield's degree.
    pub fn new(ring: &SplitRing, blocks: Vec<(Vec<usize>, Vec<Automorphism>, Subfield)>) -> Result<Self> {
        let field = ring.field();
        let mut seen = vec![false; ring.n()];
        let mut out = Vec::with_capacity(blocks.len());
        for (indices, transports, subfield) in blocks {
            if indices.is_empty() || indices.len() != transports.len() {
                return Err(Error::Precondition("malformed block".into()));
            }
            if field.subfield_of_degree(subfield.degree()).is_none() {
                return Err(Error::Precondition("subfield not in the lattice".into()));
            }
            for &i in &indices {
                if i >= ring.n() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Precondition("blocks must partition the indices".into()));
                }
            }
            let mut members: Vec<(usize, Automorphism)> = indices.into_iter().zip(transports).collect();
            members.sort();
            let rebase = field.aut_inverse(members[0].1);
            let d = subfield.degree();
            let (indices, transports) = members
                .into_iter()
                .map(|(i, t)| (i, field.automorphism((field.compose(t, rebase).power() % d) as i64)))
                .unzip();
            out.push(Block { indices, transports, subfield });
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition("blocks must cover every index".into()));
        }
        out.sort_by_key(Block::rep);
        Ok(BlockSubring { blocks: out })
    }

    /// Untwisted blocks over the full field.
    pub fn from_partition(ring: &SplitRing, parts: &[Vec<usize>]) -> Result<Self> {
        let full = ring.field().full_subfield();
        Self::new(ring, parts.iter().map(|p| (p.clone(), vec![Automorphism::IDENTITY; p.len()], full)).collect())
    }

    /// `S` itself.
    pub fn whole(ring: &SplitRing) -> Self {
        Self::from_partition(ring, &(0..ring.n()).map(|i| vec![i]).collect_vec()).expect("singletons partition")
    }

    /// The image of the prime field: one block, prime subfield.
    pub fn prime(ring: &SplitRing) -> Self {
        Self::new(ring, vec![((0..ring.n()).collect(), vec![Automorphism::IDENTITY; ring.n()], ring.field().prime_subfield())])
            .expect("single block")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> (&Block, usize) {
        self.blocks
            .iter()
            .find_map(|b| b.indices.iter().position(|&j| j == i).map(|k| (b, k)))
            .expect("blocks partition the indices")
    }

    /// Whether this is all of `S`.
    pub fn is_whole(&self, ring: &SplitRing) -> bool {
        self.blocks.len() == ring.n() && self.blocks.iter().all(|b| b.subfield == ring.field().full_subfield())
    }

    /// Dimension over the prime field.
    pub fn prime_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.subfield.degree() as usize).sum()
    }

    /// A prime-field basis: per block and per basis vector `β` of its
    /// subfield, the element with `v_i = ψ_i(β)`.
    pub fn prime_basis(&self, ring: &SplitRing) -> Vec<RingElement> {
        let field = ring.field();
        let mut out = Vec::new();
        for b in &self.blocks {
            for beta in field.subfield_basis(b.subfield) {
                let mut v = ring.zero();
                for (&i, &t) in b.indices.iter().zip(&b.transports) {
                    v.0[i] = field.apply(t, &beta);
                }
                out.push(v);
            }
        }
        out
    }

    pub fn contains(&self, ring: &SplitRing, v: &RingElement) -> bool {
        let field = ring.field();
        self.blocks.iter().all(|b| {
            let a = &v.0[b.rep()];
            field.in_subfield(b.subfield, a)
                && b.indices.iter().zip(&b.transports).all(|(&i, &t)| field.apply(t, a) == v.0[i])
        })
    }

    /// `other ⊆ self`.
    pub fn contains_subring(&self, ring: &SplitRing, other: &BlockSubring) -> bool {
        other.prime_basis(ring).iter().all(|v| self.contains(ring, v))
    }

    /// Blocks restricted to a set of indices, as prime-basis elements of `T·1_D`.
    /// Only meaningful when every block lies inside or outside `D`.
    pub fn restricted_basis(&self, ring: &SplitRing, d: &[usize]) -> Vec<RingElement> {
        let mask = ring.indicator(d);
        self.prime_basis(ring).into_iter().map(|v| ring.mul(&v, &mask)).filter(|v| !ring.is_zero(v)).collect()
    }

    /// Block notation, e.g. `k(e1+e2+e4+e5) + k(e3+e6)`; the full field
    /// is written `k`, proper subfields by name, twists as `conj`/`frob^j`.
    pub fn display(&self, ring: &SplitRing) -> String {
        let field = ring.field();
        self.blocks
            .iter()
            .map(|b| {
                let name = if b.subfield == field.full_subfield() { "k".to_string() } else { field.subfield_name(b.subfield) };
                let members = b
                    .indices
                    .iter()
                    .zip(&b.transports)
                    .map(|(&i, &t)| if t.is_identity() { ring.name(i).to_string() } else { format!("{} {}", field.aut_name(t), ring.name(i)) })
                    .join("+");
                if b.indices.len() == 1 && b.transports[0].is_identity() {
                    format!("{name}{members}")
                } else {
                    format!("{name}({members})")
                }
            })
            .join(" + ")
    }

    /// DSL form, e.g. `k(e1 + e2) + Q(e3)`; parsed back by the `.gpd` reader.
    pub fn to_spec(&self, ring: &SplitRing) -> String {
        let field = ring.field();
        self.blocks
            .iter()
            .map(|b| {
                let name = if b.subfield == field.full_subfield() { "k".to_string() } else { field.subfield_name(b.subfield) };
                let members = b
                    .indices
                    .iter()
                    .zip(&b.transports)
                    .map(|(&i, &t)| if t.is_identity() { ring.name(i).to_string() } else { format!("{} {}", field.aut_name(t), ring.name(i)) })
                    .join(" + ");
                format!("{name}({members})")
            })
            .join(" + ")
    }
}

/// A prime-field linear equation `Σ c_k x_k = 0` on the flattened prime
/// coordinates of an element of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCondition {
    pub coeffs: Vec<Scalar>,
}

impl LinearCondition {
    /// The equations `v_j = φ(v_i)` (one per prime coordinate).
    pub fn transport(ring: &SplitRing, i: usize, j: usize, phi: Automorphism) -> Vec<LinearCondition> {
        let pf = ring.prime_field();
        let d = ring.field().degree();
        let m = ring.field().aut_matrix(phi);
        (0..d)
            .map(|r| {
                let mut c = vec![pf.zero(); ring.prime_dim()];
                c[j * d + r] = pf.add(&c[j * d + r], &pf.one());
                for (k, mk) in m[r].iter().enumerate() {
                    c[i * d + k] = pf.sub(&c[i * d + k], mk);
                }
                LinearCondition { coeffs: c }
            })
            .collect()
    }

    /// The equations `v_i ∈ F`.
    pub fn subfield(ring: &SplitRing, i: usize, sub: Subfield) -> Vec<LinearCondition> {
        let gen = ring.field().subfield_generator(sub);
        Self::transport(ring, i, i, gen)
    }
}

/// The solution set of the conditions, as a canonical block subring.
pub fn subring_from_solution_space(ring: &SplitRing, conditions: &[LinearCondition]) -> Result<BlockSubring> {
    let rows: Vec<Vec<Scalar>> = conditions.iter().map(|c| c.coeffs.clone()).collect();
    let space = linalg::nullspace(ring.prime_field(), &rows, ring.prime_dim());
    recognize(ring, &space)
}

/// The prime-field span of the given elements, as a canonical block subring.
pub fn subring_from_span(ring: &SplitRing, elements: &[RingElement]) -> Result<BlockSubring> {
    let rows: Vec<Vec<Scalar>> = elements.iter().map(|v| ring.prime_coords(v)).collect();
    let space = linalg::row_basis(ring.prime_field(), &rows, ring.prime_dim());
    recognize(ring, &space)
}

/// Reads off block structure from a prime-field subspace of `S` and checks
/// that the resulting block subring spans exactly that subspace.
fn recognize(ring: &SplitRing, space: &[Vec<Scalar>]) -> Result<BlockSubring> {
    let field = ring.field();
    let pf = ring.prime_field();
    let d = field.degree();
    let proj = |i: usize, v: &Vec<Scalar>| v[i * d..(i + 1) * d].to_vec();
    let not_block = |why: String| Err(Error::NotBlockExpressible(why));

    let mut subfield_at = Vec::with_capacity(ring.n());
    for i in 0..ring.n() {
        let w: Vec<Vec<Scalar>> = space.iter().map(|v| proj(i, v)).collect();
        let dim = linalg::rank(pf, &w, d);
        let sub = field.subfields().into_iter().find(|s| {
            s.degree() as usize == dim && {
                let basis: Vec<Vec<Scalar>> = field.subfield_basis(*s).into_iter().map(|b| b.coords().to_vec()).collect();
                linalg::same_span(pf, &w, &basis, d)
            }
        });
        match sub {
            Some(s) => subfield_at.push(s),
            None => return not_block(format!("projection onto {} is not a subfield", ring.name(i))),
        }
    }

    let auts = field.automorphism_group();
    let mut blocks: Vec<(Vec<usize>, Vec<Automorphism>, Subfield)> = Vec::new();
    'index: for j in 0..ring.n() {
        let dj = subfield_at[j].degree() as usize;
        for block in blocks.iter_mut() {
            let r = block.0[0];
            let dr = block.2.degree() as usize;
            let pair: Vec<Vec<Scalar>> = space.iter().map(|v| [proj(r, v), proj(j, v)].concat()).collect();
            let pair_dim = linalg::rank(pf, &pair, 2 * d);
            if pair_dim == dr + dj {
                continue;
            }
            if pair_dim != dr || dr != dj {
                return not_block(format!("{} and {} are partially coupled", ring.name(r), ring.name(j)));
            }
            let found = auts.iter().copied().find(|&phi| {
                let m = field.aut_matrix(phi);
                space.iter().all(|v| linalg::mat_vec(pf, &m, &proj(r, v)) == proj(j, v))
            });
            match found {
                Some(phi) => {
                    block.0.push(j);
                    block.1.push(phi);
                    continue 'index;
                }
                None => return not_block(format!("coupling of {} and {} is not an automorphism", ring.name(r), ring.name(j))),
            }
        }
        blocks.push((vec![j], vec![Automorphism::IDENTITY], subfield_at[j]));
    }
    let candidate = BlockSubring::new(ring, blocks)?;
    let basis: Vec<Vec<Scalar>> = candidate.prime_basis(ring).iter().map(|v| ring.prime_coords(v)).collect();
    if !linalg::same_span(pf, &basis, space, ring.prime_dim()) {
        return not_block("block candidate does not span the solution space".into());
    }
    Ok(candidate)
}

/// All set partitions of `0..n`, as restricted-growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (k, &b) in rgs.iter().enumerate() {
                parts[b].push(k);
            }
            out.push(parts);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            rec(i + 1, n, rgs, max.max(b), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Every canonical block subring of `S`.
///
/// `unital_grading_compatible` is accepted for interface stability; every
/// block subring already qualifies, so it filters nothing. Refuses
/// `n > ENUMERATION_LIMIT` unless `allow_large` is set.
pub fn enumerate_block_subrings(ring: &SplitRing, unital_grading_compatible: bool, allow_large: bool) -> Result<Vec<BlockSubring>> {
    let _ = unital_grading_compatible;
    if ring.n() > ENUMERATION_LIMIT && !allow_large {
        return Err(Error::SizeGuard { n: ring.n(), limit: ENUMERATION_LIMIT });
    }
    let field = ring.field();
    let mut out = Vec::new();
    for parts in set_partitions(ring.n()) {
        // Per block: every (subfield, transport tuple) choice.
        let per_block: Vec<Vec<(Vec<usize>, Vec<Automorphism>, Subfield)>> = parts
            .iter()
            .map(|p| {
                field
                    .subfields()
                    .into_iter()
                    .flat_map(|sub| {
                        let d = sub.degree() as i64;
                        let tails = (1..p.len()).map(|_| 0..d).multi_cartesian_product();
                        let tails: Box<dyn Iterator<Item = Vec<i64>>> =
                            if p.len() == 1 { Box::new(std::iter::once(Vec::new())) } else { Box::new(tails) };
                        tails
                            .map(|tail| {
                                let mut ts = vec![Automorphism::IDENTITY];
                                ts.extend(tail.into_iter().map(|k| field.automorphism(k)));
                                (p.clone(), ts, sub)
                            })
                            .collect_vec()
                    })
                    .collect()
            })
            .collect();
        for choice in per_block.into_iter().multi_cartesian_product() {
            out.push(BlockSubring::new(ring, choice)?);
        }
    }
    Ok(out)
}

/// Pretty list of elements, for diagnostics.
pub fn format_elements(ring: &SplitRing, elems: &[RingElement]) -> String {
    let mut s = String::from("[");
    for (k, e) in elems.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", ring.format_element(e));
    }
    s.push(']');
    s
}
