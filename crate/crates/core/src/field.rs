//! Exact coefficient fields: ℚ, quadratic fields ℚ(√d) and finite fields
//! GF(p^m), with their (cyclic) automorphism groups and subfield lattices.
//!
//! Elements are coordinate vectors over the prime field with respect to a
//! fixed basis: `1` for ℚ, `{1, √d}` for ℚ(√d), and the power basis
//! `{1, w, …, w^{m-1}}` for GF(p^m), where `w` is a root of the modulus.
//!
//! Every automorphism group here is cyclic, so an [`Automorphism`] is simply
//! an exponent of the generator (conjugation or Frobenius), and every subfield
//! is the fixed field of some power of that generator. A [`Subfield`] is
//! identified by its degree `d` over the prime field; it is the fixed field of
//! `φ^d`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{PrimeField, Scalar};

/// Monic moduli (coefficients from the constant term upward, leading 1
/// omitted) for small finite fields. These are the Conway polynomials for the
/// listed `(p, m)`; their irreducibility and primitivity are checked in tests.
const MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// ℚ(√d) with `d` square-free and `d ∉ {0, 1}`.
    Quadratic(i64),
    /// GF(p^m).
    Finite { p: u64, m: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffField {
    kind: FieldKind,
    /// Lower coefficients of the monic modulus (finite fields with m > 1).
    modulus: Vec<u64>,
}

/// An element of a [`CoeffField`], as prime-field coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<Scalar>);

/// `φ^k` for the generator `φ` of the (cyclic) automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(u32);

/// The subfield of degree `d` over the prime field, i.e. the fixed field of `φ^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subfield(u32);

impl FieldElement {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        FieldElement(coords)
    }
}

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism(0);

    /// The exponent `k` of `φ^k`.
    pub fn power(self) -> u32 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl Subfield {
    /// Degree over the prime field.
    pub fn degree(self) -> u32 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    (2..).take_while(|k: &u64| k * k <= n).all(|k| !n.is_multiple_of(k * k))
}

impl CoeffField {
    pub fn rationals() -> Self {
        CoeffField { kind: FieldKind::Rationals, modulus: Vec::new() }
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(Error::InvalidField(format!("Q(sqrt {d}) needs a square-free d not in {{0, 1}}")));
        }
        Ok(CoeffField { kind: FieldKind::Quadratic(d), modulus: Vec::new() })
    }

    pub fn finite(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("GF(p^0) is not a field".into()));
        }
        if p.checked_pow(m).is_none_or(|q| q > 1 << 24) {
            return Err(Error::InvalidField(format!("GF({p}^{m}) is too large")));
        }
        let modulus = if m == 1 {
            Vec::new()
        } else if let Some((_, _, c)) = MODULI.iter().find(|(q, e, _)| *q == p && *e == m) {
            c.to_vec()
        } else {
            least_primitive_modulus(p, m)
        };
        Ok(CoeffField { kind: FieldKind::Finite { p, m }, modulus })
    }

    /// Parses `Q`, `Q(i)`, `Q(sqrt d)`, `Q(sqrt(d))`, `GF(p)` or `GF(p^m)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidField(format!("unrecognised field `{spec}`"));
        if s == "Q" {
            return Ok(Self::rationals());
        }
        if s == "Q(i)" {
            return Self::quadratic(-1);
        }
        if let Some(inner) = s.strip_prefix("Q(sqrt").and_then(|r| r.strip_suffix(')')) {
            let inner = inner.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(inner);
            let d: i64 = inner.parse().map_err(|_| bad())?;
            return Self::quadratic(d);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let (p, m) = match inner.split_once('^') {
                Some((p, m)) => (p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?),
                None => (inner.parse().map_err(|_| bad())?, 1),
            };
            return Self::finite(p, m);
        }
        Err(bad())
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn prime_field(&self) -> PrimeField {
        match self.kind {
            FieldKind::Finite { p, .. } => PrimeField::Modular(p),
            _ => PrimeField::Rationals,
        }
    }

    /// Degree over the prime field; also the order of the automorphism group.
    pub fn degree(&self) -> usize {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::Quadratic(_) => 2,
            FieldKind::Finite { m, .. } => m as usize,
        }
    }

    /// The monic modulus, constant term first (finite fields only).
    pub fn modulus(&self) -> Option<Vec<u64>> {
        match self.kind {
            FieldKind::Finite { m, .. } if m > 1 => {
                let mut c = self.modulus.clone();
                c.push(1);
                Some(c)
            }
            _ => None,
        }
    }

    // ----- elements -------------------------------------------------------

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![self.prime_field().zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_scalar(self.prime_field().one())
    }

    pub fn from_scalar(&self, s: Scalar) -> FieldElement {
        let mut v = self.zero().0;
        v[0] = s;
        FieldElement(v)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_scalar(self.prime_field().from_i64(v))
    }

    /// Element from integer coordinates in the canonical basis.
    pub fn element(&self, coords: &[i64]) -> FieldElement {
        let pf = self.prime_field();
        let mut v = self.zero().0;
        for (slot, c) in v.iter_mut().zip(coords) {
            *slot = pf.from_i64(*c);
        }
        FieldElement(v)
    }

    /// The canonical basis over the prime field.
    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.degree())
            .map(|i| {
                let mut v = self.zero().0;
                v[i] = self.prime_field().one();
                FieldElement(v)
            })
            .collect()
    }

    /// `√d` for quadratic fields, the modulus root `w` for GF(p^m), m > 1.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.degree() > 1).then(|| self.basis()[1].clone())
    }

    /// Every element, for finite fields.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        let digits = self.prime_field().elements()?;
        let mut out = vec![Vec::new()];
        for _ in 0..self.degree() {
            out = out
                .into_iter()
                .flat_map(|v: Vec<Scalar>| {
                    digits.iter().map(move |d| {
                        let mut w = v.clone();
                        w.push(d.clone());
                        w
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(FieldElement).collect())
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        let pf = self.prime_field();
        a.0.iter().all(|c| pf.is_zero(c))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let pf = self.prime_field();
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| pf.add(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let pf = self.prime_field();
        FieldElement(a.0.iter().map(|x| pf.neg(x)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, s: &Scalar, a: &FieldElement) -> FieldElement {
        let pf = self.prime_field();
        FieldElement(a.0.iter().map(|x| pf.mul(s, x)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let pf = self.prime_field();
        match self.kind {
            FieldKind::Rationals => FieldElement(vec![pf.mul(&a.0[0], &b.0[0])]),
            FieldKind::Quadratic(d) => {
                let (x0, x1, y0, y1) = (&a.0[0], &a.0[1], &b.0[0], &b.0[1]);
                let dd = pf.from_i64(d);
                let c0 = pf.add(&pf.mul(x0, y0), &pf.mul(&dd, &pf.mul(x1, y1)));
                let c1 = pf.add(&pf.mul(x0, y1), &pf.mul(x1, y0));
                FieldElement(vec![c0, c1])
            }
            FieldKind::Finite { m, .. } => {
                let m = m as usize;
                let mut prod = vec![pf.zero(); 2 * m - 1];
                for (i, x) in a.0.iter().enumerate() {
                    if pf.is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.0.iter().enumerate() {
                        prod[i + j] = pf.add(&prod[i + j], &pf.mul(x, y));
                    }
                }
                // Reduce with w^m = -(c_0 + c_1 w + … + c_{m-1} w^{m-1}).
                for k in (m..prod.len()).rev() {
                    let top = prod[k].clone();
                    if pf.is_zero(&top) {
                        continue;
                    }
                    for (j, c) in self.modulus.iter().enumerate() {
                        let t = pf.mul(&top, &pf.from_i64(*c as i64));
                        prod[k - m + j] = pf.sub(&prod[k - m + j], &t);
                    }
                    prod[k] = pf.zero();
                }
                prod.truncate(m);
                FieldElement(prod)
            }
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        let pf = self.prime_field();
        match self.kind {
            FieldKind::Rationals => Some(FieldElement(vec![pf.inv(&a.0[0])?])),
            FieldKind::Quadratic(_) => {
                // (x + y√d)^{-1} = conj / norm
                let conj = self.apply(self.conjugation_power(), a);
                let norm = self.mul(a, &conj).0[0].clone();
                Some(self.scale(&pf.inv(&norm)?, &conj))
            }
            FieldKind::Finite { p, m } => Some(self.pow(a, p.pow(m) - 2)),
        }
    }

    fn conjugation_power(&self) -> Automorphism {
        Automorphism(1 % self.degree() as u32)
    }

    // ----- automorphisms --------------------------------------------------

    /// Order of the automorphism group.
    pub fn aut_order(&self) -> u32 {
        self.degree() as u32
    }

    /// Every automorphism, identity first, then increasing powers of the generator.
    pub fn automorphism_group(&self) -> Vec<Automorphism> {
        (0..self.aut_order()).map(Automorphism).collect()
    }

    /// `φ^k`, reduced modulo the group order.
    pub fn automorphism(&self, k: i64) -> Automorphism {
        Automorphism(k.rem_euclid(self.aut_order() as i64) as u32)
    }

    pub fn compose(&self, a: Automorphism, b: Automorphism) -> Automorphism {
        Automorphism((a.0 + b.0) % self.aut_order())
    }

    pub fn aut_inverse(&self, a: Automorphism) -> Automorphism {
        Automorphism((self.aut_order() - a.0) % self.aut_order())
    }

    pub fn apply(&self, a: Automorphism, x: &FieldElement) -> FieldElement {
        if a.is_identity() {
            return x.clone();
        }
        match self.kind {
            FieldKind::Rationals => x.clone(),
            FieldKind::Quadratic(_) => {
                let pf = self.prime_field();
                FieldElement(vec![x.0[0].clone(), pf.neg(&x.0[1])])
            }
            FieldKind::Finite { p, .. } => self.pow(x, p.pow(a.0)),
        }
    }

    /// Matrix of the automorphism over the prime field (rows act on coordinates).
    pub fn aut_matrix(&self, a: Automorphism) -> Vec<Vec<Scalar>> {
        let n = self.degree();
        let images: Vec<FieldElement> = self.basis().iter().map(|b| self.apply(a, b)).collect();
        (0..n).map(|r| (0..n).map(|c| images[c].0[r].clone()).collect()).collect()
    }

    /// The fixed field of a set of automorphisms, which must form a subgroup.
    pub fn fixed_subfield(&self, group: &[Automorphism]) -> Result<Subfield> {
        if group.is_empty() {
            return Err(Error::NotASubgroup);
        }
        let set: std::collections::BTreeSet<Automorphism> = group.iter().copied().collect();
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.compose(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        // A subgroup of a cyclic group of order N is generated by φ^g with
        // g = gcd of its exponents (and N); its fixed field has degree g.
        let n = self.aut_order();
        let g = set.iter().fold(n, |acc, a| acc.gcd(&a.0));
        Ok(Subfield(g))
    }

    // ----- subfields ------------------------------------------------------

    /// The subfield lattice, smallest first.
    pub fn subfields(&self) -> Vec<Subfield> {
        let n = self.aut_order();
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(Subfield).collect()
    }

    pub fn full_subfield(&self) -> Subfield {
        Subfield(self.aut_order())
    }

    pub fn prime_subfield(&self) -> Subfield {
        Subfield(1)
    }

    pub fn subfield_of_degree(&self, d: u32) -> Option<Subfield> {
        (d >= 1 && self.aut_order().is_multiple_of(d)).then_some(Subfield(d))
    }

    /// The automorphism whose fixed field is `sub`.
    pub fn subfield_generator(&self, sub: Subfield) -> Automorphism {
        Automorphism(sub.0 % self.aut_order())
    }

    pub fn in_subfield(&self, sub: Subfield, x: &FieldElement) -> bool {
        self.apply(self.subfield_generator(sub), x) == *x
    }

    /// A prime-field basis of the subfield (kernel of `φ^d − id`).
    pub fn subfield_basis(&self, sub: Subfield) -> Vec<FieldElement> {
        let pf = self.prime_field();
        let n = self.degree();
        let mut m = self.aut_matrix(self.subfield_generator(sub));
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = pf.sub(&row[i], &pf.one());
        }
        linalg::nullspace(pf, &m, n).into_iter().map(FieldElement).collect()
    }

    /// Human-readable name of a subfield; the full field is named by the field itself.
    pub fn subfield_name(&self, sub: Subfield) -> String {
        match self.kind {
            FieldKind::Finite { p, .. } if sub.0 == 1 => format!("GF({p})"),
            FieldKind::Finite { p, .. } => format!("GF({p}^{})", sub.0),
            _ if sub.0 == 1 => "Q".to_string(),
            _ => self.to_string(),
        }
    }

    /// Parses a subfield name as produced by [`CoeffField::subfield_name`];
    /// `k` denotes the full field.
    pub fn parse_subfield(&self, name: &str) -> Option<Subfield> {
        let squashed: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        if squashed == "k" {
            return Some(self.full_subfield());
        }
        self.subfields().into_iter().find(|s| {
            let n: String = self.subfield_name(*s).chars().filter(|c| !c.is_whitespace()).collect();
            n == squashed
                || CoeffField::parse(&squashed).is_ok_and(|f| f.to_string() == self.subfield_name(*s))
        })
    }

    /// Name of an automorphism as used in the DSL (`conj`, `frob`, `frob^k`).
    pub fn aut_name(&self, a: Automorphism) -> String {
        match (&self.kind, a.0) {
            (_, 0) => "id".into(),
            (FieldKind::Quadratic(_), _) => "conj".into(),
            (_, 1) => "frob".into(),
            (_, k) => format!("frob^{k}"),
        }
    }

    pub fn parse_aut(&self, name: &str) -> Option<Automorphism> {
        match (&self.kind, name) {
            (_, "id") => Some(Automorphism::IDENTITY),
            (FieldKind::Quadratic(_), "conj") => Some(Automorphism(1)),
            (FieldKind::Finite { .. }, "frob") => Some(self.automorphism(1)),
            (FieldKind::Finite { .. }, n) => {
                let k: i64 = n.strip_prefix("frob^")?.parse().ok()?;
                Some(self.automorphism(k))
            }
            _ => None,
        }
    }

    /// Renders an element, e.g. `3`, `1/2 - i`, `2 + 3*w^2`.
    pub fn format_element(&self, x: &FieldElement) -> String {
        let gen = match self.kind {
            FieldKind::Quadratic(-1) => "i".to_string(),
            FieldKind::Quadratic(d) => format!("sqrt({d})"),
            _ => "w".to_string(),
        };
        let pf = self.prime_field();
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in x.0.iter().enumerate() {
            if pf.is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { pf.neg(c) } else { c.clone() };
            let monomial = match k {
                0 => String::new(),
                1 => gen.clone(),
                _ => format!("{gen}^{k}"),
            };
            let body = match (k, pf.is_one(&mag)) {
                (0, _) => mag.to_string(),
                (_, true) => monomial,
                _ => format!("{mag}*{monomial}"),
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        out
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Quadratic(-1) => write!(f, "Q(i)"),
            FieldKind::Quadratic(d) => write!(f, "Q(sqrt {d})"),
            FieldKind::Finite { p, m: 1 } => write!(f, "GF({p})"),
            FieldKind::Finite { p, m } => write!(f, "GF({p}^{m})"),
        }
    }
}

/// Multiplies two polynomials over GF(p) (coefficients constant term first).
fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Whether the monic polynomial with lower coefficients `low` is irreducible
/// over GF(p), by trial division against every monic polynomial of degree ≤ m/2.
pub(crate) fn is_irreducible(p: u64, low: &[u64]) -> bool {
    let m = low.len();
    let mut target = low.to_vec();
    target.push(1);
    for d in 1..=m / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f: Vec<u64> = (0..d).map(|k| code / p.pow(k as u32) % p).collect();
            f.push(1);
            for code2 in 0..p.pow((m - d) as u32) {
                let mut g: Vec<u64> = (0..m - d).map(|k| code2 / p.pow(k as u32) % p).collect();
                g.push(1);
                if poly_mul_mod(&f, &g, p) == target {
                    return false;
                }
            }
        }
    }
    true
}

/// Fallback for moduli outside the table: the first monic irreducible
/// polynomial (in base-p order of its lower coefficients) whose root
/// generates the multiplicative group.
fn least_primitive_modulus(p: u64, m: u32) -> Vec<u64> {
    let q = p.pow(m);
    for code in 0..q {
        let low: Vec<u64> = (0..m).map(|k| code / p.pow(k) % p).collect();
        if low[0] == 0 || !is_irreducible(p, &low) {
            continue;
        }
        let field = CoeffField { kind: FieldKind::Finite { p, m }, modulus: low.clone() };
        if multiplicative_order(&field, &field.basis()[1]) == q - 1 {
            return low;
        }
    }
    unreachable!("GF({p}^{m}) always has a primitive polynomial")
}

pub(crate) fn multiplicative_order(field: &CoeffField, x: &FieldElement) -> u64 {
    let one = field.one();
    let mut acc = x.clone();
    let mut k = 1;
    while acc != one {
        acc = field.mul(&acc, x);
        k += 1;
    }
    k
}
