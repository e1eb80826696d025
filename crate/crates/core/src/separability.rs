//! Separability of `T` over `R` for block subrings `R ⊆ T ⊆ S`.
//!
//! `T ⊗_R T` is built as the quotient of `T ⊗_P T` (P the prime field) by
//! the span `N` of `t·r ⊗ t' − t ⊗ r·t'`. A linear functional basis of the
//! annihilator of `N` realises the quotient map. A separability idempotent
//! is then any `e ∈ T ⊗_P T` with `μ(e) = 1` and `(t ⊗ 1)e ≡ (1 ⊗ t)e mod N`
//! for every `t` in a prime basis of `T`; both conditions are linear in `e`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{BlockSubring, RingElement, SplitRing};
use crate::scalar::Scalar;

/// Coordinates of a separability idempotent `e = Σ c_{ab} t_a ⊗ t_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityWitness {
    /// Prime basis `t_1, …, t_m` of `T`.
    pub basis: Vec<RingElement>,
    /// `c_{ab}` at position `a * m + b`.
    pub coefficients: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separability {
    Separable(SeparabilityWitness),
    NotSeparable,
}

impl Separability {
    pub fn is_separable(&self) -> bool {
        matches!(self, Separability::Separable(_))
    }
}

/// Linear-algebra context for one pair `R ⊆ T`.
struct TensorSetup<'a> {
    ring: &'a SplitRing,
    basis: Vec<RingElement>,
    /// Row-reduced prime coordinates of the basis, for expressing elements of `T`.
    basis_rows: Vec<Vec<Scalar>>,
    /// Functionals vanishing exactly on `N`.
    quotient: Vec<Vec<Scalar>>,
}

impl<'a> TensorSetup<'a> {
    fn new(ring: &'a SplitRing, t: &BlockSubring, r: &BlockSubring) -> Result<Self> {
        let basis = t.prime_basis(ring);
        let basis_rows = basis.iter().map(|v| ring.prime_coords(v)).collect();
        let mut setup = TensorSetup { ring, basis, basis_rows, quotient: Vec::new() };
        let m = setup.basis.len();
        let mut relations = Vec::new();
        for rr in r.prime_basis(ring) {
            let right: Vec<Vec<Scalar>> = setup.basis.iter().map(|tb| setup.coords_in_t(&ring.mul(&rr, tb))).collect::<Result<_>>()?;
            for a in 0..m {
                let left = setup.coords_in_t(&ring.mul(&setup.basis[a], &rr))?;
                for b in 0..m {
                    let mut row = vec![ring.prime_field().zero(); m * m];
                    for (c, x) in left.iter().enumerate() {
                        row[c * m + b] = ring.prime_field().add(&row[c * m + b], x);
                    }
                    for (c, x) in right[b].iter().enumerate() {
                        row[a * m + c] = ring.prime_field().sub(&row[a * m + c], x);
                    }
                    relations.push(row);
                }
            }
        }
        setup.quotient = linalg::nullspace(ring.prime_field(), &relations, m * m);
        Ok(setup)
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `w ∈ T` in the prime basis of `T`.
    fn coords_in_t(&self, w: &RingElement) -> Result<Vec<Scalar>> {
        let pf = self.ring.prime_field();
        let cols = self.m();
        // Solve Σ x_a basis_a = w, i.e. Bᵀ x = w.
        let dim = self.ring.prime_dim();
        let target = self.ring.prime_coords(w);
        let rows: Vec<Vec<Scalar>> = (0..dim).map(|k| (0..cols).map(|a| self.basis_rows[a][k].clone()).collect()).collect();
        linalg::solve(pf, &rows, &target, cols).ok_or_else(|| Error::Precondition("product left T; is T a subring containing R?".into()))
    }

    /// Sparse columns of `t_a ⊗ t_b ↦ (t·t_a) ⊗ t_b − t_a ⊗ (t·t_b)`.
    fn commutator_columns(&self, t: &RingElement) -> Result<Vec<Vec<(usize, Scalar)>>> {
        let m = self.m();
        let pf = self.ring.prime_field();
        let images: Vec<Vec<Scalar>> = self.basis.iter().map(|tb| self.coords_in_t(&self.ring.mul(t, tb))).collect::<Result<_>>()?;
        let mut cols = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let mut col: Vec<(usize, Scalar)> = Vec::new();
                for (c, x) in images[a].iter().enumerate().filter(|(_, x)| !pf.is_zero(x)) {
                    col.push((c * m + b, x.clone()));
                }
                for (c, x) in images[b].iter().enumerate().filter(|(_, x)| !pf.is_zero(x)) {
                    col.push((a * m + c, pf.neg(x)));
                }
                cols.push(col);
            }
        }
        Ok(cols)
    }

    /// Applies a sparse-column matrix to a dense vector.
    fn apply_columns(&self, cols: &[Vec<(usize, Scalar)>], v: &[Scalar]) -> Vec<Scalar> {
        let pf = self.ring.prime_field();
        let mut out = vec![pf.zero(); cols.len()];
        for (col, x) in cols.iter().zip(v) {
            if pf.is_zero(x) {
                continue;
            }
            for (k, c) in col {
                out[*k] = pf.add(&out[*k], &pf.mul(c, x));
            }
        }
        out
    }

    /// Rows of the system `π((t⊗1 − 1⊗t) e) = 0` for every basis element `t`.
    fn commutation_rows(&self) -> Result<Vec<Vec<Scalar>>> {
        let pf = self.ring.prime_field();
        let mut rows = Vec::new();
        for t in &self.basis {
            let cols = self.commutator_columns(t)?;
            for f in &self.quotient {
                // (f · D e) = Σ_col e_col (f · D[:, col])
                let row: Vec<Scalar> = cols
                    .iter()
                    .map(|col| col.iter().fold(pf.zero(), |acc, (k, c)| if pf.is_zero(&f[*k]) { acc } else { pf.add(&acc, &pf.mul(&f[*k], c)) }))
                    .collect();
                if row.iter().any(|x| !pf.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
        Ok(rows)
    }

    /// Rows (and right-hand side) of `μ(e) = 1`.
    fn multiplication_rows(&self) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
        let m = self.m();
        let dim = self.ring.prime_dim();
        let products: Vec<Vec<Scalar>> = (0..m * m)
            .map(|k| self.ring.prime_coords(&self.ring.mul(&self.basis[k / m], &self.basis[k % m])))
            .collect();
        let rows = (0..dim).map(|c| products.iter().map(|p| p[c].clone()).collect()).collect();
        (rows, self.ring.prime_coords(&self.ring.one()))
    }

    fn in_relations(&self, v: &[Scalar]) -> bool {
        let pf = self.ring.prime_field();
        self.quotient.iter().all(|f| pf.is_zero(&linalg::dot(pf, f, v)))
    }
}

/// Looks for a separability idempotent of `T` over `R`.
pub fn separability_check(ring: &SplitRing, t: &BlockSubring, r: &BlockSubring) -> Result<Separability> {
    if !t.contains_subring(ring, r) {
        return Err(Error::Precondition("R is not contained in T".into()));
    }
    let setup = TensorSetup::new(ring, t, r)?;
    let (mut rows, mut rhs) = setup.multiplication_rows();
    let comm = setup.commutation_rows()?;
    rhs.extend(std::iter::repeat_n(ring.prime_field().zero(), comm.len()));
    rows.extend(comm);
    let m = setup.m();
    Ok(match linalg::solve(ring.prime_field(), &rows, &rhs, m * m) {
        Some(coefficients) => Separability::Separable(SeparabilityWitness { basis: setup.basis, coefficients }),
        None => Separability::NotSeparable,
    })
}

impl SeparabilityWitness {
    /// Re-checks `μ(e) = 1` by direct ring multiplication and
    /// `(t⊗1)e − (1⊗t)e ∈ N` for each basis element `t`.
    pub fn verify(&self, ring: &SplitRing, t: &BlockSubring, r: &BlockSubring) -> Result<bool> {
        let setup = TensorSetup::new(ring, t, r)?;
        if setup.basis != self.basis {
            return Ok(false);
        }
        let m = self.basis.len();
        let mut mu = ring.zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            let prod = ring.mul(&self.basis[k / m], &self.basis[k % m]);
            mu = ring.add(&mu, &ring.scale(c, &prod));
        }
        if mu != ring.one() {
            return Ok(false);
        }
        for tt in &self.basis {
            let diff = setup.apply_columns(&setup.commutator_columns(tt)?, &self.coefficients);
            if !setup.in_relations(&diff) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self` and `Σ c_{ab} t_a ⊗ t_b` agree in `T ⊗_R T`.
    pub fn equals_in_quotient(&self, ring: &SplitRing, t: &BlockSubring, r: &BlockSubring, other: &[Scalar]) -> Result<bool> {
        let setup = TensorSetup::new(ring, t, r)?;
        let pf = ring.prime_field();
        let diff: Vec<Scalar> = self.coefficients.iter().zip(other).map(|(a, b)| pf.sub(a, b)).collect();
        Ok(setup.in_relations(&diff))
    }

    /// Coefficients of an element `Σ c_j (x_j ⊗ y_j)` with `x_j, y_j ∈ T`,
    /// expressed in this witness's tensor basis.
    pub fn tensor_coords(&self, ring: &SplitRing, t: &BlockSubring, r: &BlockSubring, terms: &[(Scalar, RingElement, RingElement)]) -> Result<Vec<Scalar>> {
        let setup = TensorSetup::new(ring, t, r)?;
        let pf = ring.prime_field();
        let m = setup.m();
        let mut out = vec![pf.zero(); m * m];
        for (c, x, y) in terms {
            let cx = setup.coords_in_t(x)?;
            let cy = setup.coords_in_t(y)?;
            for a in 0..m {
                for b in 0..m {
                    let v = pf.mul(c, &pf.mul(&cx[a], &cy[b]));
                    out[a * m + b] = pf.add(&out[a * m + b], &v);
                }
            }
        }
        Ok(out)
    }
}
