//! Exact Gaussian elimination over a prime field.
//!
//! Vectors and matrix rows are plain `Vec<Scalar>`; every routine takes the
//! [`PrimeField`] explicitly. There are no tolerances anywhere: a pivot is
//! either zero or it is not.

use crate::scalar::{PrimeField, Scalar};

/// Reduced row echelon form with zero rows dropped.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

pub fn rref(pf: PrimeField, rows: &[Vec<Scalar>], ncols: usize) -> Rref {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !pf.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = pf.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = pf.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || pf.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !pf.is_zero(y) {
                    *x = pf.sub(x, &pf.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

pub fn rank(pf: PrimeField, rows: &[Vec<Scalar>], ncols: usize) -> usize {
    rref(pf, rows, ncols).pivots.len()
}

/// A basis of `{x : A x = 0}` where `A` has the given rows.
pub fn nullspace(pf: PrimeField, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let red = rref(pf, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![pf.zero(); ncols];
        v[free] = pf.one();
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            v[p] = pf.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(pf: PrimeField, rows: &[Vec<Scalar>], rhs: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let augmented: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(pf, &augmented, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![pf.zero(); ncols];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// A basis of the row space.
pub fn row_basis(pf: PrimeField, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    rref(pf, rows, ncols).rows
}

/// Whether two families span the same subspace.
pub fn same_span(pf: PrimeField, a: &[Vec<Scalar>], b: &[Vec<Scalar>], ncols: usize) -> bool {
    let ra = rank(pf, a, ncols);
    let rb = rank(pf, b, ncols);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank(pf, &all, ncols) == ra
}

pub fn in_span(pf: PrimeField, basis: &[Vec<Scalar>], v: &[Scalar], ncols: usize) -> bool {
    let r = rank(pf, basis, ncols);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    rank(pf, &all, ncols) == r
}

pub fn dot(pf: PrimeField, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(pf.zero(), |acc, (x, y)| pf.add(&acc, &pf.mul(x, y)))
}

/// `M v` for a square or rectangular matrix given by rows.
pub fn mat_vec(pf: PrimeField, m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| dot(pf, row, v)).collect()
}
