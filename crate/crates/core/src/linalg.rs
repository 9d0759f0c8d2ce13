//! Exact linear algebra over the ground field: row reduction, kernels,
//! solving, span membership, and characteristic polynomials.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;
use num::{One as _, Zero as _};

/// Reduced row echelon form together with the pivot column indices.
pub fn rref(m: &Matrix<Scalar>) -> (Matrix<Scalar>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.at(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a.at(p, j).clone();
                *a.at_mut(p, j) = a.at(r, j).clone();
                *a.at_mut(r, j) = tmp;
            }
        }
        let inv = a.at(r, c).inv();
        for j in c..cols {
            let v = a.at(r, j) * &inv;
            *a.at_mut(r, j) = v;
        }
        for i in 0..rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let factor = a.at(i, c).clone();
            for j in c..cols {
                let v = a.at(i, j) - &(&factor * a.at(r, j));
                *a.at_mut(i, j) = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix<Scalar>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel {v : Mv = 0}, one vector per free column,
/// in free-column order.
pub fn kernel_basis(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.at(row, free);
        }
        basis.push(v);
    }
    basis
}

/// Solves Mx = b exactly; None if inconsistent. Free variables are set to 0.
pub fn solve(m: &Matrix<Scalar>, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows());
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |r, c| {
        if c < m.cols() {
            m.at(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.contains(&m.cols()) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Scalar::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.at(row, m.cols()).clone();
    }
    Some(x)
}

fn matrix_from_cols(cols: &[Vec<Scalar>]) -> Matrix<Scalar> {
    let dim = cols.first().map_or(0, |v| v.len());
    Matrix::from_fn(dim, cols.len(), |r, c| cols[c][r].clone())
}

/// Is v in the span of the given vectors?
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    solve(&matrix_from_cols(vectors), v).is_some()
}

/// Reduces a spanning set to a basis, keeping the first vector that extends
/// the span at each step.
pub fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for v in vectors {
        if !in_span(&basis, v) {
            basis.push(v.clone());
        }
    }
    basis
}

/// Intersection of subspaces given by spanning sets.
pub fn intersect_spans(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    // Kernel of [A | -B]: coefficients (x, y) with Ax = By.
    let m = Matrix::from_fn(dim, a.len() + b.len(), |r, c| {
        if c < a.len() {
            a[c][r].clone()
        } else {
            -&b[c - a.len()][r]
        }
    });
    let mut out = Vec::new();
    for k in kernel_basis(&m) {
        let mut v = vec![Scalar::zero(); dim];
        for (j, col) in a.iter().enumerate() {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi += &(&k[j] * &col[i]);
            }
        }
        if !v.iter().all(|c| c.is_zero()) {
            out.push(v);
        }
    }
    span_basis(&out)
}

/// Matrix of the operator `op` restricted to the invariant subspace spanned
/// by `basis` (columns of the result are coordinates of op(basis vectors)).
/// Fails if the subspace is not invariant.
pub fn restrict(op: &Matrix<Scalar>, basis: &[Vec<Scalar>]) -> Result<Matrix<Scalar>> {
    let n = basis.len();
    let cols = matrix_from_cols(basis);
    let mut out = Matrix::zero(n, n);
    for (j, v) in basis.iter().enumerate() {
        let image = op.apply(v);
        let coords = solve(&cols, &image).ok_or_else(|| {
            Error::DimensionMismatch(format!(
                "operator image of basis vector {j} leaves the subspace"
            ))
        })?;
        for i in 0..n {
            *out.at_mut(i, j) = coords[i].clone();
        }
    }
    Ok(out)
}

/// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &Matrix<Scalar>) -> Poly {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux: Matrix<Scalar> = Matrix::identity(n);
    for k in 1..=n {
        aux = m * &aux;
        let c = -(aux.trace()) / Scalar::from_int(k as i64);
        for i in 0..n {
            let v = aux.at(i, i) + &c;
            *aux.at_mut(i, i) = v;
        }
        coeffs[n - k] = c;
    }
    Poly::new(coeffs)
}

/// det(M) = (-1)^n * charpoly(0).
pub fn determinant(m: &Matrix<Scalar>) -> Scalar {
    let n = m.rows();
    let c0 = char_poly(m).coeff(0);
    if n % 2 == 0 {
        c0
    } else {
        -c0
    }
}
