//! Dense matrices over any exact ring (scalars or rational functions).

use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|t| f(t)).collect(),
        }
    }
}

/// Minimal ring interface the generic matrix operations need.
pub trait Ring: Clone + PartialEq {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl Ring for Scalar {
    fn ring_zero() -> Self {
        num::Zero::zero()
    }
    fn ring_one() -> Self {
        num::One::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
}

impl Ring for RatFunc {
    fn ring_zero() -> Self {
        RatFunc::zero()
    }
    fn ring_one() -> Self {
        RatFunc::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::ring_zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                T::ring_one()
            } else {
                T::ring_zero()
            }
        })
    }

    pub fn scalar_mul(&self, c: &T) -> Matrix<T> {
        self.map(|t| t.ring_mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|t| t.ring_is_zero())
    }

    pub fn is_scalar_multiple_of_identity(&self) -> Option<T> {
        assert_eq!(self.rows, self.cols);
        if self.rows == 0 {
            return Some(T::ring_one());
        }
        let d = self.at(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c { d.clone() } else { T::ring_zero() };
                if *self.at(r, c) != want {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::ring_zero();
                for c in 0..self.cols {
                    if !self.at(r, c).ring_is_zero() && !v[c].ring_is_zero() {
                        acc = acc.ring_add(&self.at(r, c).ring_mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::ring_zero();
        for i in 0..self.rows {
            acc = acc.ring_add(self.at(i, i));
        }
        acc
    }

    pub fn commutator(&self, other: &Matrix<T>) -> Matrix<T> {
        &(self * other) - &(other * self)
    }
}

impl Matrix<RatFunc> {
    /// Entrywise derivative in x.
    pub fn derivative(&self) -> Matrix<RatFunc> {
        self.map(|f| f.derivative())
    }

    /// Entrywise evaluation; fails if any entry has a pole at the point.
    pub fn eval(&self, x: &Scalar) -> crate::error::Result<Matrix<Scalar>> {
        let mut data = Vec::with_capacity(self.data.len());
        for f in &self.data {
            data.push(f.eval(x)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl Matrix<Scalar> {
    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.map(|c| RatFunc::constant(c.clone()))
    }
}

impl<T: Ring> Add<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.ring_add(b))
                .collect(),
        }
    }
}

impl<T: Ring> Sub<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.ring_sub(b))
                .collect(),
        }
    }
}

impl<T: Ring> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows);
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::ring_zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.ring_is_zero() {
                    continue;
                }
                let b = rhs.at(k, c);
                if b.ring_is_zero() {
                    continue;
                }
                acc = acc.ring_add(&a.ring_mul(b));
            }
            acc
        })
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|t| t.ring_neg())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
