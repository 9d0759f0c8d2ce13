//! Truncated power series in q with exact coefficients.
//!
//! Used for graded characters: expands a rational function of q regular at
//! q = 0 into its Taylor series up to a requested degree.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use num::{One as _, Zero as _};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Coefficients of 1, q, q^2, ..., q^trunc. All arithmetic truncates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Scalar>,
}

impl QSeries {
    pub fn zero(trunc: usize) -> Self {
        QSeries {
            coeffs: vec![Scalar::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = QSeries::zero(trunc);
        s.coeffs[0] = Scalar::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs }
    }

    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        QSeries::from_coeffs(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Truncation degree (highest tracked power of q).
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, trunc: usize) -> QSeries {
        let mut cs = self.coeffs.clone();
        cs.resize(trunc + 1, Scalar::zero());
        QSeries { coeffs: cs }
    }

    pub fn from_poly(p: &Poly, trunc: usize) -> QSeries {
        let mut s = QSeries::zero(trunc);
        for i in 0..=trunc {
            s.coeffs[i] = p.coeff(i);
        }
        s
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<QSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::PoleAtZero);
        }
        let n = self.coeffs.len();
        let c0inv = self.coeffs[0].inv();
        let mut out = vec![Scalar::zero(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -(acc) * &c0inv;
        }
        Ok(QSeries { coeffs: out })
    }
}

/// Taylor-expands a rational function of q around q = 0 to the given degree.
/// Fails with `PoleAtZero` if the denominator vanishes at 0.
pub fn qseries_expand(f: &RatFunc, trunc: usize) -> Result<QSeries> {
    let num = QSeries::from_poly(f.num(), trunc);
    let den = QSeries::from_poly(f.den(), trunc);
    Ok(&num * &den.inv()?)
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.trunc(), rhs.trunc());
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.trunc(), rhs.trunc());
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.trunc(), rhs.trunc());
        let n = self.coeffs.len();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        QSeries { coeffs: out }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let f = RatFunc::new(Poly::one(), Poly::from_int_coeffs(&[1, -1]));
        let s = qseries_expand(&f, 5).unwrap();
        assert_eq!(s, QSeries::from_int_coeffs(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn two_factor_denominator() {
        // 1/((1-q)^2 (1-q^2)) = 1 + 2q + 4q^2 + 6q^3 + ...
        let one_minus_q = Poly::from_int_coeffs(&[1, -1]);
        let den = &(&one_minus_q * &one_minus_q) * &Poly::from_int_coeffs(&[1, 0, -1]);
        let s = qseries_expand(&RatFunc::new(Poly::one(), den), 3).unwrap();
        assert_eq!(s, QSeries::from_int_coeffs(&[1, 2, 4, 6]));
    }

    #[test]
    fn numerator_shift() {
        // q/((1-q)(1-q^2)) = q + q^2 + 2q^3 + 2q^4 + ...
        let den = &Poly::from_int_coeffs(&[1, -1]) * &Poly::from_int_coeffs(&[1, 0, -1]);
        let s = qseries_expand(&RatFunc::new(Poly::x(), den), 4).unwrap();
        assert_eq!(s, QSeries::from_int_coeffs(&[0, 1, 1, 2, 2]));
    }

    #[test]
    fn pole_at_zero_rejected() {
        let f = RatFunc::new(Poly::one(), Poly::x());
        assert_eq!(qseries_expand(&f, 3), Err(Error::PoleAtZero));
    }

    #[test]
    fn series_inverse_roundtrip() {
        let s = QSeries::from_int_coeffs(&[1, 3, -2, 5, 0, 7]);
        let prod = &s * &s.inv().unwrap();
        assert!(prod.coeff(0).is_one());
        assert!(prod.coeffs()[1..].iter().all(|c| c.is_zero()));
    }
}
