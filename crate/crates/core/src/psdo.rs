//! Truncated pseudo-differential operators with matrix-valued rational
//! coefficients, the Berezinian, and the oper identities built from it.
//!
//! An operator is a finite sum A_r d^{-r} stored as a map r -> A_r; positive
//! powers of d have negative keys. Multiplication uses the generalized
//! Leibniz rule d^m a = sum_s binom(m, s) a^(s) d^{m-s} with the integer
//! falling-factorial binomial, and everything beyond the truncation order N
//! is dropped.

use crate::error::{Error, Result};
use crate::gaudin::{transfer_g12, zeta};
use crate::matrix::Matrix;
use crate::model::ModelSpec;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::repr::TensorModule;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsDO {
    dim: usize,
    trunc: i64,
    coeffs: BTreeMap<i64, Matrix<RatFunc>>,
}

/// binom(m, s) for any integer m and s >= 0: m(m-1)...(m-s+1)/s!.
fn gen_binomial(m: i64, s: u32) -> Scalar {
    let mut num: Scalar = num::One::one();
    for t in 0..s as i64 {
        num = num * Scalar::from_int(m - t);
    }
    let mut den: Scalar = num::One::one();
    for t in 1..=s as i64 {
        den = den * Scalar::from_int(t);
    }
    num / den
}

impl PsDO {
    pub fn zero(dim: usize, trunc: i64) -> Self {
        PsDO {
            dim,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, trunc: i64) -> Self {
        let mut p = PsDO::zero(dim, trunc);
        p.set(0, Matrix::identity(dim));
        p
    }

    /// The derivation d itself.
    pub fn d(dim: usize, trunc: i64) -> Self {
        let mut p = PsDO::zero(dim, trunc);
        p.set(-1, Matrix::identity(dim));
        p
    }

    /// A multiplication operator (key 0 coefficient).
    pub fn from_matrix(m: Matrix<RatFunc>, trunc: i64) -> Self {
        let dim = m.rows();
        let mut p = PsDO::zero(dim, trunc);
        p.set(0, m);
        p
    }

    pub fn from_scalar_fn(f: RatFunc, trunc: i64) -> Self {
        PsDO::from_matrix(Matrix::from_rows(vec![vec![f]]), trunc)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, key: i64, m: Matrix<RatFunc>) {
        assert_eq!(m.rows(), self.dim);
        if key <= self.trunc && !m.is_zero() {
            self.coeffs.insert(key, m);
        } else {
            self.coeffs.remove(&key);
        }
    }

    /// Coefficient of d^{-key}; zero matrix if absent.
    pub fn coeff(&self, key: i64) -> Matrix<RatFunc> {
        self.coeffs
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim, self.dim))
    }

    pub fn keys(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    fn min_key(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, rhs: &PsDO) -> PsDO {
        assert_eq!(self.trunc, rhs.trunc);
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, m) in &rhs.coeffs {
            out.set(*k, &out.coeff(*k) + m);
        }
        out
    }

    pub fn sub(&self, rhs: &PsDO) -> PsDO {
        assert_eq!(self.trunc, rhs.trunc);
        let mut out = self.clone();
        for (k, m) in &rhs.coeffs {
            out.set(*k, &out.coeff(*k) - m);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops coefficients beyond a smaller truncation order.
    pub fn truncate(&self, trunc: i64) -> PsDO {
        let mut out = PsDO::zero(self.dim, trunc);
        for (k, m) in &self.coeffs {
            if *k <= trunc {
                out.set(*k, m.clone());
            }
        }
        out
    }

    /// Applies each coefficient matrix to a scalar vector, returning the map
    /// key -> coefficient vector.
    pub fn apply(&self, v: &[Scalar]) -> BTreeMap<i64, Vec<RatFunc>> {
        let rf: Vec<RatFunc> = v.iter().map(|c| RatFunc::constant(c.clone())).collect();
        self.coeffs
            .iter()
            .map(|(k, m)| (*k, m.apply(&rf)))
            .collect()
    }
}

/// Product with the generalized Leibniz rule, exact through the truncation.
pub fn psdo_mul(a: &PsDO, b: &PsDO) -> Result<PsDO> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!(
            "psdo dims {} vs {}",
            a.dim, b.dim
        )));
    }
    assert_eq!(a.trunc, b.trunc);
    let mut out = PsDO::zero(a.dim, a.trunc);
    // Derivatives of the right coefficients, computed once and shared
    // across every left key that needs them.
    let mut derivs: BTreeMap<i64, Vec<Matrix<RatFunc>>> = b
        .coeffs
        .iter()
        .map(|(k, m)| (*k, vec![m.clone()]))
        .collect();
    for (&i, ai) in &a.coeffs {
        for &j in b.coeffs.keys() {
            // d^{-i} B = sum_s binom(-i, s) B^(s) d^{-i-s}.
            let mut s: u32 = 0;
            loop {
                let key = i + j + s as i64;
                if key > a.trunc {
                    break;
                }
                let c = gen_binomial(-i, s);
                if !num::Zero::is_zero(&c) {
                    let stack = derivs.get_mut(&j).expect("cached");
                    while stack.len() <= s as usize {
                        let next = stack.last().expect("nonempty").derivative();
                        stack.push(next);
                    }
                    let deriv = &stack[s as usize];
                    if !deriv.is_zero() {
                        let term = &ai.map(|f| f.scale(&c)) * deriv;
                        out.set(key, &out.coeff(key) + &term);
                    }
                }
                // binom(-i, s) vanishes for all larger s once -i >= 0 runs out.
                if -i >= 0 && s as i64 >= -i {
                    break;
                }
                s += 1;
            }
        }
    }
    Ok(out)
}

/// Inverse of A = d^deg (1 + lower order) by the Neumann series.
///
/// The input must be a finite exact sum (its coefficients beyond the stored
/// keys genuinely zero); the result's coefficients are then exact all the
/// way through the truncation, computed with internal headroom to absorb
/// the key shift of the leading d power.
pub fn psdo_invert(a: &PsDO) -> Result<PsDO> {
    let Some(min) = a.min_key() else {
        return Err(Error::NotInvertibleLeadingTerm);
    };
    let w = a.trunc + (-min).max(0);
    // B = A d^{min}: shift keys so the leading coefficient sits at key 0.
    if a.coeffs.get(&min) != Some(&Matrix::identity(a.dim)) {
        return Err(Error::NotInvertibleLeadingTerm);
    }
    let mut l: BTreeMap<i64, Matrix<RatFunc>> = BTreeMap::new();
    for (k, m) in &a.coeffs {
        let key = k - min;
        if key > 0 && key <= w {
            l.insert(key, m.clone());
        }
    }
    // Solve (1 + L) X = 1 by back-substitution on the keys: the key-k
    // coefficient only involves already-known X_j with j < k, via
    // X_k = - sum_{i + j + s = k, i >= 1} binom(-i, s) L_i X_j^{(s)}.
    // One pass costs as much as a single product, not one per series term.
    let bound = w.max(0) as usize;
    let mut x: Vec<Matrix<RatFunc>> = vec![Matrix::identity(a.dim)];
    // xderivs[j][s] = s-th derivative of X_j, filled on demand.
    let mut xderivs: Vec<Vec<Matrix<RatFunc>>> = vec![vec![Matrix::identity(a.dim)]];
    for k in 1..=bound {
        let mut acc: Matrix<RatFunc> = Matrix::zero(a.dim, a.dim);
        for (&i, li) in &l {
            let i = i as usize;
            if i > k {
                break;
            }
            for j in 0..=(k - i) {
                let s = (k - i - j) as u32;
                let c = gen_binomial(-(i as i64), s);
                if num::Zero::is_zero(&c) {
                    continue;
                }
                let stack = &mut xderivs[j];
                while stack.len() <= s as usize {
                    let next = stack.last().expect("nonempty").derivative();
                    stack.push(next);
                }
                if stack[s as usize].is_zero() {
                    continue;
                }
                let term = &li.map(|f| f.scale(&c)) * &stack[s as usize];
                acc = &acc + &term;
            }
        }
        let xk = acc.map(|f| -f);
        xderivs.push(vec![xk.clone()]);
        x.push(xk);
    }
    let mut inv = PsDO::zero(a.dim, w);
    for (k, m) in x.into_iter().enumerate() {
        inv.set(k as i64, m);
    }
    // A = B d^{-min}, so A^{-1} = d^{min} B^{-1}; the power min sits at
    // key -min in our convention.
    let mut shift = PsDO::zero(a.dim, w);
    shift.set(-min, Matrix::identity(a.dim));
    Ok(psdo_mul(&shift, &inv)?.truncate(a.trunc))
}

/// The Berezinian of the model's generator matrices:
/// (d - e11)(d + e22 + e21 (d - e11)^{-1} e12)^{-1}, whose expansion is
/// sum (-1)^r G_r d^{-r} with the higher transfer matrices G_r.
pub fn berezinian(m: &TensorModule, trunc: i64) -> Result<PsDO> {
    // One key of headroom: the final product multiplies by a bare d, which
    // pulls the coefficient after the truncation boundary down one key.
    let w = trunc + 1;
    let dim = m.dim();
    let d = PsDO::d(dim, w);
    let e11 = PsDO::from_matrix(m.series_matrix(1, 1), w);
    let e12 = PsDO::from_matrix(m.series_matrix(1, 2), w);
    let e21 = PsDO::from_matrix(m.series_matrix(2, 1), w);
    let e22 = PsDO::from_matrix(m.series_matrix(2, 2), w);
    let p = d.sub(&e11);
    let inner = d
        .add(&e22)
        .add(&psdo_mul(&psdo_mul(&e21, &psdo_invert(&p)?)?, &e12)?);
    Ok(psdo_mul(&p, &psdo_invert(&inner)?)?.truncate(trunc))
}

/// The r-th higher transfer matrix from the Berezinian expansion.
pub fn transfer_g(m: &TensorModule, r: i64, trunc: i64) -> Result<Matrix<RatFunc>> {
    let ber = berezinian(m, trunc)?;
    let sign = if r % 2 == 0 {
        RatFunc::one()
    } else {
        -RatFunc::one()
    };
    Ok(ber.coeff(r).scalar_mul(&sign))
}

/// The scalar oper attached to a divisor y:
/// (d - mu)(d + nu)^{-1} with mu = sum alpha_s/(x-b_s) - y'/y and
/// nu = sum beta_s/(x-b_s) + y'/y.
pub fn oper_dy(m: &ModelSpec, y: &Poly, trunc: i64) -> Result<PsDO> {
    let mut a = RatFunc::zero();
    let mut b = RatFunc::zero();
    for (w, pt) in m.weights.iter().zip(&m.points) {
        a = &a + &RatFunc::simple_pole(&w.alpha, pt);
        b = &b + &RatFunc::simple_pole(&w.beta, pt);
    }
    let log_dy = RatFunc::new(y.derivative(), y.clone());
    let mu = &a - &log_dy;
    let nu = &b + &log_dy;
    let w = trunc + 1;
    let d = PsDO::d(1, w);
    let left = d.sub(&PsDO::from_scalar_fn(mu, w));
    let right = d.add(&PsDO::from_scalar_fn(nu, w));
    Ok(psdo_mul(&left, &psdo_invert(&right)?)?.truncate(trunc))
}

/// The closed-form Berezinian
/// (d - G1 + G2 G1^{-1})(d + G2 G1^{-1})^{-1} as a matrix PsDO on the whole
/// module, with G1 inverted through the central scalar it acts by.
pub fn universal_oper_form(m: &TensorModule, trunc: i64) -> Result<PsDO> {
    let z = zeta(m);
    if z.is_zero() {
        return Err(Error::ZetaVanishes);
    }
    let (g1, g2) = transfer_g12(m);
    let g2_over_g1 = g2.scalar_mul(&z.inv());
    let w = trunc + 1;
    let d = PsDO::d(m.dim(), w);
    let left = d
        .sub(&PsDO::from_matrix(g1, w))
        .add(&PsDO::from_matrix(g2_over_g1.clone(), w));
    let right = d.add(&PsDO::from_matrix(g2_over_g1, w));
    Ok(psdo_mul(&left, &psdo_invert(&right)?)?.truncate(trunc))
}

/// Verifies the closed form against the defining Berezinian.
pub fn check_universal_oper(m: &TensorModule, trunc: i64) -> Result<bool> {
    Ok(universal_oper_form(m, trunc)? == berezinian(m, trunc)?)
}
