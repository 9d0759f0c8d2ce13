//! Dense univariate polynomials over the ground field.
//!
//! Coefficients are stored in ascending degree order; the zero polynomial is
//! the empty vector and the last stored coefficient is always nonzero.

use crate::scalar::Scalar;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// x - a.
    pub fn linear(a: &Scalar) -> Self {
        Poly::new(vec![-a, Scalar::one()])
    }

    pub fn from_int_coeffs(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 via `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().inv())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Poly {
        let mut p = Poly::one();
        for r in roots {
            p = &p * &Poly::linear(r);
        }
        p
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lead_inv = d.leading().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - d.coeffs.len() + 1;
        let mut q = vec![Scalar::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i + j] = &rem[i + j] - &t;
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(q), Poly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "non-exact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd, computed as a primitive pseudo-remainder sequence over the
    /// Gaussian integers to keep coefficients small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = gp_from_poly(self);
        let mut b = gp_from_poly(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let mut r = gp_prem(a, &b);
            if !r.is_empty() {
                r = gp_primitive(r);
            }
            a = b;
            b = r;
        }
        gp_to_poly(&a).monic()
    }

    /// Yun's squarefree decomposition: pairwise-coprime squarefree monic
    /// factors with multiplicities, reconstructing self up to leading
    /// coefficient.
    pub fn squarefree_decompose(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let p = self.monic();
        if p.deg() == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let mut out = Vec::new();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0);
        let mut c = dp.div_exact(&a0);
        let mut i = 1usize;
        loop {
            let d = &c - &b.derivative();
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.deg() == 0 {
                break;
            }
            c = d.div_exact(&a);
            i += 1;
        }
        out
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        let mut p = self.clone();
        let lin = Poly::linear(a);
        let mut m = 0;
        while !p.is_zero() && p.eval(a).is_zero() {
            p = p.div_exact(&lin);
            m += 1;
        }
        m
    }

    /// All coefficients conjugated.
    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }
}

// --- Gaussian-integer polynomial helpers backing the gcd ---

type G = (BigInt, BigInt);

fn g_is_zero(a: &G) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

fn g_mul(a: &G, b: &G) -> G {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn g_norm(a: &G) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Nearest integer to p/q for q > 0.
fn round_div(p: &BigInt, q: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (p * &two + q).div_floor(&(q * &two))
}

/// Rounded Gaussian quotient, making Euclid's algorithm terminate.
fn g_div_round(a: &G, b: &G) -> G {
    let n = g_norm(b);
    let t = g_mul(a, &(b.0.clone(), -b.1.clone()));
    (round_div(&t.0, &n), round_div(&t.1, &n))
}

fn g_div_exact(a: &G, b: &G) -> G {
    let n = g_norm(b);
    let t = g_mul(a, &(b.0.clone(), -b.1.clone()));
    (&t.0 / &n, &t.1 / &n)
}

fn g_gcd(mut a: G, mut b: G) -> G {
    while !g_is_zero(&b) {
        let q = g_div_round(&a, &b);
        let qb = g_mul(&q, &b);
        let r = (&a.0 - &qb.0, &a.1 - &qb.1);
        a = b;
        b = r;
    }
    a
}

fn gp_trim(v: &mut Vec<G>) {
    while v.last().map_or(false, g_is_zero) {
        v.pop();
    }
}

/// Clears denominators and removes the content.
fn gp_from_poly(p: &Poly) -> Vec<G> {
    let mut lcm = BigInt::one();
    for c in &p.coeffs {
        lcm = lcm.lcm(c.re.denom());
        lcm = lcm.lcm(c.im.denom());
    }
    let v: Vec<G> = p
        .coeffs
        .iter()
        .map(|c| {
            let re = c.re.numer() * (&lcm / c.re.denom());
            let im = c.im.numer() * (&lcm / c.im.denom());
            (re, im)
        })
        .collect();
    gp_primitive(v)
}

fn gp_to_poly(v: &[G]) -> Poly {
    Poly::new(
        v.iter()
            .map(|(re, im)| {
                Scalar::new(
                    BigRational::from_integer(re.clone()),
                    BigRational::from_integer(im.clone()),
                )
            })
            .collect(),
    )
}

fn gp_primitive(mut v: Vec<G>) -> Vec<G> {
    gp_trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut content = (BigInt::zero(), BigInt::zero());
    for c in &v {
        content = g_gcd(content, c.clone());
        if content.0.abs() == BigInt::one() && content.1.is_zero() {
            break;
        }
    }
    v.into_iter().map(|c| g_div_exact(&c, &content)).collect()
}

/// Pseudo-remainder of a by b (up to content, which the caller strips).
fn gp_prem(mut r: Vec<G>, b: &[G]) -> Vec<G> {
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        // r <- lb*r - lr*x^shift*b: kills the leading coefficient exactly.
        let mut next = vec![(BigInt::zero(), BigInt::zero()); r.len()];
        for (i, c) in r.iter().enumerate() {
            next[i] = g_mul(c, &lb);
        }
        for (i, c) in b.iter().enumerate() {
            let t = g_mul(c, &lr);
            next[i + shift].0 -= t.0;
            next[i + shift].1 -= t.1;
        }
        gp_trim(&mut next);
        debug_assert!(next.len() < r.len());
        r = next;
    }
    r
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_poly_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_poly_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ctxt = c.to_string();
            let needs_parens = ctxt.contains('+') || (ctxt.contains('-') && !ctxt.starts_with('-'));
            let ctxt = if needs_parens {
                format!("({ctxt})")
            } else {
                ctxt
            };
            match i {
                0 => write!(f, "{ctxt}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{ctxt}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{ctxt}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_roundtrip() {
        let p = Poly::from_int_coeffs(&[3, -11, 4]); // 4x^2 - 11x + 3
        let d = Poly::from_int_coeffs(&[-1, 2]); // 2x - 1
        let (q, r) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, p);
    }

    #[test]
    fn squarefree_visible_factorization() {
        // x^2 (x-1) -> [(x,2),(x-1,1)]
        let p = &(&Poly::x() * &Poly::x()) * &Poly::from_int_coeffs(&[-1, 1]);
        let sf = p.squarefree_decompose();
        assert_eq!(sf, vec![
            (Poly::from_int_coeffs(&[-1, 1]), 1),
            (Poly::x(), 2),
        ]);
    }

    #[test]
    fn squarefree_linear() {
        // 2x - 1 -> [(x - 1/2, 1)]
        let p = Poly::from_int_coeffs(&[-1, 2]);
        let sf = p.squarefree_decompose();
        assert_eq!(sf, vec![(Poly::linear(&Scalar::from_ratio(1, 2)), 1)]);
    }

    #[test]
    fn squarefree_irreducible_square() {
        // (x^2+1)^2 over Q -> [(x^2+1, 2)]
        let q = Poly::from_int_coeffs(&[1, 0, 1]);
        let p = &q * &q;
        assert_eq!(p.squarefree_decompose(), vec![(q, 2)]);
    }

    #[test]
    fn gcd_and_mult() {
        let a = Scalar::from_int(2);
        let p = &Poly::from_roots(&[a.clone(), a.clone()]) * &Poly::x();
        assert_eq!(p.root_multiplicity(&a), 2);
        assert_eq!(p.root_multiplicity(&Scalar::zero()), 1);
        assert_eq!(p.root_multiplicity(&Scalar::one()), 0);
    }
}
