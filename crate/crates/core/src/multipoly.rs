//! Sparse multivariate polynomials and elementary-symmetric reduction.
//!
//! Exponent vectors map to nonzero coefficients; the number of variables is
//! fixed per value. Monomial order for display and for the leading term of
//! the symmetric-reduction algorithm is lexicographic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num::{One as _, Zero as _};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    /// The variable z_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    fn insert(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Multiply by the monomial z^exps.
    pub fn mul_monomial(&self, exps: &[u32]) -> MultiPoly {
        assert_eq!(exps.len(), self.nvars);
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let ne: Vec<u32> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
                    (ne, v.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t *= &point[i].pow(ei);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Apply a permutation of variables: variable i goes to position perm[i].
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; self.nvars];
            for (i, &ei) in e.iter().enumerate() {
                ne[perm[i]] = ei;
            }
            out.insert(ne, c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute_vars(&perm)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// The i-th elementary symmetric polynomial (1-based), sigma_0 = 1.
    pub fn elementary_symmetric(nvars: usize, i: usize) -> MultiPoly {
        assert!(i <= nvars);
        let mut out = MultiPoly::zero(nvars);
        for subset in combinations(nvars, i) {
            let mut e = vec![0u32; nvars];
            for s in subset {
                e[s] = 1;
            }
            out.insert(e, Scalar::one());
        }
        out
    }

    fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rewrites a symmetric polynomial in terms of the elementary symmetric
/// polynomials. The result lives in fresh variables s_1..s_n where the i-th
/// variable stands for sigma_i. Substituting the sigma expansions back
/// reproduces the input exactly.
pub fn reduce_symmetric(p: &MultiPoly) -> Result<MultiPoly> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = p.nvars();
    let sigmas: Vec<MultiPoly> = (1..=n)
        .map(|i| MultiPoly::elementary_symmetric(n, i))
        .collect();
    let mut rest = p.clone();
    let mut out = MultiPoly::zero(n);
    while let Some((lead, coeff)) = rest.leading_term() {
        // Lex-leading exponent of a symmetric polynomial is weakly
        // decreasing; its symmetric rewrite starts with
        // sigma_1^{e1-e2} sigma_2^{e2-e3} ... sigma_n^{en}.
        let coeff = coeff.clone();
        let mut sexp = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { lead[i + 1] } else { 0 };
            debug_assert!(lead[i] >= next, "leading exponent not weakly decreasing");
            sexp[i] = lead[i] - next;
        }
        out.insert(sexp.clone(), coeff.clone());
        // Subtract coeff * prod sigma_i^{sexp_i} expanded in z.
        let mut prod = MultiPoly::constant(n, coeff);
        for (i, &e) in sexp.iter().enumerate() {
            for _ in 0..e {
                prod = &prod * &sigmas[i];
            }
        }
        rest = &rest - &prod;
    }
    Ok(out)
}

/// Substitutes the sigma expansions into a polynomial produced by
/// `reduce_symmetric`, returning a polynomial in z again.
pub fn expand_in_sigmas(p: &MultiPoly) -> MultiPoly {
    let n = p.nvars();
    let sigmas: Vec<MultiPoly> = (1..=n)
        .map(|i| MultiPoly::elementary_symmetric(n, i))
        .collect();
    let mut out = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        let mut prod = MultiPoly::constant(n, c.clone());
        for (i, &ei) in e.iter().enumerate() {
            for _ in 0..ei {
                prod = &prod * &sigmas[i];
            }
        }
        out = &out + &prod;
    }
    out
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &ei) in e.iter().enumerate() {
                match ei {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{}", i + 1, ei)?,
                }
            }
        }
        Ok(())
    }
}
