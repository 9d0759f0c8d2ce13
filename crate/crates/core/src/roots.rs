//! Exact root finding over Q and Q(i).
//!
//! Over Q this is the classical rational-root candidate test after clearing
//! denominators. Over Q(i) the same idea runs in the Gaussian integers:
//! candidate roots are ratios of Gaussian divisors of the trailing and
//! leading coefficients (up to units), with divisors enumerated through the
//! factorization of the integer norm.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Splits `p` into linear factors over `field`.
///
/// Returns the root multiset as (root, multiplicity) pairs sorted by the
/// deterministic scalar order. Fails with `NonSplitting` if an irreducible
/// factor of degree >= 2 remains.
pub fn split_linear_factors(p: &Poly, field: Field) -> Result<Vec<(Scalar, usize)>> {
    assert!(!p.is_zero(), "cannot split the zero polynomial");
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let mut work = p.monic();

    // Strip roots at zero first.
    let mut zero_mult = 0usize;
    while !work.is_zero() && work.coeff(0).is_zero() && work.deg() > 0 {
        work = work.div_exact(&Poly::x());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Scalar::zero(), zero_mult));
    }

    if work.deg() > 0 {
        let candidates = root_candidates(&work, field)?;
        for cand in candidates {
            if work.deg() == 0 {
                break;
            }
            if work.eval(&cand).is_zero() {
                let m = work.root_multiplicity(&cand);
                for _ in 0..m {
                    work = work.div_exact(&Poly::linear(&cand));
                }
                roots.push((cand, m));
            }
        }
    }

    if work.deg() > 0 {
        return Err(Error::NonSplitting(work.to_string()));
    }
    roots.sort_by(|a, b| a.0.cmp_key(&b.0));
    Ok(roots)
}

/// All roots with multiplicity as a flat, sorted list.
pub fn roots_with_multiplicity(p: &Poly, field: Field) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (r, m) in split_linear_factors(p, field)? {
        for _ in 0..m {
            out.push(r.clone());
        }
    }
    Ok(out)
}

fn root_candidates(p: &Poly, field: Field) -> Result<Vec<Scalar>> {
    match field {
        Field::Q => {
            for c in p.coeffs() {
                if !c.is_rational() {
                    return Err(Error::NonSplitting(format!(
                        "non-rational coefficient {c} over Q"
                    )));
                }
            }
            Ok(rational_candidates(p))
        }
        Field::Qi => Ok(gaussian_candidates(p)),
    }
}

// ---- Q ----

fn rational_candidates(p: &Poly) -> Vec<Scalar> {
    // Clear denominators to integer coefficients.
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re.denom());
    }
    let scale = BigRational::from_integer(lcm);
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (&c.re * &scale).to_integer())
        .collect();
    let a0 = ints.iter().find(|c| !c.is_zero()).unwrap().abs();
    let ad = ints.last().unwrap().abs();
    let ps = int_divisors(&a0);
    let qs = int_divisors(&ad);
    let mut out = Vec::new();
    for num in &ps {
        for den in &qs {
            let r = BigRational::new(num.clone(), den.clone());
            out.push(Scalar::from_rational(r.clone()));
            out.push(Scalar::from_rational(-r));
        }
    }
    out.sort_by(|a, b| a.cmp_key(b));
    out.dedup();
    out
}

/// Positive divisors of a positive integer by trial division.
fn int_divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut divs = vec![BigInt::one()];
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    while (&d * &d) <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            extend_by_prime_powers(&mut divs, &d, e);
        }
        d += 1;
    }
    if rest > BigInt::one() {
        extend_by_prime_powers(&mut divs, &rest, 1);
    }
    divs
}

fn extend_by_prime_powers(divs: &mut Vec<BigInt>, p: &BigInt, e: usize) {
    let base = divs.clone();
    let mut pk = BigInt::one();
    for _ in 0..e {
        pk *= p;
        for b in &base {
            divs.push(b * &pk);
        }
    }
}

// ---- Q(i) ----

/// A Gaussian integer, used only inside root candidate enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Gi {
    re: BigInt,
    im: BigInt,
}

impl Gi {
    fn new(re: BigInt, im: BigInt) -> Self {
        Gi { re, im }
    }
    fn from_int(n: i64) -> Self {
        Gi::new(BigInt::from(n), BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
    fn mul(&self, o: &Gi) -> Gi {
        Gi::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    /// Exact division if it exists.
    fn div_exact(&self, o: &Gi) -> Option<Gi> {
        let n = o.norm();
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        if (&re % &n).is_zero() && (&im % &n).is_zero() {
            Some(Gi::new(re / &n, im / n))
        } else {
            None
        }
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

/// Gaussian prime factors (one per associate class) of a nonzero Gaussian
/// integer, via factorization of its norm.
fn gaussian_prime_factors(g: &Gi) -> Vec<Gi> {
    let mut primes = Vec::new();
    let mut n = g.norm();
    let mut d = BigInt::from(2);
    let mut rational_primes = Vec::new();
    while (&d * &d) <= n {
        if (&n % &d).is_zero() {
            rational_primes.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        rational_primes.push(n);
    }
    for p in rational_primes {
        if p == BigInt::from(2) {
            primes.push(Gi::new(BigInt::one(), BigInt::one()));
        } else if (&p % BigInt::from(4)) == BigInt::from(3) {
            primes.push(Gi::new(p, BigInt::zero()));
        } else {
            // p = a^2 + b^2; search is fine at desk scale.
            let mut a = BigInt::one();
            loop {
                let b2 = &p - &a * &a;
                if b2 <= BigInt::zero() {
                    break;
                }
                let b = b2.sqrt();
                if &b * &b == b2 {
                    primes.push(Gi::new(a.clone(), b.clone()));
                    primes.push(Gi::new(a.clone(), -b));
                    break;
                }
                a += 1;
            }
        }
    }
    primes
}

/// All divisors of `g` up to units.
fn gaussian_divisors(g: &Gi) -> Vec<Gi> {
    assert!(!g.is_zero());
    let mut divs = vec![Gi::from_int(1)];
    for p in gaussian_prime_factors(g) {
        // Exponent of p in g.
        let mut rest = g.clone();
        let mut e = 0usize;
        while let Some(q) = rest.div_exact(&p) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            let base = divs.clone();
            let mut pk = Gi::from_int(1);
            for _ in 0..e {
                pk = pk.mul(&p);
                for b in &base {
                    divs.push(b.mul(&pk));
                }
            }
        }
    }
    divs
}

fn gaussian_candidates(p: &Poly) -> Vec<Scalar> {
    // Clear denominators to Gaussian integer coefficients.
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re.denom());
        lcm = lcm.lcm(c.im.denom());
    }
    let scale = BigRational::from_integer(lcm);
    let ints: Vec<Gi> = p
        .coeffs()
        .iter()
        .map(|c| {
            Gi::new(
                (&c.re * &scale).to_integer(),
                (&c.im * &scale).to_integer(),
            )
        })
        .collect();
    let a0 = ints.iter().find(|c| !c.is_zero()).unwrap();
    let ad = ints.last().unwrap();
    let units = [
        Scalar::one(),
        -Scalar::one(),
        Scalar::i(),
        -Scalar::i(),
    ];
    let mut out = Vec::new();
    for num in gaussian_divisors(a0) {
        for den in gaussian_divisors(ad) {
            let base = num.to_scalar() / den.to_scalar();
            for u in &units {
                out.push(&base * u);
            }
        }
    }
    out.sort_by(|a, b| a.cmp_key(b));
    out.dedup();
    out
}
