//! Canonical-form univariate rational functions.
//!
//! Invariant: gcd(numerator, denominator) = 1 and the denominator is monic.
//! Zero is 0/1. All equality checks elsewhere in the crate rely on this
//! canonical form; nothing is ever compared by evaluation sampling.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use num::Zero as _;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lead_inv = den.leading().inv();
        num = num.scale(&lead_inv);
        den = den.scale(&lead_inv);
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// c / (x - b).
    pub fn simple_pole(c: &Scalar, b: &Scalar) -> Self {
        RatFunc::new(Poly::constant(c.clone()), Poly::linear(b))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial it equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverting zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        // Cancel the repeated part of the denominator up front: with
        // g = gcd(d, d') the derivative is
        // (n' (d/g) - n (d'/g)) / (d (d/g)), already nearly reduced.
        let dd = self.den.derivative();
        let g = self.den.gcd(&dd);
        let d1 = self.den.div_exact(&g);
        let e1 = dd.div_exact(&g);
        let n = &(&self.num.derivative() * &d1) - &(&self.num * &e1);
        RatFunc::new(n, &self.den * &d1)
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // A polynomial operand adds with no gcd at all: the sum over the
        // other denominator is already in lowest terms.
        if self.den.is_one() {
            let t = &(&self.num * &rhs.den) + &rhs.num;
            if t.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num: t,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            let t = &self.num + &(&rhs.num * &self.den);
            if t.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num: t,
                den: self.den.clone(),
            };
        }
        // Equal denominators only need one reduction of the numerator sum.
        if self.den == rhs.den {
            let t = &self.num + &rhs.num;
            if t.is_zero() {
                return RatFunc::zero();
            }
            let h = t.gcd(&self.den);
            return RatFunc {
                num: t.div_exact(&h),
                den: self.den.div_exact(&h),
            };
        }
        // Henrici's scheme: with g = gcd(d1, d2) the sum
        // t / (g * (d1/g) * (d2/g)) only needs reducing by gcd(t, g),
        // so no full-degree gcd is ever taken.
        let g = self.den.gcd(&rhs.den);
        let d1g = self.den.div_exact(&g);
        let d2g = rhs.den.div_exact(&g);
        let t = &self.num * &d2g + &rhs.num * &d1g;
        if t.is_zero() {
            return RatFunc::zero();
        }
        let h = t.gcd(&g);
        RatFunc {
            num: t.div_exact(&h),
            den: &(&g.div_exact(&h) * &d1g) * &d2g,
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        // Cross-reducing first leaves the product already in lowest terms.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = rhs.den.div_exact(&g1);
        let n2 = rhs.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        RatFunc {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_rf_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { self.$m(&rhs) }
        }
    )*};
}
forward_rf_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        // (2x^2 - 2) / (4x - 4) = (x+1)/2
        let r = RatFunc::new(
            Poly::from_int_coeffs(&[-2, 0, 2]),
            Poly::from_int_coeffs(&[-4, 4]),
        );
        assert_eq!(r.num(), &Poly::from_int_coeffs(&[1, 1]).scale(&Scalar::from_ratio(1, 2)));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RatFunc::new(Poly::one(), Poly::x());
        let d = r.derivative();
        assert_eq!(
            d,
            RatFunc::new(Poly::from_int_coeffs(&[-1]), &Poly::x() * &Poly::x())
        );
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-4i64..=4, 1..5)
            .prop_map(|cs| Poly::from_int_coeffs(&cs))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn mul_by_reciprocal_is_one(p in small_poly(), q in small_poly()) {
            let a = RatFunc::new(p.clone(), q.clone());
            let b = RatFunc::new(q, p);
            prop_assert_eq!(&a * &b, RatFunc::one());
        }

        #[test]
        fn add_sub_cancel(p in small_poly(), q in small_poly(), r in small_poly()) {
            let a = RatFunc::new(p, q.clone());
            let b = RatFunc::new(r, q);
            let s = &(&a + &b) - &b;
            prop_assert_eq!(s, a);
        }
    }
}
