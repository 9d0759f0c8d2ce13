//! Exact ground-field arithmetic: rationals and Gaussian rationals.
//!
//! A `Scalar` is an element of Q(i) stored as a pair of arbitrary-precision
//! rationals. Elements of Q are exactly the scalars with zero imaginary part.
//! Equality is canonical-form equality (num::BigRational is always reduced
//! with positive denominator).

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Active ground field for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// Rational numbers.
    Q,
    /// Gaussian rationals Q(i).
    Qi,
}

impl Field {
    pub fn contains(&self, s: &Scalar) -> bool {
        match self {
            Field::Q => s.im.is_zero(),
            Field::Qi => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Qi => write!(f, "Qi"),
        }
    }
}

/// An exact element of Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0);
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            re: r,
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// re^2 + im^2, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm_sqr();
        Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order by (real part, imaginary part); used for stable reports.
    pub fn cmp_key(&self, other: &Scalar) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// Parses the scalar text format: "p/q", "p/q+r/si", "p/q-r/si",
    /// integers without "/1", and pure imaginary forms like "i", "-i", "2i".
    pub fn parse(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar token".into()));
        }
        if let Some(body) = s.strip_suffix('i') {
            // Either a pure imaginary "ri" or a combined "a+ri"/"a-ri".
            // Find the sign splitting real from imaginary part, skipping a
            // leading sign of the real part.
            let bytes = body.as_bytes();
            let mut split = None;
            for (idx, &c) in bytes.iter().enumerate().skip(1) {
                if (c == b'+' || c == b'-') && bytes[idx - 1] != b'/' {
                    split = Some(idx);
                }
            }
            match split {
                Some(idx) => {
                    let re = parse_rational(&body[..idx])?;
                    let imtok = &body[idx..];
                    let im = match imtok {
                        "+" => BigRational::one(),
                        "-" => -BigRational::one(),
                        _ => parse_rational(imtok)?,
                    };
                    Ok(Scalar { re, im })
                }
                None => {
                    let im = match body {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        _ => parse_rational(body)?,
                    };
                    Ok(Scalar {
                        re: BigRational::zero(),
                        im,
                    })
                }
            }
        } else {
            Ok(Scalar {
                re: parse_rational(s)?,
                im: BigRational::zero(),
            })
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid scalar token `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let imabs = self.im.abs();
        let imtxt = if imabs.is_one() {
            String::new()
        } else {
            fmt_rational(&imabs)
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{imtxt}i")
        } else {
            write!(f, "{}{sign}{imtxt}i", fmt_rational(&self.re))
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv()
    }
}
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(Scalar::parse("3").unwrap(), Scalar::from_int(3));
        assert_eq!(Scalar::parse("-7/2").unwrap(), Scalar::from_ratio(-7, 2));
        assert_eq!(Scalar::parse("0").unwrap(), Scalar::zero());
    }

    #[test]
    fn parse_gaussian_forms() {
        assert_eq!(Scalar::parse("i").unwrap(), Scalar::i());
        assert_eq!(Scalar::parse("-i").unwrap(), -Scalar::i());
        let z = Scalar::parse("1/2-3/4i").unwrap();
        assert_eq!(z.re, BigRational::new(1.into(), 2.into()));
        assert_eq!(z.im, BigRational::new((-3).into(), 4.into()));
        assert_eq!(Scalar::parse("2i").unwrap(), Scalar::from_int(2) * Scalar::i());
        assert_eq!(Scalar::parse("-1-i").unwrap(), -Scalar::one() - Scalar::i());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("x").is_err());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("1//2").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["5", "-3/7", "1/2+3i", "-2/3-1/5i", "i", "-i", "4i"] {
            let z = Scalar::parse(s).unwrap();
            assert_eq!(Scalar::parse(&z.to_string()).unwrap(), z);
        }
    }

    #[test]
    fn field_arithmetic() {
        let z = Scalar::parse("1/2+3/4i").unwrap();
        assert_eq!(&z * &z.inv(), Scalar::one());
        assert_eq!(&z * &z.conj(), Scalar::from_rational(z.norm_sqr()));
        assert_eq!(Scalar::i() * Scalar::i(), -Scalar::one());
    }

    #[test]
    fn ordering_key() {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::from_ratio(3, 2);
        assert_eq!(a.cmp_key(&b), Ordering::Less);
        let c = Scalar::i();
        assert_eq!(Scalar::zero().cmp_key(&c), Ordering::Less);
        assert!(BigRational::one().is_one());
    }
}
