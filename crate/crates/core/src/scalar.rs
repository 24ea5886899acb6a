//! Exact scalar arithmetic over the Gaussian rationals.
//!
//! Every scalar is `re + im*i` with arbitrary-precision rational parts, so
//! plain rationals are the `im == 0` case. There is no floating-point path:
//! all arithmetic is exact and a zero test is decidable.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, re-exported as the real/imaginary part type.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// A Gaussian rational `re + im*i`.
///
/// `BigRational` keeps fractions reduced with a positive denominator, so
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn from_frac(p: i64, q: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    /// `a + b*i` from integer parts; convenient in tests.
    pub fn gauss(a: i64, b: i64) -> Self {
        Scalar {
            re: Rational::from_integer(BigInt::from(a)),
            im: Rational::from_integer(BigInt::from(b)),
        }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// The norm `re^2 + im^2`; zero iff the scalar is zero.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Sign of a real scalar: -1, 0, or 1. Panics on non-real input.
    pub fn real_sign(&self) -> i8 {
        assert!(self.is_real(), "sign of a non-real scalar");
        if self.re.is_zero() {
            0
        } else if self.re.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

fn add(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar {
        re: &a.re + &b.re,
        im: &a.im + &b.im,
    }
}

fn sub(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar {
        re: &a.re - &b.re,
        im: &a.im - &b.im,
    }
}

fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

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

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        mul(self, &rhs.inv().expect("division by zero scalar"))
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = sub(self, rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul(self, rhs);
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::from_str(t).map_err(|_| ScalarError::ParseRational(s.to_string()));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(ScalarError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rational_to_string(&self.im));
        }
        if self.im.is_positive() {
            write!(
                f,
                "{}+{}i",
                rational_to_string(&self.re),
                rational_to_string(&self.im)
            )
        } else {
            write!(
                f,
                "{}{}i",
                rational_to_string(&self.re),
                rational_to_string(&self.im)
            )
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Wire format: a real scalar is the string "p/q" (or "p"); a Gaussian scalar
// is {"re": "p/q", "im": "p/q"}. Integers are also accepted on input.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.im.is_zero() {
            serializer.serialize_str(&rational_to_string(&self.re))
        } else {
            let mut map = serializer.serialize_map(Some(2))?;
            map.serialize_entry("re", &rational_to_string(&self.re))?;
            map.serialize_entry("im", &rational_to_string(&self.im))?;
            map.end()
        }
    }
}

struct ScalarVisitor;

impl<'de> Visitor<'de> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\", an integer, or {\"re\", \"im\"}")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        parse_rational(v)
            .map(Scalar::from_rational)
            .map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::from_rational(Rational::from_integer(BigInt::from(
            v,
        ))))
    }

    fn visit_f64<E: de::Error>(self, _v: f64) -> Result<Scalar, E> {
        Err(E::custom(
            "floating-point input rejected; use a rational string \"p/q\"",
        ))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Scalar, A::Error> {
        let mut re: Option<String> = None;
        let mut im: Option<String> = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "re" => re = Some(map.next_value()?),
                "im" => im = Some(map.next_value()?),
                other => return Err(de::Error::unknown_field(other, &["re", "im"])),
            }
        }
        let re = parse_rational(&re.unwrap_or_else(|| "0".into())).map_err(de::Error::custom)?;
        let im = parse_rational(&im.unwrap_or_else(|| "0".into())).map_err(de::Error::custom)?;
        Ok(Scalar::new(re, im))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Scalar, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_canonical_form() {
        let a = Scalar::from_frac(2, 4);
        let b = Scalar::from_frac(1, 2);
        assert_eq!(a, b);
        let c = Scalar::from_frac(1, -2);
        assert_eq!(c, Scalar::from_frac(-1, 2));
        assert!(c.re().denom().is_positive());
    }

    #[test]
    fn norm_zero_iff_zero() {
        assert!(Scalar::zero().norm().is_zero());
        let z = Scalar::gauss(3, -4);
        assert_eq!(z.norm(), Rational::from_integer(BigInt::from(25)));
        assert!(!z.is_zero());
    }

    #[test]
    fn gaussian_field_ops() {
        let z = Scalar::gauss(1, 2);
        let w = Scalar::gauss(3, -1);
        assert_eq!(&z * &w, Scalar::gauss(5, 5));
        assert_eq!(&z + &w, Scalar::gauss(4, 1));
        let q = &z / &w;
        assert_eq!(&q * &w, z);
        assert_eq!(z.conj().conj(), z);
        assert_eq!((&z * &z.conj()).re(), &z.norm());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-7", "3/5", "-12/35", "1000000000000000000000/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), parse_rational("2/3").unwrap());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_forms() {
        let real = Scalar::from_frac(-3, 7);
        let js = serde_json::to_string(&real).unwrap();
        assert_eq!(js, "\"-3/7\"");
        assert_eq!(serde_json::from_str::<Scalar>(&js).unwrap(), real);

        let z = Scalar::new(
            parse_rational("1/2").unwrap(),
            parse_rational("-2/3").unwrap(),
        );
        let js = serde_json::to_string(&z).unwrap();
        assert_eq!(js, r#"{"re":"1/2","im":"-2/3"}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&js).unwrap(), z);

        assert_eq!(serde_json::from_str::<Scalar>("5").unwrap(), Scalar::from_int(5));
        assert!(serde_json::from_str::<Scalar>("0.5").is_err());
    }
}
