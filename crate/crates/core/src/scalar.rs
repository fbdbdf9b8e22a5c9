//! Real scalars in one of two explicit modes.
//!
//! Every identity in this crate is checked exactly over the rationals; floats
//! exist for the finite-difference operators. Mixing the two in a single
//! operation is always an error. Conversion goes through [`Scalar::to_float`]
//! or [`Scalar::to_exact`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Which number system a [`Scalar`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown scalar mode {other:?}")),
        }
    }
}

/// A real number: an arbitrary-precision rational or a binary float.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` constructors normalise).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Scalar::from_int(1, mode)
    }

    pub fn from_int(n: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(n))),
            Mode::Float => Scalar::Float(n as f64),
        }
    }

    /// `numer/denom` in the given mode. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64, mode: Mode) -> Self {
        assert!(denom != 0, "zero denominator");
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::new(numer.into(), denom.into())),
            Mode::Float => Scalar::Float(numer as f64 / denom as f64),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(v) => *v == 1.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(v) => *v < 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Lossy conversion to `f64`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(v) => *v,
        }
    }

    /// Explicit (possibly lossy) conversion into float mode.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Explicit conversion into exact mode. Every finite float is a rational,
    /// so this is lossless; non-finite floats are rejected.
    pub fn to_exact(&self) -> Result<Scalar, AlgebraError> {
        match self {
            Scalar::Exact(_) => Ok(self.clone()),
            Scalar::Float(v) => BigRational::from_float(*v)
                .map(Scalar::Exact)
                .ok_or(AlgebraError::NonFinite),
        }
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Scalar, AlgebraError> {
        match mode {
            Mode::Exact => self.to_exact(),
            Mode::Float => Ok(self.to_float()),
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), AlgebraError> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(AlgebraError::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        })
    }

    /// Square root; only defined in float mode.
    pub fn sqrt(&self) -> Result<Scalar, AlgebraError> {
        match self {
            Scalar::Exact(_) => Err(AlgebraError::Unsupported("square root")),
            Scalar::Float(v) => Ok(Scalar::Float(v.sqrt())),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(num_traits::pow(r.clone(), exp as usize)),
            Scalar::Float(v) => Scalar::Float(v.powi(exp as i32)),
        }
    }

    /// Parses `n`, `n/d` or a decimal literal (optionally with exponent).
    ///
    /// In exact mode decimals become the rational they denote, so `0.1` is
    /// exactly `1/10`.
    pub fn parse(text: &str, mode: Mode) -> Result<Scalar, AlgebraError> {
        let text = text.trim();
        let bad = || AlgebraError::BadLiteral(text.to_string());
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            let r = BigRational::new(n, d);
            return Ok(match mode {
                Mode::Exact => Scalar::Exact(r),
                Mode::Float => Scalar::Float(r.to_f64().ok_or_else(bad)?),
            });
        }
        match mode {
            Mode::Float => {
                let v: f64 = text.parse().map_err(|_| bad())?;
                if v.is_finite() {
                    Ok(Scalar::Float(v))
                } else {
                    Err(AlgebraError::NonFinite)
                }
            }
            Mode::Exact => parse_decimal(text).map(Scalar::Exact).ok_or_else(bad),
        }
    }
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(all);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -r } else { r })
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            /// Panics when the operands are in different modes; use the
            /// `checked_*` variant to get an error instead.
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    (a, b) => panic!("mixed scalar modes: {} {} {}", a.mode(), stringify!($op), b.mode()),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

/// Exact values print as `n` or `n/d`; floats use the shortest decimal that
/// round-trips.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

/// JSON form: exact values as `"n/d"` strings, floats as numbers.
impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => s.serialize_str(&self.to_string()),
            Scalar::Float(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => Scalar::parse(&t, Mode::Exact).map_err(serde::de::Error::custom),
            Repr::Number(v) => Ok(Scalar::Float(v)),
        }
    }
}
