//! Arithmetic modes: exact rationals and binary floats behind one trait.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Relative tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "rational" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// The exponent `p >= 1`. Integral values are kept as integers so that exact
/// mode can raise rationals to the power `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Integer(u32),
    Real(f64),
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::UnsupportedExponent(format!(
                "p must be a finite real >= 1, got {p}"
            )));
        }
        if p.fract() == 0.0 && p <= u32::MAX as f64 {
            Ok(Exponent::Integer(p as u32))
        } else {
            Ok(Exponent::Real(p))
        }
    }

    pub fn integer(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::UnsupportedExponent("p must be >= 1".into()));
        }
        Ok(Exponent::Integer(p))
    }

    /// Accepts integers, decimals and `num/den` fractions.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let p = match s.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
                let d: f64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
                if d == 0.0 {
                    return Err(Error::Parse(format!("bad exponent {s:?}")));
                }
                n / d
            }
            None => s.parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?,
        };
        Self::new(p)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Integer(p) => p as f64,
            Exponent::Real(p) => p,
        }
    }

    pub fn as_integer(self) -> Option<u32> {
        match self {
            Exponent::Integer(p) => Some(p),
            Exponent::Real(_) => None,
        }
    }

    pub fn is_one(self) -> bool {
        self == Exponent::Integer(1)
    }

    pub fn to_json(self) -> serde_json::Value {
        match self {
            Exponent::Integer(p) => serde_json::Value::from(p),
            Exponent::Real(p) => serde_json::Value::from(p),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Integer(p) => write!(f, "{p}"),
            Exponent::Real(p) => write!(f, "{p}"),
        }
    }
}

/// Scalar field used by vectors and norms.
pub trait Scalar:
    Clone + PartialOrd + fmt::Debug + Send + Sync + Signed + FromStr + 'static
{
    const MODE: Mode;

    fn from_count(v: u64) -> Self;
    fn from_ratio(num: i64, den: u64) -> Self;
    /// `1 / 2^n`.
    fn inv_pow2(n: u32) -> Self;
    /// Best representation of a float (exact binary value in exact mode).
    fn from_float(v: f64) -> Result<Self>;
    fn to_float(&self) -> f64;
    /// `self^p`; exact mode only accepts integer `p`.
    fn pow_p(&self, p: Exponent) -> Result<Self>;
    fn to_json(&self) -> serde_json::Value;
    /// Parses a decimal, integer or `num/den` literal.
    fn parse_literal(s: &str) -> Result<Self>;

    /// `self <= other`, within the float tolerance in float mode.
    fn le_tol(&self, other: &Self) -> bool {
        self <= other
    }

    /// Equality, within the float tolerance in float mode.
    fn eq_tol(&self, other: &Self) -> bool {
        self == other
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Relative closeness used for float comparisons.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_count(v: u64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn inv_pow2(n: u32) -> Self {
        0.5f64.powi(n as i32)
    }

    fn from_float(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::invalid(format!("non-finite value {v}")));
        }
        Ok(v)
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn pow_p(&self, p: Exponent) -> Result<Self> {
        Ok(match p {
            Exponent::Integer(k) => self.powi(k as i32),
            Exponent::Real(r) => self.powf(r),
        })
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let s = s.trim();
        let v = match s.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().map_err(|_| bad_literal(s))?;
                let d: f64 = d.trim().parse().map_err(|_| bad_literal(s))?;
                if d == 0.0 {
                    return Err(bad_literal(s));
                }
                n / d
            }
            None => s.parse().map_err(|_| bad_literal(s))?,
        };
        if !v.is_finite() {
            return Err(bad_literal(s));
        }
        Ok(v)
    }

    fn le_tol(&self, other: &Self) -> bool {
        *self <= *other || close_rel(*self, *other, FLOAT_TOLERANCE)
    }

    fn eq_tol(&self, other: &Self) -> bool {
        close_rel(*self, *other, FLOAT_TOLERANCE)
    }
}

fn bad_literal(s: &str) -> Error {
    Error::Parse(format!("bad numeric literal {s:?}"))
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_count(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn inv_pow2(n: u32) -> Self {
        Rational::new(BigInt::one(), BigInt::one() << n as usize)
    }

    fn from_float(v: f64) -> Result<Self> {
        <Rational as FromPrimitive>::from_f64(v).ok_or_else(|| Error::invalid(format!("non-finite value {v}")))
    }

    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn pow_p(&self, p: Exponent) -> Result<Self> {
        match p {
            Exponent::Integer(k) => Ok(num_traits::pow(self.clone(), k as usize)),
            Exponent::Real(r) => Err(Error::UnsupportedExponent(format!(
                "exact mode needs an integer exponent, got {r}"
            ))),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rational_string(self))
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad_literal(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_literal(s))?;
            if d.is_zero() {
                return Err(bad_literal(s));
            }
            return Ok(Rational::new(n, d));
        }
        parse_decimal(s).ok_or_else(|| bad_literal(s))
    }
}

/// `num/den` or plain `num` when the denominator is one.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact value of a decimal literal such as `-1.25e-3`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
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
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let all = all / BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = Rational::from_integer(all);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Exact rational from a big unsigned integer.
pub fn rational_from_big(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}
