//! Numeric backends for probability masses.
//!
//! Every distribution and measure is generic over [`Mass`], implemented for
//! `f64` (tolerance based) and [`Rational`] (exact arbitrary precision).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Float => "float",
            Backend::Rational => "rational",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Backend::Float),
            "rational" => Ok(Backend::Rational),
            other => Err(Error::InvalidParameters(format!(
                "unknown backend {other:?} (expected float or rational)"
            ))),
        }
    }
}

/// A probability mass as written in a distribution file: a JSON number or a
/// string such as `"3/8"` or `"0.125"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MassLiteral {
    Number(serde_json::Number),
    Text(String),
}

impl fmt::Display for MassLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassLiteral::Number(n) => write!(f, "{n}"),
            MassLiteral::Text(s) => f.write_str(s),
        }
    }
}

pub trait Mass: Num + Clone + PartialOrd + fmt::Debug + Send + Sync + 'static {
    const BACKEND: Backend;

    fn to_f64(&self) -> f64;

    fn from_literal(literal: &MassLiteral) -> Result<Self>;

    fn to_literal(&self) -> MassLiteral;

    /// `num / den`, exact where the backend allows it.
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Equality for identity checks: exact on rationals, `|a - b| <= tol` on floats.
    fn agrees(&self, other: &Self, tol: f64) -> bool;

    fn is_negative_mass(&self) -> bool {
        *self < Self::zero()
    }

    /// `self += other`, possibly leaving `self` unnormalized until [`Mass::settle`].
    fn add_lazy(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn settle(self) -> Self {
        self
    }

    /// `a * b == c * d`, exact on rationals.
    fn products_agree(a: &Self, b: &Self, c: &Self, d: &Self) -> bool {
        a.clone() * b.clone() == c.clone() * d.clone()
    }
}

impl Mass for f64 {
    const BACKEND: Backend = Backend::Float;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_literal(literal: &MassLiteral) -> Result<Self> {
        let value = match literal {
            MassLiteral::Number(n) => n.as_f64(),
            MassLiteral::Text(s) => parse_rational(s).and_then(|r| ToPrimitive::to_f64(&r)),
        };
        value
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::InvalidMass(literal.to_string()))
    }

    fn to_literal(&self) -> MassLiteral {
        serde_json::Number::from_f64(*self)
            .map(MassLiteral::Number)
            .unwrap_or_else(|| MassLiteral::Text(self.to_string()))
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn agrees(&self, other: &Self, tol: f64) -> bool {
        self == other || (self - other).abs() <= tol
    }
}

impl Mass for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_literal(literal: &MassLiteral) -> Result<Self> {
        let text = literal.to_string();
        parse_rational(&text).ok_or(Error::InvalidMass(text))
    }

    fn to_literal(&self) -> MassLiteral {
        MassLiteral::Text(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn agrees(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn add_lazy(&mut self, other: &Self) {
        let (numer, denom) = if self.denom() == other.denom() {
            (self.numer() + other.numer(), self.denom().clone())
        } else {
            (
                self.numer() * other.denom() + other.numer() * self.denom(),
                self.denom() * other.denom(),
            )
        };
        *self = Rational::new_raw(numer, denom);
    }

    fn settle(self) -> Self {
        let (numer, denom) = self.into_raw();
        match (numer.to_u128(), denom.to_u128()) {
            (Some(n), Some(d)) => {
                let g = n.gcd(&d);
                Rational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
            }
            _ => Rational::new(numer, denom),
        }
    }

    fn products_agree(a: &Self, b: &Self, c: &Self, d: &Self) -> bool {
        // denominators are positive, so clearing them keeps equality
        a.numer() * b.numer() * c.denom() * d.denom() == c.numer() * d.numer() * a.denom() * b.denom()
    }
}

/// Parses `"a/b"` or a decimal literal (optionally with exponent) exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num.trim())?;
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Some(if negative { -value } else { value })
}

/// Shorthand used throughout tests and fixtures.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn is_positive<T: Mass>(value: &T) -> bool {
    *value > T::zero()
}

pub(crate) fn sum<'a, T: Mass>(values: impl IntoIterator<Item = &'a T>) -> T {
    let mut total = T::zero();
    for v in values {
        total.add_lazy(v);
    }
    total.settle()
}

/// `|total - 1|` as a float, for diagnostics.
pub(crate) fn deviation_from_one<T: Mass>(total: &T) -> f64 {
    if total.clone() >= T::one() {
        (total.clone() - T::one()).to_f64()
    } else {
        (T::one() - total.clone()).to_f64()
    }
}
