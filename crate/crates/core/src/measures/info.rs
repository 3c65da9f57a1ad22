use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mass::{Backend, Mass};

/// Logarithm base, strictly greater than one. Defaults to bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const BITS: LogBase = LogBase(2.0);
    pub const NATS: LogBase = LogBase(std::f64::consts::E);

    pub fn new(base: f64) -> Result<Self> {
        if base.is_finite() && base > 1.0 {
            Ok(Self(base))
        } else {
            Err(Error::InvalidBase(base.to_string()))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        if self.0 == 2.0 {
            x.log2()
        } else {
            x.ln() / self.0.ln()
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        Self::BITS
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" => Ok(Self::NATS),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::InvalidBase(other.to_string()))
                .and_then(Self::new),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::NATS {
            f.write_str("e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// An information quantity `log_b(num / den)` kept as its argument.
///
/// Sums multiply arguments and differences divide them, so identities
/// between quantities reduce to equalities of masses, which the rational
/// backend decides exactly. `num = 0` is `-∞`, `den = 0` is `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct Info<T> {
    num: T,
    den: T,
    base: LogBase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Finite,
    PosInf,
    NegInf,
    Undefined,
}

impl<T: Mass> Info<T> {
    pub fn ratio(num: T, den: T, base: LogBase) -> Self {
        Self {
            num: clamp(num),
            den: clamp(den),
            base,
        }
    }

    /// `-log_b p`
    pub fn surprisal(p: T, base: LogBase) -> Self {
        Self::ratio(T::one(), p, base)
    }

    pub fn zero(base: LogBase) -> Self {
        Self::ratio(T::one(), T::one(), base)
    }

    pub fn base(&self) -> LogBase {
        self.base
    }

    pub fn numerator(&self) -> &T {
        &self.num
    }

    pub fn denominator(&self) -> &T {
        &self.den
    }

    fn class(&self) -> Class {
        match (self.num.is_zero(), self.den.is_zero()) {
            (false, false) => Class::Finite,
            (false, true) => Class::PosInf,
            (true, false) => Class::NegInf,
            (true, true) => Class::Undefined,
        }
    }

    /// The quantity as an extended real (NaN only for `0/0`).
    pub fn value(&self) -> f64 {
        match self.class() {
            Class::PosInf => f64::INFINITY,
            Class::NegInf => f64::NEG_INFINITY,
            Class::Undefined => f64::NAN,
            Class::Finite => match T::BACKEND {
                Backend::Float => self.base.log(self.num.to_f64()) - self.base.log(self.den.to_f64()),
                // the exact quotient avoids cancellation between two logs
                Backend::Rational => self.base.log((self.num.clone() / self.den.clone()).to_f64()),
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        self.class() == Class::Finite
    }

    /// Rational backend: equality of arguments. Float backend: values within `tol`.
    pub fn agrees(&self, other: &Self, tol: f64) -> bool {
        let class = self.class();
        if class != other.class() || class == Class::Undefined {
            return false;
        }
        if class != Class::Finite {
            return true;
        }
        match T::BACKEND {
            Backend::Rational => T::products_agree(&self.num, &other.den, &other.num, &self.den),
            Backend::Float => (self.value() - other.value()).abs() <= tol,
        }
    }

    /// `|self - other|` in value, `0` whenever the two agree exactly.
    pub fn residual(&self, other: &Self) -> f64 {
        if self.agrees(other, 0.0) {
            return 0.0;
        }
        let (a, b) = (self.value(), other.value());
        if a == b {
            0.0
        } else {
            (a - b).abs()
        }
    }

    pub fn scaled_by(&self, weight: f64) -> f64 {
        if weight == 0.0 {
            0.0
        } else {
            weight * self.value()
        }
    }
}

fn clamp<T: Mass>(value: T) -> T {
    // float sums of identical cells can dip below zero by an ulp
    if value < T::zero() {
        T::zero()
    } else {
        value
    }
}

impl<T: Mass> Add for Info<T> {
    type Output = Info<T>;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.base, rhs.base);
        Info::ratio(self.num * rhs.num, self.den * rhs.den, self.base)
    }
}

impl<T: Mass> Neg for Info<T> {
    type Output = Info<T>;

    fn neg(self) -> Self {
        Info {
            num: self.den,
            den: self.num,
            base: self.base,
        }
    }
}

impl<T: Mass> Sub for Info<T> {
    type Output = Info<T>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Mass> Add for &Info<T> {
    type Output = Info<T>;

    fn add(self, rhs: Self) -> Info<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Mass> Sub for &Info<T> {
    type Output = Info<T>;

    fn sub(self, rhs: Self) -> Info<T> {
        self.clone() - rhs.clone()
    }
}

/// An extended real that serializes infinities as `"inf"` / `"-inf"` and NaN
/// as `"nan"`, since JSON numbers cannot carry them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extended(pub f64);

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_nan() {
            serializer.serialize_str("nan")
        } else if v == f64::INFINITY {
            serializer.serialize_str("inf")
        } else if v == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(v)
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.0;
        if v.is_infinite() {
            f.write_str(if v > 0.0 { "+inf" } else { "-inf" })
        } else if let Some(p) = f.precision() {
            // avoid printing "-0.000000"
            let v = if v == 0.0 { 0.0 } else { v };
            write!(f, "{v:.p$}")
        } else {
            write!(f, "{v}")
        }
    }
}
