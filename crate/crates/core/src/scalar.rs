//! Exact rational scalars and their extension with infinite sentinels.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(value: i64) -> Self {
        Scalar(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Midpoint of two scalars.
    pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &b.0) / BigRational::from_integer(2.into()))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Parses an integer (`-3`), a fraction (`7/4`) or an exact decimal
    /// (`2.5`, `-.125`). Decimals are converted without rounding.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let s = text.trim();
        if s.is_empty() {
            return Err("empty number".into());
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            return Ok(Scalar(BigRational::new(n, d)));
        }
        let (sign, body) = match s.as_bytes()[0] {
            b'-' => (-1, &s[1..]),
            b'+' => (1, &s[1..]),
            _ => (1, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("`{s}` is not a number"));
        }
        let all_digits = |t: &str| t.bytes().all(|c| c.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(format!("`{s}` is not a number"));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| format!("`{s}` is not a number"))?
        };
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Scalar(BigRational::new(numer * sign, denom)))
    }
}

fn parse_int(t: &str) -> std::result::Result<BigInt, String> {
    let t = t.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("`{t}` is not an integer"));
    }
    t.parse().map_err(|_| format!("`{t}` is not an integer"))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s).map_err(Error::Domain)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::from_integer(value)
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar(value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 + &rhs.0)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 - &rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::parse(&s).map_err(de::Error::custom)
    }
}

/// A scalar extended with `-inf` and `+inf`, used only for interval
/// endpoints and relaxation magnitudes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Extended::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// `self + delta` where `self` is finite; infinities absorb.
    pub fn offset(base: &Scalar, delta: &Extended, negate: bool) -> Extended {
        match (delta, negate) {
            (Extended::Finite(d), false) => Extended::Finite(base + d),
            (Extended::Finite(d), true) => Extended::Finite(base - d),
            (Extended::PosInf, false) | (Extended::NegInf, true) => Extended::PosInf,
            (Extended::NegInf, false) | (Extended::PosInf, true) => Extended::NegInf,
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        match text.trim() {
            "-inf" => Ok(Extended::NegInf),
            "+inf" | "inf" => Ok(Extended::PosInf),
            other => Scalar::parse(other).map(Extended::Finite),
        }
    }
}

impl From<Scalar> for Extended {
    fn from(value: Scalar) -> Self {
        Extended::Finite(value)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("+inf"),
            Extended::Finite(s) => fmt::Display::fmt(s, f),
        }
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Extended::parse(&s).map_err(de::Error::custom)
    }
}
