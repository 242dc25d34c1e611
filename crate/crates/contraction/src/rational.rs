//! Exact rational numbers and the extended values used as table sentinels.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// All lengths, loads and tolerance parameters are exact rationals.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}` (expected <num> or <num>/<den>)")]
pub struct ParseRationalError(pub String);

/// Parses `7`, `-3`, or `7/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i128 = num.parse().map_err(|_| err())?;
    let den: i128 = den.parse().map_err(|_| err())?;
    if den == 0 {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn int(value: i128) -> Rational {
    Rational::from_integer(value)
}

pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Least common multiple of the denominators, used to move to integer arithmetic.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

/// A rational extended by distinct −∞ and +∞ tags.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above, which is exactly what the table comparisons need.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Ext {
    pub fn zero() -> Ext {
        Ext::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ext::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// `self <= bound` for a finite bound.
    pub fn le(&self, bound: &Rational) -> bool {
        match self {
            Ext::NegInf => true,
            Ext::Finite(r) => r <= bound,
            Ext::PosInf => false,
        }
    }

    pub fn max_of(a: &Ext, b: &Ext) -> Ext {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min_of(a: &Ext, b: &Ext) -> Ext {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl From<Rational> for Ext {
    fn from(r: Rational) -> Self {
        Ext::Finite(r)
    }
}

impl PartialEq<Rational> for Ext {
    fn eq(&self, other: &Rational) -> bool {
        matches!(self, Ext::Finite(r) if r == other)
    }
}

impl PartialOrd<Rational> for Ext {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            Ext::NegInf => Ordering::Less,
            Ext::Finite(r) => r.cmp(other),
            Ext::PosInf => Ordering::Greater,
        })
    }
}

impl Add<&Rational> for &Ext {
    type Output = Ext;
    fn add(self, rhs: &Rational) -> Ext {
        match self {
            Ext::Finite(r) => Ext::Finite(r + rhs),
            other => other.clone(),
        }
    }
}

/// Sum of two extended values. −∞ absorbs +∞ here; the tables never add the
/// two together, so the choice only matters for totality.
impl Add<&Ext> for &Ext {
    type Output = Ext;
    fn add(self, rhs: &Ext) -> Ext {
        match (self, rhs) {
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Finite(r) => write!(f, "{r}"),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

/// `⌊r⌋` as an integer.
pub fn floor_int(r: &Rational) -> i128 {
    r.floor().to_integer()
}

/// `⌈r⌉` as an integer.
pub fn ceil_int(r: &Rational) -> i128 {
    r.ceil().to_integer()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn one() -> Rational {
    Rational::one()
}
