//! p-adic valuations and absolute values of rationals.
//!
//! A nonzero absolute value is always an integer power of p, so [`AbsValue`]
//! keeps only the exponent; `|x|_p = p^(-v_p(x))`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::Rational;

/// `v_p(x)`; `Infinite` only for `x = 0`. Ordered with `Infinite` above every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Multiplicity of p in a nonzero integer.
pub fn integer_valuation(p: Prime, n: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    if p.get() == 2 {
        return n.trailing_zeros().unwrap_or(0);
    }
    let p = BigInt::from(p.get());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (quot, rem) = rest.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        v += 1;
        rest = quot;
    }
}

pub fn valuation(p: Prime, q: &Rational) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let num = integer_valuation(p, q.numer()) as i64;
    let den = integer_valuation(p, q.denom()) as i64;
    Valuation::Finite(num - den)
}

pub fn abs_p(p: Prime, q: &Rational) -> AbsValue {
    match valuation(p, q) {
        Valuation::Finite(v) => AbsValue::power(p, -v),
        Valuation::Infinite => AbsValue::zero(p),
    }
}

/// A p-adic absolute value: either zero or `p^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbsValue {
    p: Prime,
    exponent: Option<i64>,
}

impl AbsValue {
    pub fn zero(p: Prime) -> Self {
        AbsValue { p, exponent: None }
    }

    pub fn one(p: Prime) -> Self {
        AbsValue::power(p, 0)
    }

    /// The value `p^exponent`.
    pub fn power(p: Prime, exponent: i64) -> Self {
        AbsValue { p, exponent: Some(exponent) }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.exponent.is_none()
    }

    /// `None` for the zero absolute value.
    pub fn exponent(&self) -> Option<i64> {
        self.exponent
    }

    pub fn try_mul(&self, other: &AbsValue) -> Result<AbsValue> {
        self.p.ensure_same(other.p)?;
        Ok(match (self.exponent, other.exponent) {
            (Some(a), Some(b)) => AbsValue::power(self.p, a + b),
            _ => AbsValue::zero(self.p),
        })
    }

    pub fn try_div(&self, other: &AbsValue) -> Result<AbsValue> {
        self.p.ensure_same(other.p)?;
        let divisor = other.exponent.ok_or(Error::AbsDivisionByZero)?;
        Ok(match self.exponent {
            Some(a) => AbsValue::power(self.p, a - divisor),
            None => *self,
        })
    }

    /// `|x|^k`; `0^0` is taken to be 1.
    pub fn pow(&self, k: u32) -> AbsValue {
        match self.exponent {
            Some(e) => AbsValue::power(self.p, e * k as i64),
            None if k == 0 => AbsValue::one(self.p),
            None => *self,
        }
    }

    pub fn try_cmp(&self, other: &AbsValue) -> Result<Ordering> {
        self.p.ensure_same(other.p)?;
        Ok(match (self.exponent, other.exponent) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        })
    }

    pub fn try_max(&self, other: &AbsValue) -> Result<AbsValue> {
        Ok(if self.try_cmp(other)? == Ordering::Less { *other } else { *self })
    }

    /// Approximate real value, for display only.
    pub fn to_f64(&self) -> f64 {
        match self.exponent {
            Some(e) => (self.p.get() as f64).powf(e as f64),
            None => 0.0,
        }
    }

    /// Parses the rendering produced by `Display`: `"p^e"` or `"0"`. The
    /// prime must be supplied because `"0"` does not carry it.
    pub fn parse(s: &str, p: Prime) -> Result<AbsValue> {
        if s == "0" {
            return Ok(AbsValue::zero(p));
        }
        let bad = || Error::Parse(format!("malformed absolute value {s:?}"));
        let (base, exp) = s.split_once('^').ok_or_else(bad)?;
        let base: u64 = base.parse().map_err(|_| bad())?;
        let exp: i64 = exp.parse().map_err(|_| bad())?;
        p.ensure_same(Prime::new(base)?)?;
        Ok(AbsValue::power(p, exp))
    }
}

impl PartialOrd for AbsValue {
    /// `None` when the primes differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Some(e) => write!(f, "{}^{}", self.p, e),
            None => f.write_str("0"),
        }
    }
}

impl Serialize for AbsValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `|n|_p` of a positive integer given as `u64`.
pub fn abs_of_count(p: Prime, n: u64) -> AbsValue {
    abs_p(p, &Rational::from_integer(n))
}
