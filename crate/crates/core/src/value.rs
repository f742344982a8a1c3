//! Exact rational values and extended approximation factors.
//!
//! Every valuation, threshold and fairness factor in this crate is an exact
//! rational with arbitrary-precision numerator and denominator. Tie-breaks in
//! the online algorithms and the equalities the adversaries rely on are only
//! meaningful under exact comparison.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FairError;

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Value(BigRational);

impl Value {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, FairError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(FairError::InvalidValue("zero denominator".into()));
        }
        Ok(Value(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` from machine integers. Panics on a zero denominator, so
    /// it is meant for literals.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Value(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(v: i64) -> Self {
        Value(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn one() -> Self {
        Value(BigRational::one())
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let magnitude = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Value(BigRational::from_integer(magnitude))
        } else {
            Value(BigRational::new(BigInt::one(), magnitude))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
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

    pub fn abs(&self) -> Value {
        Value(self.0.abs())
    }

    pub fn recip(&self) -> Result<Value, FairError> {
        if self.is_zero() {
            return Err(FairError::InvalidValue("reciprocal of zero".into()));
        }
        Ok(Value(self.0.recip()))
    }

    /// Smallest integer `k` with `k >= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// `self * other` as a rational, for callers that prefer method syntax.
    pub fn times(&self, other: &Value) -> Value {
        Value(&self.0 * &other.0)
    }
}

/// `v <= (sqrt(5) - 1) / 2`, decided without leaving the rationals.
///
/// For `v >= 0` this is equivalent to `(2v + 1)^2 <= 5`.
pub fn golden_leq(v: &Value) -> Result<bool, FairError> {
    if v.is_negative() {
        return Err(FairError::InvalidValue(format!("golden_leq of negative value {v}")));
    }
    let two_v_plus_one = v.times(&Value::integer(2)) + Value::one();
    Ok(two_v_plus_one.times(&two_v_plus_one) <= Value::integer(5))
}

/// `v >= (sqrt(5) - 1) / 2` for `v >= 0`, i.e. `(2v + 1)^2 >= 5`.
pub fn golden_geq(v: &Value) -> Result<bool, FairError> {
    if v.is_negative() {
        return Err(FairError::InvalidValue(format!("golden_geq of negative value {v}")));
    }
    let two_v_plus_one = v.times(&Value::integer(2)) + Value::one();
    Ok(two_v_plus_one.times(&two_v_plus_one) >= Value::integer(5))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<Value> for Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                Value(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Value> for Value {
            type Output = Value;
            fn $method(self, rhs: &'a Value) -> Value {
                Value(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Value> for &'a Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                Value(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $trait<&'b Value> for &'a Value {
            type Output = Value;
            fn $method(self, rhs: &'b Value) -> Value {
                Value(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Div, div, /);

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-self.0)
    }
}

impl AddAssign<&Value> for Value {
    fn add_assign(&mut self, rhs: &Value) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Value> for Value {
    fn sub_assign(&mut self, rhs: &Value) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::integer(v)
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        Value(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[+-]digits[/digits]` or an exact decimal literal `[+-]digits.digits`.
impl FromStr for Value {
    type Err = FairError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FairError::Parse(format!("invalid rational literal {s:?}"));
        let t = s.trim();
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());

        let value = if let Some((num, den)) = body.split_once('/') {
            if !digits(num) || !digits(den) {
                return Err(bad());
            }
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(FairError::Parse(format!("zero denominator in {s:?}")));
            }
            BigRational::new(num.parse().map_err(|_| bad())?, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            if !(digits(int) || int.is_empty()) || !digits(frac) || (int.is_empty() && frac.is_empty()) {
                return Err(bad());
            }
            let whole = format!("{int}{frac}");
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            BigRational::new(whole.parse().map_err(|_| bad())?, scale)
        } else {
            if !digits(body) {
                return Err(bad());
            }
            BigRational::from_integer(body.parse().map_err(|_| bad())?)
        };
        Ok(Value(if negative { -value } else { value }))
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators, used to move a list of values
/// onto a common integer scale.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Value>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales each value by `scale` (which must be a multiple of every
/// denominator) and returns the resulting integers.
pub fn to_scaled_integers(values: &[Value], scale: &BigInt) -> Vec<BigInt> {
    values
        .iter()
        .map(|v| v.numer() * (scale / v.denom()))
        .collect()
}

/// A multiplicative fairness factor: a nonnegative rational, or `Infinite`
/// when the constraint is vacuously satisfied.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedFactor {
    Finite(Value),
    Infinite,
}

impl ExtendedFactor {
    pub fn finite(v: Value) -> Self {
        ExtendedFactor::Finite(v)
    }

    /// `numer / denom`, or `Infinite` when the denominator is zero.
    pub fn ratio(numer: &Value, denom: &Value) -> Self {
        if denom.is_zero() {
            ExtendedFactor::Infinite
        } else {
            ExtendedFactor::Finite(numer / denom)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedFactor::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Value> {
        match self {
            ExtendedFactor::Finite(v) => Some(v),
            ExtendedFactor::Infinite => None,
        }
    }

    /// The property holds exactly (factor at least one).
    pub fn satisfied(&self) -> bool {
        self.at_least(&Value::one())
    }

    pub fn at_least(&self, threshold: &Value) -> bool {
        match self {
            ExtendedFactor::Finite(v) => v >= threshold,
            ExtendedFactor::Infinite => true,
        }
    }

    pub fn at_most(&self, ceiling: &Value) -> bool {
        match self {
            ExtendedFactor::Finite(v) => v <= ceiling,
            ExtendedFactor::Infinite => false,
        }
    }

    pub fn min(self, other: ExtendedFactor) -> ExtendedFactor {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for ExtendedFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedFactor::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedFactor::Finite(v) => write!(f, "{v}"),
            ExtendedFactor::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtendedFactor {
    type Err = FairError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "INF" | "infinity" => Ok(ExtendedFactor::Infinite),
            other => other.parse().map(ExtendedFactor::Finite),
        }
    }
}

impl Serialize for ExtendedFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedFactor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn golden_examples() {
        assert!(golden_leq(&Value::ratio(3, 5)).unwrap());
        assert!(!golden_leq(&Value::ratio(5, 8)).unwrap());
        assert!(golden_leq(&Value::zero()).unwrap());
        assert!(!golden_leq(&Value::one()).unwrap());
        assert!(matches!(golden_leq(&Value::ratio(-1, 2)), Err(FairError::InvalidValue(_))));
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(v("0.25"), Value::ratio(1, 4));
        assert_eq!(v("-3/6"), Value::ratio(-1, 2));
        assert_eq!(v("+7"), Value::integer(7));
        assert_eq!(v(".5"), Value::ratio(1, 2));
        assert_eq!(v("1.0"), Value::one());
        for bad in ["", "1/0", "a", "1/", "/2", "1.2.3", "1/-2", "--1", "."] {
            assert!(bad.parse::<Value>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(Value::ratio(6, -4).to_string(), "-3/2");
        assert_eq!(Value::ratio(8, 4).to_string(), "2");
        assert_eq!(Value::pow2(-3).to_string(), "1/8");
        assert_eq!(Value::pow2(4).to_string(), "16");
    }

    #[test]
    fn extended_order() {
        let inf = ExtendedFactor::Infinite;
        let one = ExtendedFactor::Finite(Value::one());
        assert!(one < inf);
        assert!(inf.satisfied());
        assert!(!inf.at_most(&Value::integer(1000)));
        assert_eq!(one.clone().min(inf.clone()), one);
        assert_eq!("inf".parse::<ExtendedFactor>().unwrap(), inf);
        assert_eq!(ExtendedFactor::ratio(&Value::one(), &Value::zero()), inf);
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Value::ratio(n, d))
    }

    fn arb_nonneg() -> impl Strategy<Value = Value> {
        (0i64..1000, 1i64..200).prop_map(|(n, d)| Value::ratio(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_is_exact(a in arb_value(), b in arb_value(), c in arb_value()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn lowest_terms(a in arb_value()) {
            use num_integer::Integer;
            prop_assert!(a.denom().is_positive());
            prop_assert!(a.numer().gcd(a.denom()).is_one());
        }

        #[test]
        fn golden_leq_monotone(a in arb_nonneg(), b in arb_nonneg()) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if golden_leq(&hi).unwrap() {
                prop_assert!(golden_leq(&lo).unwrap());
            }
        }

        #[test]
        fn golden_leq_matches_float(a in arb_nonneg()) {
            let phi = (5f64.sqrt() - 1.0) / 2.0;
            let x = a.to_f64();
            if (x - phi).abs() > 1e-9 {
                prop_assert_eq!(golden_leq(&a).unwrap(), x <= phi);
            }
        }

        #[test]
        fn display_parse_round_trip(a in arb_value()) {
            prop_assert_eq!(a.to_string().parse::<Value>().unwrap(), a);
        }
    }
}
