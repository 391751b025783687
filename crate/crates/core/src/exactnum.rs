//! Exact arithmetic: arbitrary-precision rationals, rational vectors, and
//! quadratic surds `c·√m` used for lengths and volumes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar(BigRational::from_integer(n))
    }

    /// `numerator / denominator`, reduced.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(ExactScalar(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn from_big(numerator: BigInt, denominator: BigInt) -> Result<Self, Error> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(ExactScalar(BigRational::new(numerator, denominator)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        ExactScalar(self.0.floor())
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_pos(&self) -> Self {
        ExactScalar(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactScalar(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar(r)
    }

    /// Integer value, if this scalar is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                ExactScalar::from_big(p, q)
            }
            None => Ok(ExactScalar::from_bigint(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ExactScalar::from_str(&s).map_err(de::Error::custom)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;

    /// # Panics
    /// On division by zero; use [`ExactScalar::recip`] for a fallible path.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "exact division by zero");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl Div<ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

/// Quadratic surd `coefficient · √radicand` with squarefree radicand.
///
/// A zero coefficient always carries radicand 1, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurdValue {
    coefficient: ExactScalar,
    radicand: u64,
}

/// Splits `m` into `(s, r)` with `m = s²·r` and `r` squarefree.
fn extract_square(m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 1);
    }
    let mut outside = 1u64;
    let mut inside = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= inside {
        let sq = p * p;
        while inside % sq == 0 {
            inside /= sq;
            outside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, inside)
}

/// Builds the canonical surd equal to `coefficient · √radicand`.
pub fn surd_normalize(coefficient: ExactScalar, radicand: u64) -> SurdValue {
    if coefficient.is_zero() || radicand == 0 {
        return SurdValue::zero();
    }
    let (outside, inside) = extract_square(radicand);
    SurdValue {
        coefficient: coefficient * ExactScalar::from_bigint(BigInt::from(outside)),
        radicand: inside,
    }
}

/// Sum of two surds sharing a radicand (either side may be zero).
pub fn surd_add(a: &SurdValue, b: &SurdValue) -> Result<SurdValue, Error> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.radicand != b.radicand {
        return Err(Error::RadicandMismatch {
            left: a.radicand,
            right: b.radicand,
        });
    }
    Ok(surd_normalize(
        &a.coefficient + &b.coefficient,
        a.radicand,
    ))
}

impl SurdValue {
    pub fn zero() -> Self {
        SurdValue {
            coefficient: ExactScalar::zero(),
            radicand: 1,
        }
    }

    pub fn rational(r: ExactScalar) -> Self {
        surd_normalize(r, 1)
    }

    pub fn from_integer(n: i64) -> Self {
        SurdValue::rational(ExactScalar::from_integer(n))
    }

    /// `√m`.
    pub fn sqrt_int(m: u64) -> Self {
        surd_normalize(ExactScalar::one(), m)
    }

    /// `√r` for a non-negative rational `r`: `√(p/q) = (1/q)·√(p·q)`.
    ///
    /// # Panics
    /// If `r` is negative or `p·q` exceeds `u64`.
    pub fn sqrt_rational(r: &ExactScalar) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return SurdValue::zero();
        }
        let pq = r.numerator() * r.denominator();
        let m = pq.to_u64().expect("radicand exceeds u64");
        let q = ExactScalar::from_bigint(r.denominator().clone());
        surd_normalize(ExactScalar::one() / q, m)
    }

    pub fn coefficient(&self) -> &ExactScalar {
        &self.coefficient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    /// The rational value when the radicand is 1.
    pub fn as_rational(&self) -> Option<&ExactScalar> {
        if self.radicand == 1 {
            Some(&self.coefficient)
        } else {
            None
        }
    }

    /// Exact square `c²·m`.
    pub fn square(&self) -> ExactScalar {
        &(&self.coefficient * &self.coefficient) * &ExactScalar::from_integer(self.radicand as i64)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::Float;
        self.coefficient.to_f64() * Float::sqrt(self.radicand as f64)
    }

    pub fn scale(&self, r: &ExactScalar) -> Self {
        surd_normalize(&self.coefficient * r, self.radicand)
    }

    /// Multiplicative inverse: `1/(c√m) = (1/(c·m))·√m`.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let denom = &self.coefficient * &ExactScalar::from_integer(self.radicand as i64);
        Ok(surd_normalize(denom.recip()?, self.radicand))
    }

    pub fn checked_div(&self, rhs: &SurdValue) -> Result<Self, Error> {
        Ok(self * &rhs.recip()?)
    }
}

impl Mul<&SurdValue> for &SurdValue {
    type Output = SurdValue;

    /// # Panics
    /// If the product of radicands overflows `u64`.
    fn mul(self, rhs: &SurdValue) -> SurdValue {
        let m = self
            .radicand
            .checked_mul(rhs.radicand)
            .expect("surd radicand overflow");
        surd_normalize(&self.coefficient * &rhs.coefficient, m)
    }
}

impl Mul<SurdValue> for SurdValue {
    type Output = SurdValue;
    fn mul(self, rhs: SurdValue) -> SurdValue {
        &self * &rhs
    }
}

impl Neg for SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        surd_normalize(-self.coefficient, self.radicand)
    }
}

impl fmt::Display for SurdValue {
    /// `sqrt(5)`, `1/2`, `11/24*sqrt(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        if self.radicand == 1 {
            return write!(f, "{:?}", c);
        }
        if *c == ExactScalar::one() {
            write!(f, "sqrt({})", self.radicand)
        } else if *c == -ExactScalar::one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{:?}*sqrt({})", c, self.radicand)
        }
    }
}

impl fmt::Debug for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for SurdValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SurdValue {
    /// Numeric order, decided exactly by comparing signed squares.
    fn cmp(&self, other: &Self) -> Ordering {
        let sign = |s: &SurdValue| {
            if s.coefficient.is_negative() {
                -1
            } else if s.coefficient.is_zero() {
                0
            } else {
                1
            }
        };
        let (sa, sb) = (sign(self), sign(other));
        if sa != sb {
            return sa.cmp(&sb);
        }
        let ord = self.square().cmp(&other.square());
        if sa < 0 {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl Serialize for SurdValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SurdValue", 2)?;
        st.serialize_field("coeff", &self.coefficient)?;
        st.serialize_field("radicand", &self.radicand)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SurdValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeff: ExactScalar,
            radicand: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(surd_normalize(raw.coeff, raw.radicand))
    }
}

/// Point or direction with exact rational coordinates in the orthonormal
/// `l_i` basis. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactVector {
    coords: Vec<ExactScalar>,
}

impl ExactVector {
    pub fn new(coords: Vec<ExactScalar>) -> Self {
        ExactVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        ExactVector {
            coords: alloc::vec![ExactScalar::zero(); dim],
        }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        ExactVector {
            coords: coords.iter().map(|&c| ExactScalar::from_integer(c)).collect(),
        }
    }

    /// Integer coordinates divided by a common denominator.
    pub fn from_scaled(coords: &[i64], denominator: i64) -> Result<Self, Error> {
        coords
            .iter()
            .map(|&c| ExactScalar::new(c, denominator))
            .collect::<Result<Vec<_>, _>>()
            .map(ExactVector::new)
    }

    /// Unit vector `l_i` (zero-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = ExactVector::zeros(dim);
        v.coords[i] = ExactScalar::one();
        v
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ExactScalar::is_zero)
    }

    fn check_dim(&self, other: &ExactVector) -> Result<(), Error> {
        if self.ambient_dim() != other.ambient_dim() {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &ExactVector) -> Result<ExactVector, Error> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &ExactVector) -> Result<ExactVector, Error> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &ExactVector, f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> ExactVector {
        ExactVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> ExactVector {
        ExactVector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn norm_squared(&self) -> ExactScalar {
        self.coords
            .iter()
            .fold(ExactScalar::zero(), |acc, c| acc + c * c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(ExactScalar::to_f64).collect()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()))
    }

    pub fn sum(&self) -> ExactScalar {
        self.coords
            .iter()
            .fold(ExactScalar::zero(), |acc, c| acc + c)
    }
}

/// Exact Euclidean inner product.
pub fn dot(u: &ExactVector, v: &ExactVector) -> Result<ExactScalar, Error> {
    u.check_dim(v)?;
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b))
}

impl Add<&ExactVector> for &ExactVector {
    type Output = ExactVector;

    /// # Panics
    /// On dimension mismatch; see [`ExactVector::checked_add`].
    fn add(self, rhs: &ExactVector) -> ExactVector {
        self.checked_add(rhs).expect("vector dimension mismatch")
    }
}

impl Sub<&ExactVector> for &ExactVector {
    type Output = ExactVector;

    /// # Panics
    /// On dimension mismatch; see [`ExactVector::checked_sub`].
    fn sub(self, rhs: &ExactVector) -> ExactVector {
        self.checked_sub(rhs).expect("vector dimension mismatch")
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", c)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
