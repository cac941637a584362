//! Exact nonnegative rational weights and probabilities.

use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("weights must be nonnegative")]
    Negative,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed weight `{0}`")]
    Malformed(String),
}

/// A nonnegative rational `u/v` kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactWeight(BigRational);

impl ExactWeight {
    pub fn zero() -> Self {
        ExactWeight(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactWeight(BigRational::one())
    }

    pub fn from_integer(u: u64) -> Self {
        ExactWeight(BigRational::from_integer(BigInt::from(u)))
    }

    pub fn from_biguint(u: BigUint) -> Self {
        ExactWeight(BigRational::from_integer(BigInt::from_biguint(Sign::Plus, u)))
    }

    pub fn ratio(u: u64, v: u64) -> Result<Self, WeightError> {
        if v == 0 {
            return Err(WeightError::ZeroDenominator);
        }
        Ok(ExactWeight(BigRational::new(BigInt::from(u), BigInt::from(v))))
    }

    pub fn from_rational(r: BigRational) -> Result<Self, WeightError> {
        if r.is_negative() {
            Err(WeightError::Negative)
        } else {
            Ok(ExactWeight(r))
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    /// Integer power with `0^0 = 1`.
    pub fn pow(&self, exp: u64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut base = self.0.clone();
        let mut acc = BigRational::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        ExactWeight(acc)
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ExactWeight(self.0.recip()))
    }

    /// Representation size `ceil(log2(u+1)) + ceil(log2(v+1))`.
    pub fn repr_size(&self) -> u64 {
        ceil_log2_succ(&self.numer()) + ceil_log2_succ(&self.denom())
    }

    pub fn to_decimal(&self, significant: usize) -> String {
        decimal_string(&self.0, significant)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `ceil(log2(x + 1))`, which is the bit length of `x` (0 for `x = 0`).
pub fn ceil_log2_succ(x: &BigUint) -> u64 {
    x.bits()
}

impl fmt::Display for ExactWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactWeight {
    type Err = WeightError;

    /// Accepts `u/v`, decimal integers and decimal fractions such as `2.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || WeightError::Malformed(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if let Some((u, v)) = s.split_once('/') {
            let (u, v) = (u.trim(), v.trim());
            if !digits(u) || !digits(v) {
                return Err(malformed());
            }
            let u: BigInt = u.parse().map_err(|_| malformed())?;
            let v: BigInt = v.parse().map_err(|_| malformed())?;
            if v.is_zero() {
                return Err(WeightError::ZeroDenominator);
            }
            return Ok(ExactWeight(BigRational::new(u, v)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if !(digits(int) || int.is_empty()) || !digits(frac) || (int.is_empty() && frac.is_empty()) {
                return Err(malformed());
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let whole: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
                .parse()
                .map_err(|_| malformed())?;
            return Ok(ExactWeight(BigRational::new(whole, scale)));
        }
        if s.starts_with('-') {
            return Err(WeightError::Negative);
        }
        if !digits(s) {
            return Err(malformed());
        }
        Ok(ExactWeight(BigRational::from_integer(s.parse().map_err(|_| malformed())?)))
    }
}

impl Add for ExactWeight {
    type Output = ExactWeight;
    fn add(self, rhs: Self) -> Self {
        ExactWeight(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactWeight> for &'a ExactWeight {
    type Output = ExactWeight;
    fn add(self, rhs: Self) -> ExactWeight {
        ExactWeight(&self.0 + &rhs.0)
    }
}

impl Mul for ExactWeight {
    type Output = ExactWeight;
    fn mul(self, rhs: Self) -> Self {
        ExactWeight(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactWeight> for &'a ExactWeight {
    type Output = ExactWeight;
    fn mul(self, rhs: Self) -> ExactWeight {
        ExactWeight(&self.0 * &rhs.0)
    }
}

impl Mul<&ExactWeight> for ExactWeight {
    type Output = ExactWeight;
    fn mul(self, rhs: &ExactWeight) -> Self {
        ExactWeight(self.0 * &rhs.0)
    }
}

impl Div for ExactWeight {
    type Output = ExactWeight;
    fn div(self, rhs: Self) -> Self {
        ExactWeight(self.0 / rhs.0)
    }
}

impl From<u64> for ExactWeight {
    fn from(u: u64) -> Self {
        ExactWeight::from_integer(u)
    }
}

/// An exact probability in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

/// Significant digits used when rendering decimals in reports.
pub const REPORT_DIGITS: usize = 12;

impl Probability {
    /// `weight / total`; `None` when the total is zero.
    pub fn from_weights(weight: &ExactWeight, total: &ExactWeight) -> Option<Self> {
        if total.is_zero() {
            return None;
        }
        let p = &weight.0 / &total.0;
        debug_assert!(p <= BigRational::one());
        Some(Probability(p))
    }

    pub fn from_rational(r: BigRational) -> Option<Self> {
        (!r.is_negative() && r <= BigRational::one()).then_some(Probability(r))
    }

    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    pub fn half() -> Self {
        Probability(BigRational::new(1.into(), 2.into()))
    }

    pub fn tenth() -> Self {
        Probability(BigRational::new(1.into(), 10.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn decimal(&self) -> String {
        decimal_string(&self.0, REPORT_DIGITS)
    }

    /// The exact fraction, e.g. `2/3` or `1`.
    pub fn exact(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Probability {
    /// `2/3 ≈ 0.666666666667`, or just the integer for 0 and 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.exact())
        } else {
            write!(f, "{} ≈ {}", self.exact(), self.decimal())
        }
    }
}

impl fmt::Debug for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact())
    }
}

/// Rounds a nonnegative rational to `significant` digits (half up) and prints
/// it in positional notation without trailing zeros.
pub fn decimal_string(r: &BigRational, significant: usize) -> String {
    assert!(significant > 0);
    if r.is_zero() {
        return "0".into();
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let ten = BigInt::from(10u32);
    // exponent e with 10^e <= r < 10^(e+1)
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * ten.pow(e as u32)
        } else {
            &num * ten.pow((-e) as u32) >= den
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }
    // scaled = round(r * 10^(significant - 1 - e))
    let shift = significant as i64 - 1 - e;
    let (sn, sd) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    let (q, rem) = sn.div_rem(&sd);
    let mut digits = if rem * 2 >= sd { q + 1 } else { q };
    let mut shift = shift;
    if digits.to_string().len() > significant {
        digits /= 10;
        shift -= 1;
    }
    let s = digits.to_string();
    let out = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) >= s.len() {
        format!("0.{}{s}", "0".repeat(shift as usize - s.len()))
    } else {
        let (int, frac) = s.split_at(s.len() - shift as usize);
        format!("{int}.{frac}")
    };
    if out.contains('.') {
        out.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ExactWeight {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(w("3/2"), ExactWeight::ratio(3, 2).unwrap());
        assert_eq!(w("6/4"), ExactWeight::ratio(3, 2).unwrap());
        assert_eq!(w("2.5"), ExactWeight::ratio(5, 2).unwrap());
        assert_eq!(w("0"), ExactWeight::zero());
        assert_eq!(w("10"), ExactWeight::from_integer(10));
        assert!("1/0".parse::<ExactWeight>().is_err());
        assert!("-1".parse::<ExactWeight>().is_err());
        assert!("abc".parse::<ExactWeight>().is_err());
        assert_eq!(w("3/2").to_string(), "3/2");
    }

    #[test]
    fn representation_size() {
        assert_eq!(w("3/2").repr_size(), 4);
        assert_eq!(w("1").repr_size(), 2);
        assert_eq!(w("0").repr_size(), 1);
        // 10 * 2^23 has 27 bits
        assert_eq!(ExactWeight::from_integer(10 << 23).repr_size(), 27 + 1);
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(ExactWeight::zero().pow(0), ExactWeight::one());
        assert_eq!(ExactWeight::zero().pow(3), ExactWeight::zero());
        assert_eq!(w("2").pow(10), ExactWeight::from_integer(1024));
    }

    #[test]
    fn decimal_rendering() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(decimal_string(&r(2, 3), 12), "0.666666666667");
        assert_eq!(decimal_string(&r(1, 2), 12), "0.5");
        assert_eq!(decimal_string(&r(1, 1), 12), "1");
        assert_eq!(decimal_string(&r(1, 30), 3), "0.0333");
        assert_eq!(decimal_string(&r(999_999, 1), 3), "1000000");
        assert_eq!(decimal_string(&r(12345, 100), 12), "123.45");
        let p = Probability::from_weights(&w("2"), &w("3")).unwrap();
        assert_eq!(p.to_string(), "2/3 ≈ 0.666666666667");
        assert_eq!(Probability::one().to_string(), "1");
    }
}
